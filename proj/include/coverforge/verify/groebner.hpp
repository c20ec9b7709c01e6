#pragma once

// Buchberger's algorithm over GF(p) with sugar pair selection and the
// Gebauer-Moeller update (product and chain criteria). The result is the
// reduced Groebner basis, which is unique for a fixed ideal and order.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "coverforge/exactalg/fields.hpp"
#include "coverforge/exactalg/poly.hpp"

namespace coverforge::verify {

using alg::Monomial;
using alg::MonomialOrder;
using alg::OrderKind;
using alg::PrimeField;
using FpPoly = alg::MultiPoly<PrimeField>;

class VerifyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sparse polynomial with terms sorted descending in a chosen order.
struct GbPoly {
  struct Term {
    Monomial m;
    std::uint32_t c;
  };
  std::vector<Term> terms;
  unsigned sugar = 0;

  bool zero() const { return terms.empty(); }
  const Monomial& lm() const { return terms.front().m; }
  std::uint32_t lc() const { return terms.front().c; }
};

struct GbOptions {
  OrderKind order = OrderKind::DegRevLex;
  double max_seconds = 0;  // 0: no limit
};

namespace detail {

class GbRing {
 public:
  GbRing(PrimeField f, MonomialOrder ord) : f_(f), ord_(ord) {}

  const PrimeField& field() const { return f_; }
  const MonomialOrder& order() const { return ord_; }

  GbPoly from(const FpPoly& p) const {
    GbPoly out;
    for (const auto& [m, c] : p.terms()) out.terms.push_back({m, c});
    std::sort(out.terms.begin(), out.terms.end(), [&](const auto& a, const auto& b) { return ord_(a.m, b.m); });
    out.sugar = p.is_zero() ? 0 : p.degree();
    return out;
  }

  FpPoly to(const GbPoly& g, std::size_t nvars) const {
    std::vector<FpPoly::Term> t;
    for (const auto& x : g.terms) t.emplace_back(x.m, x.c);
    return FpPoly::from_terms(f_, nvars, std::move(t));
  }

  void make_monic(GbPoly& g) const {
    if (g.zero()) return;
    auto inv = f_.inv(g.lc());
    for (auto& t : g.terms) t.c = f_.mul(t.c, inv);
  }

  /// a - c * m * b, ignoring the first `skip` terms of a.
  GbPoly sub_mul(const GbPoly& a, std::uint32_t c, const Monomial& m, const GbPoly& b, std::size_t skip = 0) const {
    GbPoly r;
    r.terms.reserve(a.terms.size() - skip + b.terms.size());
    r.sugar = std::max(a.sugar, b.sugar + m.degree());
    std::size_t i = skip, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
      if (j == b.terms.size()) {
        r.terms.push_back(a.terms[i++]);
        continue;
      }
      Monomial bm = b.terms[j].m * m;
      if (i < a.terms.size() && ord_(a.terms[i].m, bm)) {
        r.terms.push_back(a.terms[i++]);
      } else if (i < a.terms.size() && a.terms[i].m == bm) {
        auto v = f_.sub(a.terms[i].c, f_.mul(c, b.terms[j].c));
        if (v) r.terms.push_back({std::move(bm), v});
        ++i;
        ++j;
      } else {
        r.terms.push_back({std::move(bm), f_.neg(f_.mul(c, b.terms[j].c))});
        ++j;
      }
    }
    return r;
  }

  /// Full reduction of f modulo the polynomials selected by `active`.
  GbPoly reduce(GbPoly f, const std::vector<GbPoly>& basis, const std::vector<char>* active = nullptr) const {
    GbPoly rem;
    rem.sugar = f.sugar;
    std::size_t pos = 0;  // terms before pos are already moved to rem
    while (pos < f.terms.size()) {
      const auto& lead = f.terms[pos];
      const GbPoly* div = nullptr;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (active && !(*active)[k]) continue;
        if (!basis[k].zero() && basis[k].lm().divides(lead.m)) {
          div = &basis[k];
          break;
        }
      }
      if (!div) {
        rem.terms.push_back(lead);
        ++pos;
        continue;
      }
      auto c = f_.div(lead.c, div->lc());
      auto q = div->lm().quotient_of(lead.m);
      unsigned s = f.sugar;
      f = sub_mul(f, c, q, *div, pos);
      pos = 0;
      f.sugar = std::max(s, f.sugar);
      rem.sugar = std::max(rem.sugar, f.sugar);
    }
    return rem;
  }

  GbPoly spoly(const GbPoly& a, const GbPoly& b) const {
    Monomial l = a.lm().lcm(b.lm());
    GbPoly ta;
    ta.sugar = a.sugar + l.degree() - a.lm().degree();
    auto qa = a.lm().quotient_of(l);
    auto ia = f_.inv(a.lc());
    for (const auto& t : a.terms) ta.terms.push_back({t.m * qa, f_.mul(t.c, ia)});
    auto r = sub_mul(ta, f_.inv(b.lc()), b.lm().quotient_of(l), b);
    return r;
  }

 private:
  PrimeField f_;
  MonomialOrder ord_;
};

}  // namespace detail

class GroebnerBasis {
 public:
  GroebnerBasis(PrimeField f, std::size_t nvars, OrderKind order, std::vector<GbPoly> gens, bool complete,
                std::size_t pairs, std::size_t zero_reductions, bool homogeneous)
      : ring_(f, MonomialOrder{order}),
        nvars_(nvars),
        order_(order),
        gens_(std::move(gens)),
        complete_(complete),
        pairs_(pairs),
        zero_reductions_(zero_reductions),
        homogeneous_(homogeneous) {}

  const PrimeField& field() const { return ring_.field(); }
  std::size_t nvars() const { return nvars_; }
  OrderKind order() const { return order_; }
  std::size_t size() const { return gens_.size(); }
  /// False if the time limit stopped the computation early.
  bool complete() const { return complete_; }
  bool input_homogeneous() const { return homogeneous_; }
  std::size_t pairs_processed() const { return pairs_; }
  std::size_t zero_reductions() const { return zero_reductions_; }

  bool is_unit() const { return gens_.size() == 1 && gens_[0].lm().degree() == 0; }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& g : gens_) out.push_back(g.lm());
    return out;
  }

  std::vector<FpPoly> polys() const {
    std::vector<FpPoly> out;
    for (const auto& g : gens_) out.push_back(ring_.to(g, nvars_));
    return out;
  }

  FpPoly normal_form(const FpPoly& f) const { return ring_.to(ring_.reduce(ring_.from(f), gens_), nvars_); }
  bool contains(const FpPoly& f) const { return normal_form(f).is_zero(); }

  /// Recheck that every S-polynomial of the basis reduces to zero.
  bool audit() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (!ring_.reduce(ring_.spoly(gens_[i], gens_[j]), gens_).zero()) return false;
    return true;
  }

 private:
  detail::GbRing ring_;
  std::size_t nvars_;
  OrderKind order_;
  std::vector<GbPoly> gens_;
  bool complete_;
  std::size_t pairs_;
  std::size_t zero_reductions_;
  bool homogeneous_;
};

inline GroebnerBasis groebner_basis(const std::vector<FpPoly>& ideal, const GbOptions& opts = {}) {
  if (ideal.empty()) throw VerifyError("groebner_basis needs at least one polynomial (use {0} for the zero ideal)");
  const PrimeField f = ideal.front().field();
  const std::size_t n = ideal.front().nvars();
  detail::GbRing ring(f, MonomialOrder{opts.order});
  bool homogeneous = true;
  for (const auto& p : ideal) {
    if (p.nvars() != n) throw VerifyError("polynomials in different rings");
    if (!p.is_homogeneous()) homogeneous = false;
  }
  auto start = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (opts.max_seconds <= 0) return false;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > opts.max_seconds;
  };

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };
  std::vector<GbPoly> polys;
  std::vector<char> active;
  std::vector<Pair> pairs;
  std::size_t processed = 0, zeros = 0;

  auto pair_of = [&](std::size_t i, std::size_t j) {
    Monomial l = polys[i].lm().lcm(polys[j].lm());
    unsigned s = std::max(polys[i].sugar + l.degree() - polys[i].lm().degree(),
                          polys[j].sugar + l.degree() - polys[j].lm().degree());
    return Pair{i, j, std::move(l), s};
  };

  auto insert = [&](GbPoly h) {
    ring.make_monic(h);
    std::size_t hi = polys.size();
    polys.push_back(std::move(h));
    active.push_back(1);
    const Monomial& lh = polys[hi].lm();
    // Gebauer-Moeller: new pairs.
    std::vector<Pair> c;
    for (std::size_t g = 0; g < hi; ++g)
      if (active[g]) c.push_back(pair_of(g, hi));
    // M: drop pairs whose lcm is strictly divisible by another new lcm.
    std::vector<char> keep(c.size(), 1);
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t k2 = 0; k2 < c.size(); ++k2)
        if (k2 != k && c[k2].lcm.divides(c[k].lcm) && !(c[k2].lcm == c[k].lcm)) {
          keep[k] = 0;
          break;
        }
    // F and the product criterion: one pair per lcm, none if any pair with
    // that lcm has coprime leading monomials.
    std::vector<Pair> e;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (!keep[k]) continue;
      bool first = true, any_coprime = false;
      for (std::size_t k2 = 0; k2 < c.size(); ++k2) {
        if (!keep[k2] || !(c[k2].lcm == c[k].lcm)) continue;
        if (k2 < k) first = false;
        if (polys[c[k2].i].lm().coprime(lh)) any_coprime = true;
      }
      if (first && !any_coprime) e.push_back(c[k]);
    }
    // Chain criterion on old pairs.
    std::vector<Pair> kept;
    for (auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && !(polys[p.i].lm().lcm(lh) == p.lcm) && !(polys[p.j].lm().lcm(lh) == p.lcm);
      if (!drop) kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
    for (auto& p : e) pairs.push_back(std::move(p));
    for (std::size_t g = 0; g < hi; ++g)
      if (active[g] && lh.divides(polys[g].lm())) active[g] = 0;
  };

  for (const auto& p : ideal) {
    auto g = ring.reduce(ring.from(p), polys, &active);
    if (!g.zero()) insert(std::move(g));
  }

  bool complete = true;
  MonomialOrder ord{opts.order};
  while (!pairs.empty()) {
    if (out_of_time()) {
      complete = false;
      break;
    }
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      return ord(b.lcm, a.lcm);
    });
    Pair p = *best;
    pairs.erase(best);
    ++processed;
    auto s = ring.spoly(polys[p.i], polys[p.j]);
    auto r = ring.reduce(std::move(s), polys, &active);
    if (r.zero()) {
      ++zeros;
      continue;
    }
    insert(std::move(r));
  }

  // Reduced basis: minimal leading terms, reduced tails, monic.
  std::vector<GbPoly> minimal;
  for (std::size_t k = 0; k < polys.size(); ++k)
    if (active[k]) minimal.push_back(polys[k]);
  std::sort(minimal.begin(), minimal.end(), [&](const GbPoly& a, const GbPoly& b) { return ord(b.lm(), a.lm()); });
  std::vector<GbPoly> pruned;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    bool redundant = false;
    for (std::size_t l = 0; l < minimal.size() && !redundant; ++l)
      if (l != k && minimal[l].lm().divides(minimal[k].lm()) && (!(minimal[l].lm() == minimal[k].lm()) || l < k))
        redundant = true;
    if (!redundant) pruned.push_back(minimal[k]);
  }
  std::vector<GbPoly> reduced;
  for (std::size_t k = 0; k < pruned.size(); ++k) {
    GbPoly head;
    head.terms.push_back(pruned[k].terms.front());
    GbPoly tail = pruned[k];
    tail.terms.erase(tail.terms.begin());
    std::vector<GbPoly> others;
    for (std::size_t l = 0; l < pruned.size(); ++l)
      if (l != k) others.push_back(pruned[l]);
    auto t = ring.reduce(std::move(tail), others);
    head.terms.insert(head.terms.end(), t.terms.begin(), t.terms.end());
    head.sugar = pruned[k].sugar;
    ring.make_monic(head);
    reduced.push_back(std::move(head));
  }
  return GroebnerBasis(f, n, opts.order, std::move(reduced), complete, processed, zeros, homogeneous);
}

}  // namespace coverforge::verify
