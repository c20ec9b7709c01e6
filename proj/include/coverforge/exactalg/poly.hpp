#pragma once

// Sparse multivariate polynomials over any exact field.
//
// Terms are kept sorted descending in degree-reverse-lexicographic order with
// no zero coefficients, so two equal polynomials always have identical term
// vectors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coverforge/exactalg/fields.hpp"

namespace coverforge::alg {

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t i, unsigned power = 1) {
    Monomial m(nvars);
    m.exps_[i] = static_cast<std::uint16_t>(power);
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  std::uint16_t operator[](std::size_t i) const { return exps_[i]; }
  std::uint16_t& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<std::uint16_t>& exponents() const { return exps_; }

  unsigned degree() const {
    return std::accumulate(exps_.begin(), exps_.end(), 0u);
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += o.exps_[i];
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  /// o / this; caller guarantees divisibility.
  Monomial quotient_of(const Monomial& o) const {
    Monomial r(o);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r(*this);
    for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = std::max(exps_[i], o.exps_[i]);
    return r;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] && o.exps_[i]) return false;
    return true;
  }

  bool operator==(const Monomial&) const = default;
  /// Lexicographic on exponent vectors; for containers, not a term order.
  bool operator<(const Monomial& o) const { return exps_ < o.exps_; }

 private:
  std::vector<std::uint16_t> exps_;
};

enum class OrderKind { DegRevLex, Lex };

/// Strict "a > b" under the chosen term order.
struct MonomialOrder {
  OrderKind kind = OrderKind::DegRevLex;

  bool greater(const Monomial& a, const Monomial& b) const {
    if (kind == OrderKind::DegRevLex) {
      unsigned da = a.degree(), db = b.degree();
      if (da != db) return da > db;
      for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
      }
      return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  }
  bool operator()(const Monomial& a, const Monomial& b) const { return greater(a, b); }
};

/// All monomials of the given total degree in nvars variables, descending
/// in degrevlex.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial cur(nvars);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      cur[i] = static_cast<std::uint16_t>(left);
      out.push_back(cur);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      cur[i] = static_cast<std::uint16_t>(e);
      rec(i + 1, left - e);
    }
  };
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  rec(0, degree);
  std::sort(out.begin(), out.end(), MonomialOrder{});
  return out;
}

template <Field F>
class MultiPoly {
 public:
  using Element = typename F::Element;
  using Term = std::pair<Monomial, Element>;

  MultiPoly() = default;
  MultiPoly(F field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static MultiPoly constant(F field, std::size_t nvars, const Element& c) {
    MultiPoly p(field, nvars);
    if (!field.is_zero(c)) p.terms_.emplace_back(Monomial(nvars), c);
    return p;
  }
  static MultiPoly variable(F field, std::size_t nvars, std::size_t i) {
    MultiPoly p(field, nvars);
    p.terms_.emplace_back(Monomial::variable(nvars, i), field.one());
    return p;
  }
  static MultiPoly monomial(F field, const Monomial& m, const Element& c) {
    MultiPoly p(field, m.size());
    if (!field.is_zero(c)) p.terms_.emplace_back(m, c);
    return p;
  }
  /// Build from arbitrary (possibly repeated, unsorted) terms.
  static MultiPoly from_terms(F field, std::size_t nvars, std::vector<Term> terms) {
    MultiPoly p(field, nvars);
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return MonomialOrder{}(a.first, b.first); });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first) {
        p.terms_.back().second = field.add(p.terms_.back().second, t.second);
      } else {
        p.terms_.push_back(std::move(t));
      }
    }
    std::erase_if(p.terms_, [&](const Term& t) { return field.is_zero(t.second); });
    return p;
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Monomial& leading_monomial() const { return terms_.front().first; }
  const Element& leading_coefficient() const { return terms_.front().second; }

  /// Highest total degree; 0 for the zero polynomial.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    unsigned d = terms_.front().first.degree();
    for (const auto& t : terms_)
      if (t.first.degree() != d) return false;
    return true;
  }

  Element coefficient(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& x) { return MonomialOrder{}(t.first, x); });
    if (it != terms_.end() && it->first == m) return it->second;
    return field_.zero();
  }

  MultiPoly operator+(const MultiPoly& o) const { return combine(o, false); }
  MultiPoly operator-(const MultiPoly& o) const { return combine(o, true); }
  MultiPoly operator-() const { return scaled(field_.neg(field_.one())); }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }

  MultiPoly scaled(const Element& c) const {
    MultiPoly r(field_, nvars_);
    if (field_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.emplace_back(t.first, field_.mul(t.second, c));
    return r;
  }

  MultiPoly times_monomial(const Monomial& m, const Element& c) const {
    MultiPoly r(field_, nvars_);
    if (field_.is_zero(c)) return r;
    r.terms_.reserve(terms_.size());
    // Multiplying by a monomial preserves any monomial order.
    for (const auto& t : terms_) r.terms_.emplace_back(t.first * m, field_.mul(t.second, c));
    return r;
  }

  MultiPoly operator*(const MultiPoly& o) const {
    std::vector<Term> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) acc.emplace_back(a.first * b.first, field_.mul(a.second, b.second));
    return from_terms(field_, nvars_, std::move(acc));
  }

  MultiPoly pow(unsigned e) const {
    MultiPoly r = constant(field_, nvars_, field_.one());
    MultiPoly b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// Monic rescaling (leading coefficient 1); zero stays zero.
  MultiPoly monic() const {
    if (terms_.empty()) return *this;
    return scaled(field_.inv(leading_coefficient()));
  }

  Element evaluate(std::span<const Element> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluate: point has wrong length");
    Element acc = field_.zero();
    for (const auto& t : terms_) {
      Element v = t.second;
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (t.first[i]) v = field_.mul(v, power(field_, point[i], t.first[i]));
      }
      acc = field_.add(acc, v);
    }
    return acc;
  }

  MultiPoly derivative(std::size_t var) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.first[var] == 0) continue;
      Monomial m = t.first;
      Element c = field_.mul(t.second, field_.from_int(m[var]));
      m[var] -= 1;
      out.emplace_back(std::move(m), c);
    }
    return from_terms(field_, nvars_, std::move(out));
  }

  /// Substitute variable i by images[i] (all in the same ring).
  MultiPoly substitute(std::span<const MultiPoly> images) const {
    if (images.size() != nvars_) throw std::invalid_argument("substitute: wrong number of images");
    std::size_t out_vars = images.empty() ? nvars_ : images[0].nvars();
    MultiPoly acc(field_, out_vars);
    for (const auto& t : terms_) {
      MultiPoly term = constant(field_, out_vars, t.second);
      for (std::size_t i = 0; i < nvars_; ++i)
        if (t.first[i]) term = term * images[i].pow(t.first[i]);
      acc += term;
    }
    return acc;
  }

  /// Apply a ring homomorphism to every coefficient.
  template <Field G, class Map>
  MultiPoly<G> map_coefficients(const G& target, Map&& fn) const {
    std::vector<typename MultiPoly<G>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.emplace_back(t.first, fn(t.second));
    return MultiPoly<G>::from_terms(target, nvars_, std::move(out));
  }

  bool operator==(const MultiPoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].first == o.terms_[i].first)) return false;
      if (!field_.equal(terms_[i].second, o.terms_[i].second)) return false;
    }
    return true;
  }

 private:
  MultiPoly combine(const MultiPoly& o, bool subtract) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials over different variable sets");
    MultiPoly r(field_, nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    MonomialOrder ord;
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && ord(terms_[i].first, o.terms_[j].first))) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || ord(o.terms_[j].first, terms_[i].first)) {
        const auto& t = o.terms_[j++];
        r.terms_.emplace_back(t.first, subtract ? field_.neg(t.second) : t.second);
      } else {
        Element c = subtract ? field_.sub(terms_[i].second, o.terms_[j].second)
                             : field_.add(terms_[i].second, o.terms_[j].second);
        if (!field_.is_zero(c)) r.terms_.emplace_back(terms_[i].first, c);
        ++i;
        ++j;
      }
    }
    return r;
  }

  F field_{};
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

/// Formal gradient: one partial derivative per variable.
template <Field F>
std::vector<MultiPoly<F>> gradient(const MultiPoly<F>& f) {
  std::vector<MultiPoly<F>> out;
  out.reserve(f.nvars());
  for (std::size_t i = 0; i < f.nvars(); ++i) out.push_back(f.derivative(i));
  return out;
}

/// Linear forms sum_i c_i x_i over a coefficient vector.
template <Field F>
MultiPoly<F> linear_form(const F& field, std::span<const typename F::Element> coeffs) {
  std::vector<typename MultiPoly<F>::Term> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    terms.emplace_back(Monomial::variable(coeffs.size(), i), coeffs[i]);
  return MultiPoly<F>::from_terms(field, coeffs.size(), std::move(terms));
}

/// Combination sum_k c_k * basis_k of monomials.
template <Field F>
MultiPoly<F> combine_monomials(const F& field, std::size_t nvars, std::span<const Monomial> basis,
                               std::span<const typename F::Element> coeffs) {
  std::vector<typename MultiPoly<F>::Term> terms;
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!field.is_zero(coeffs[k])) terms.emplace_back(basis[k], coeffs[k]);
  return MultiPoly<F>::from_terms(field, nvars, std::move(terms));
}

}  // namespace coverforge::alg
