#pragma once

// Multiplication table of a cyclic degree-n extension with basis
// e_0 = 1, e_1, ..., e_{n-1}: e_i e_j = F_ij e_{i+j}, F_ij a rational
// function on the base. A C3 acts on labels by i -> m i (m^3 = 1 mod n)
// and on the base by a substitution sigma, with sigma(F_ij) = F_{mi,mj}.

#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "coverforge/cover/divisor.hpp"
#include "coverforge/cover/sampling.hpp"
#include "coverforge/exactalg/snf.hpp"
#include "coverforge/exactalg/univariate.hpp"

namespace coverforge::cover {

/// num / den, both homogeneous of the same degree.
struct RatFunc {
  FpPoly num, den;

  static RatFunc one(const PrimeField& f, std::size_t n) { return {FpPoly::constant(f, n, 1), FpPoly::constant(f, n, 1)}; }
  RatFunc operator*(const RatFunc& o) const { return {num * o.num, den * o.den}; }
  RatFunc operator/(const RatFunc& o) const { return {num * o.den, den * o.num}; }
  std::optional<std::uint32_t> evaluate(const Point& p) const {
    auto d = den.evaluate(std::span<const std::uint32_t>(p));
    if (d == 0) return std::nullopt;
    return num.field().div(num.evaluate(std::span<const std::uint32_t>(p)), d);
  }
};

/// F = scale * num / den with num and den monic.
struct TableEntry {
  int target = 0;
  std::uint32_t scale = 1;
  FpPoly num, den;

  bool operator==(const TableEntry& o) const {
    return target == o.target && scale == o.scale && num == o.num && den == o.den;
  }
  std::optional<std::uint32_t> evaluate(const Point& p) const {
    auto d = den.evaluate(std::span<const std::uint32_t>(p));
    if (d == 0) return std::nullopt;
    const auto& f = num.field();
    return f.mul(scale, f.div(num.evaluate(std::span<const std::uint32_t>(p)), d));
  }
};

inline TableEntry make_entry(const RatFunc& r, int target) {
  if (r.num.is_zero() || r.den.is_zero()) throw CoverError("table entry with zero numerator or denominator");
  const auto& f = r.num.field();
  TableEntry e;
  e.target = target;
  e.scale = f.div(r.num.leading_coefficient(), r.den.leading_coefficient());
  e.num = r.num.monic();
  e.den = r.den.monic();
  return e;
}

enum class ScalingState { Raw, AssociativityFixed };

struct MulTable {
  PrimeField field;
  std::vector<std::string> coords;  // base coordinates
  int order = 7;
  int multiplier = 4;
  equiv::ActionGen sigma;  // base substitution realizing the C3
  std::vector<std::string> labels;
  std::map<std::pair<int, int>, TableEntry> products;  // i, j in 1..order-1
  ScalingState state = ScalingState::Raw;

  std::size_t nvars() const { return coords.size(); }
  int reduce(long i) const { return static_cast<int>(((i % order) + order) % order); }
  const TableEntry& at(int i, int j) const {
    auto it = products.find({reduce(i), reduce(j)});
    if (it == products.end()) throw CoverError("table has no entry for e_" + std::to_string(i) + " e_" + std::to_string(j));
    return it->second;
  }
  /// F_ij(p), with F_0j = F_i0 = 1; nullopt on a pole.
  std::optional<std::uint32_t> value(int i, int j, const Point& p) const {
    if (reduce(i) == 0 || reduce(j) == 0) return 1u;
    return at(i, j).evaluate(p);
  }
};

/// Labels for the degree-7 table: e_i is r_{i,j}/r_{0,0} with j
/// determined by the C3 orbit of (1,1) and (-1,1).
inline std::vector<std::string> default_labels() {
  return {"1", "r1_1/r0_0", "r2_4/r0_0", "rm4_2/r0_0", "r4_2/r0_0", "rm2_4/r0_0", "rm1_1/r0_0"};
}

/// Orbits of i -> m i on 1..n-1, each listed from its smallest element.
inline std::vector<std::vector<int>> label_orbits(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i = 1; i < n; ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    std::vector<int> orb;
    for (int k = i; !seen[static_cast<std::size_t>(k)]; k = (k * m) % n) {
      seen[static_cast<std::size_t>(k)] = true;
      orb.push_back(k);
    }
    out.push_back(orb);
  }
  return out;
}

/// Orbit representative of the pair (i, j): the smallest pair in its orbit.
inline std::pair<int, int> pair_representative(const MulTable& t, int i, int j) {
  std::pair<int, int> best{t.reduce(i), t.reduce(j)}, cur = best;
  for (int k = 0; k < 3; ++k) {
    cur = {t.reduce(cur.first * t.multiplier), t.reduce(cur.second * t.multiplier)};
    best = std::min(best, cur);
  }
  return best;
}

inline TableEntry apply_sigma(const MulTable& t, const TableEntry& e) {
  auto r = make_entry({equiv::act_on_form(t.sigma, e.num), equiv::act_on_form(t.sigma, e.den)},
                      t.reduce(e.target * t.multiplier));
  r.scale = t.field.mul(r.scale, e.scale);
  return r;
}

/// Fill every entry from one representative per C3 orbit of pairs.
inline MulTable build_multiplication_table(const PrimeField& f, std::vector<std::string> coords,
                                           const equiv::ActionGen& sigma,
                                           const std::map<std::pair<int, int>, RatFunc>& representatives,
                                           int order = 7, int multiplier = 4,
                                           std::vector<std::string> labels = default_labels()) {
  MulTable t;
  t.field = f;
  t.coords = std::move(coords);
  t.order = order;
  t.multiplier = multiplier;
  t.sigma = sigma;
  t.labels = std::move(labels);
  if ((multiplier * multiplier * multiplier) % order != 1 || multiplier % order == 1)
    throw CoverError("multiplier must have order 3 modulo the degree");
  if (sigma.size() != t.nvars() || sigma.order() != 3) throw CoverError("sigma must be an order-3 action on the base");
  if (static_cast<int>(t.labels.size()) != order) throw CoverError("need one label per basis element");
  for (const auto& [ij, r] : representatives) {
    auto [i, j] = ij;
    if (t.reduce(i) == 0 || t.reduce(j) == 0) throw CoverError("products with e_0 = 1 are implicit");
    if (pair_representative(t, i, j) != std::pair<int, int>{t.reduce(i), t.reduce(j)})
      throw CoverError("(" + std::to_string(i) + "," + std::to_string(j) + ") is not the representative of its orbit");
    auto e = make_entry(r, t.reduce(i + j));
    std::pair<int, int> cur{t.reduce(i), t.reduce(j)};
    for (int k = 0; k < 3; ++k) {
      auto [it, fresh] = t.products.emplace(cur, e);
      if (!fresh && !(it->second == e))
        throw CoverError("sigma does not map the orbit of (" + std::to_string(i) + "," + std::to_string(j) +
                         ") back to itself");
      e = apply_sigma(t, e);
      cur = {t.reduce(cur.first * multiplier), t.reduce(cur.second * multiplier)};
    }
    if (!(e == t.products.at({t.reduce(i), t.reduce(j)})))
      throw CoverError("sigma^3 does not fix the entry for (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  for (int i = 1; i < order; ++i)
    for (int j = 1; j < order; ++j)
      if (!t.products.count({i, j}))
        throw CoverError("no representative for the orbit of (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return t;
}

inline bool weight_additive(const MulTable& t) {
  for (const auto& [ij, e] : t.products)
    if (e.target != t.reduce(ij.first + ij.second)) return false;
  return true;
}

inline bool c3_equivariant(const MulTable& t) {
  for (const auto& [ij, e] : t.products)
    if (!(apply_sigma(t, e) == t.at(ij.first * t.multiplier, ij.second * t.multiplier))) return false;
  return true;
}

/// Base points where every entry is defined and nonzero.
inline std::vector<Point> table_points(const MulTable& t, const FpModel& base, std::size_t count, std::uint64_t seed) {
  SampleOptions so;
  so.seed = seed;
  for (const auto& [ij, e] : t.products) {
    so.avoid.push_back(e.num);
    so.avoid.push_back(e.den);
  }
  return sample_points(base, count, so).points;
}

/// Triples (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k) at some point.
inline std::size_t associativity_failures(const MulTable& t, const std::vector<Point>& pts) {
  const auto& f = t.field;
  std::size_t bad = 0;
  for (int i = 0; i < t.order; ++i)
    for (int j = 0; j < t.order; ++j)
      for (int k = 0; k < t.order; ++k) {
        bool ok = true;
        for (const auto& p : pts) {
          auto a = t.value(i, j, p), b = t.value(i + j, k, p), c = t.value(j, k, p), d = t.value(i, j + k, p);
          if (!a || !b || !c || !d) throw CoverError("associativity check at a pole of the table");
          if (f.mul(*a, *b) != f.mul(*c, *d)) {
            ok = false;
            break;
          }
        }
        if (!ok) ++bad;
      }
  return bad;
}

struct FixOptions {
  std::size_t points = 30;
  std::uint64_t seed = 1;
  std::size_t max_candidates = 100000;
};

struct FixReport {
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  std::size_t solutions = 0;  // discrete ambiguity after gauge fixing
  std::size_t failures_after = 0;
};

namespace detail {

inline std::uint32_t pow_signed(const PrimeField& f, std::uint32_t x, const alg::Integer& e) {
  alg::Integer m = e % (f.p - 1);
  if (m < 0) m += f.p - 1;
  return f.pow(x, static_cast<std::uint64_t>(m));
}

}  // namespace detail

/// One scalar per C3 orbit of pairs, fixed by commutativity and
/// associativity; the remaining C3-invariant rescaling of the basis is
/// fixed by making F_{i,i} have scale 1 for the smallest label i of each
/// label orbit. Of several solutions the one with the lexicographically
/// smallest scale list is returned.
inline MulTable fix_scalings_by_associativity(const MulTable& raw, const FpModel& base, const FixOptions& opts = {},
                                              FixReport* report = nullptr) {
  const auto& f = raw.field;
  FixReport rep;
  std::map<std::pair<int, int>, std::size_t> var;
  for (const auto& [ij, e] : raw.products) {
    auto r = pair_representative(raw, ij.first, ij.second);
    if (!var.count(r)) var.emplace(r, var.size());
  }
  const std::size_t nu = var.size();
  rep.unknowns = nu;
  auto pts = table_points(raw, base, opts.points, opts.seed);

  alg::IntMatrix a;
  std::vector<std::uint32_t> rhs;
  // Row with exponents `row` and the value of prod F^{row} (raw) that must
  // equal prod mu^{-row}; the ratio must not depend on the point.
  auto add_equation = [&](const std::vector<std::pair<std::pair<int, int>, int>>& terms, const std::string& what) {
    std::vector<alg::Integer> row(nu, 0);
    std::optional<std::uint32_t> ratio;
    for (const auto& p : pts) {
      std::uint32_t v = 1;
      for (const auto& [ij, sgn] : terms) {
        auto x = raw.value(ij.first, ij.second, p);
        if (!x || *x == 0) throw CoverError("table entry vanishes or has a pole at a sample point");
        v = f.mul(v, sgn > 0 ? *x : f.inv(*x));
      }
      if (ratio && *ratio != v)
        throw CoverError("inconsistent associativity system: " + what +
                         " is not constant on the base (an entry has the wrong divisor)");
      ratio = v;
    }
    for (const auto& [ij, sgn] : terms)
      if (raw.reduce(ij.first) && raw.reduce(ij.second)) row[var.at(pair_representative(raw, ij.first, ij.second))] += sgn;
    // mu^{row} * ratio = 1
    a.push_back(row);
    rhs.push_back(f.inv(*ratio));
  };
  for (int i = 1; i < raw.order; ++i)
    for (int j = 1; j < raw.order; ++j) {
      if (i < j) add_equation({{{i, j}, 1}, {{j, i}, -1}}, "F_ij / F_ji");
      for (int k = 1; k < raw.order; ++k)
        add_equation({{{i, j}, 1}, {{i + j, k}, 1}, {{j, k}, -1}, {{i, j + k}, -1}},
                     "the associativity ratio for (" + std::to_string(i) + "," + std::to_string(j) + "," +
                         std::to_string(k) + ")");
    }
  // Gauge rows: mu * scale = 1 for F_{i,i}.
  for (const auto& orb : label_orbits(raw.order, raw.multiplier)) {
    int i = orb.front();
    bool pure = false;
    for (int x : orb) pure |= raw.reduce(2 * i) == x;
    if (!pure) throw CoverError("gauge: e_i^2 leaves the orbit of e_i, cannot normalize");
    std::vector<alg::Integer> row(nu, 0);
    row[var.at(pair_representative(raw, i, i))] = 1;
    a.push_back(row);
    rhs.push_back(f.inv(raw.at(i, i).scale));
  }
  rep.equations = a.size();

  // L A R = D; mu = nu^R (columnwise), so nu_t^{d_t} = prod rhs^{L_t}.
  auto snf = alg::smith_normal_form(a, true);
  std::vector<std::uint32_t> tau(a.size(), 1);
  for (std::size_t t = 0; t < a.size(); ++t)
    for (std::size_t r = 0; r < a.size(); ++r)
      if (snf.left[t][r] != 0) tau[t] = f.mul(tau[t], detail::pow_signed(f, rhs[r], snf.left[t][r]));
  std::vector<std::vector<std::uint32_t>> choices(nu);
  for (std::size_t t = 0; t < a.size(); ++t) {
    alg::Integer d = t < snf.diagonal.size() ? snf.diagonal[t] : alg::Integer(0);
    if (d == 0) {
      if (tau[t] != 1) throw CoverError("inconsistent associativity system: no scaling satisfies all identities");
      if (t < nu) throw CoverError("associativity leaves a continuous family of scalings");
      continue;
    }
    ++rep.rank;
    if (d < 0) d = -d;
    // roots of x^d = tau_t
    const auto deg = static_cast<std::size_t>(d % (f.p - 1) == 0 ? f.p - 1 : static_cast<std::uint64_t>(d % (f.p - 1)));
    alg::UniPoly poly(deg + 1, 0);
    poly[0] = f.neg(tau[t]);
    poly[deg] = 1;
    auto roots = alg::uni_roots(f, poly, opts.seed);
    std::erase(roots, 0u);
    if (roots.empty()) throw CoverError("inconsistent associativity system: a required root does not exist in " + f.name());
    choices[t] = roots;
  }
  // Enumerate, keep the lexicographically smallest fixed table.
  std::size_t total = 1;
  for (const auto& c : choices) {
    total *= c.size();
    if (total > opts.max_candidates) throw CoverError("too many discrete scaling solutions");
  }
  rep.solutions = total;
  std::vector<std::pair<std::pair<int, int>, TableEntry>> entries(raw.products.begin(), raw.products.end());
  std::optional<std::vector<std::uint32_t>> best;
  std::vector<std::uint32_t> best_mu;
  std::vector<std::size_t> idx(nu, 0);
  for (std::size_t c = 0; c < total; ++c) {
    std::size_t rest = c;
    for (std::size_t t = 0; t < nu; ++t) {
      idx[t] = rest % choices[t].size();
      rest /= choices[t].size();
    }
    std::vector<std::uint32_t> mu(nu, 1);
    for (std::size_t k = 0; k < nu; ++k)
      for (std::size_t t = 0; t < nu; ++t)
        if (snf.right[k][t] != 0) mu[k] = f.mul(mu[k], detail::pow_signed(f, choices[t][idx[t]], snf.right[k][t]));
    std::vector<std::uint32_t> scales;
    for (const auto& [ij, e] : entries)
      scales.push_back(f.mul(e.scale, mu[var.at(pair_representative(raw, ij.first, ij.second))]));
    if (!best || scales < *best) {
      best = scales;
      best_mu = mu;
    }
  }
  MulTable out = raw;
  std::size_t k = 0;
  for (auto& [ij, e] : out.products) e.scale = (*best)[k++];
  out.state = ScalingState::AssociativityFixed;
  rep.failures_after = associativity_failures(out, pts);
  if (report) *report = rep;
  if (rep.failures_after)
    throw CoverError("associativity still fails for " + std::to_string(rep.failures_after) +
                     " triples after fixing scalings");
  return out;
}

/// Divisor bookkeeping for F_ij. With curves C_k = {r_k = 0} (C_0 = {r_{0,0} = 0}),
/// div F_ij = C_i + C_j - C_0 - C_{i+j} (C_i + C_j - 2 C_0 if i+j = 0); the poles are cleared by P10
/// (vanishing on 2 C_0) and, when i+j != 0, by the member of the s3 orbit
/// vanishing on C_{i+j} + C_{-(i+j)}. Labels are signed: the orbit of 1
/// keeps its residues, the orbit of -1 is written negative.
struct DivisorPlan {
  int i = 0, j = 0, target = 0;
  std::vector<std::string> aux;
  std::vector<std::pair<int, unsigned>> zeros;  // signed curve label, multiplicity of F * aux
  unsigned degree() const { return static_cast<unsigned>(aux.size()); }
  std::string format() const {
    std::string out;
    for (const auto& [c, m] : zeros) {
      if (!out.empty()) out += " + ";
      if (m > 1) out += std::to_string(m);
      out += "C" + std::to_string(c);
    }
    return out;
  }
};

inline DivisorPlan product_divisor_plan(int i, int j, int order = 7, int multiplier = 4) {
  auto red = [&](long x) { return static_cast<int>(((x % order) + order) % order); };
  std::set<int> plus;
  for (int x = 1; plus.insert(x).second; x = red(x * multiplier)) {
  }
  if (plus.count(red(-1))) throw CoverError("1 and -1 lie in one orbit; signed labels are undefined");
  auto sym = [&](int x) { return x == 0 || plus.count(x) ? x : x - order; };
  if (red(i) == 0 || red(j) == 0) throw CoverError("products with e_0 = 1 need no plan");
  DivisorPlan p;
  p.i = red(i);
  p.j = red(j);
  p.target = red(i + j);
  std::vector<std::pair<int, int>> div;  // in order of appearance
  auto add = [&](int c, int m) {
    for (auto& [k, v] : div)
      if (k == c) {
        v += m;
        return;
      }
    div.emplace_back(c, m);
  };
  add(sym(p.i), 1);
  add(sym(p.j), 1);
  if (p.target) {
    // s3 vanishes on C_1 + C_-1; sigma^k(s3) on C_{m^k} + C_{-m^k}.
    int k = 0;
    for (int x = 1; x != p.target && red(-x) != p.target; x = red(x * multiplier))
      if (++k > 2) throw CoverError("label outside the orbits of 1 and -1");
    p.aux.push_back(k == 0 ? "s3" : k == 1 ? "sigma(s3)" : "sigma^2(s3)");
    add(sym(p.target), -1);
    add(sym(p.target), 1);
    add(sym(red(-p.target)), 1);
  }
  p.aux.insert(p.aux.begin(), "P10");
  add(0, p.target ? -1 : -2);  // e_0 = 1 has no pole
  add(0, 2);
  for (const auto& [c, m] : div) {
    if (m < 0) throw CoverError("internal error: plan leaves a pole");
    if (m > 0) p.zeros.emplace_back(c, static_cast<unsigned>(m));
  }
  return p;
}

/// Curve conditions for a plan, given forms cutting out each C_k.
inline DivisorConstraint plan_constraint(const DivisorPlan& plan, const std::map<int, std::vector<FpPoly>>& curves) {
  DivisorConstraint d;
  for (const auto& [c, m] : plan.zeros) {
    auto it = curves.find(c);
    if (it == curves.end()) throw CoverError("no equations for curve C" + std::to_string(c));
    d.curves.push_back({"C" + std::to_string(c), it->second, m, DivisorSign::Zero});
  }
  return d;
}

}  // namespace coverforge::cover
