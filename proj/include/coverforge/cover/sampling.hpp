#pragma once

// Rational points on a projective model over GF(q).

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coverforge/cover/model.hpp"
#include "coverforge/verify/hilbert.hpp"
#include "coverforge/verify/solve.hpp"

namespace coverforge::cover {

using Point = std::vector<std::uint32_t>;

enum class SampleStrategy { File, Slicing, Substitution, Exhaustive };

inline std::string strategy_name(SampleStrategy s) {
  switch (s) {
    case SampleStrategy::File: return "file";
    case SampleStrategy::Slicing: return "slicing";
    case SampleStrategy::Substitution: return "substitution";
    case SampleStrategy::Exhaustive: return "exhaustive";
  }
  return "?";
}

inline SampleStrategy parse_strategy(const std::string& s) {
  for (auto k : {SampleStrategy::File, SampleStrategy::Slicing, SampleStrategy::Substitution,
                 SampleStrategy::Exhaustive})
    if (strategy_name(k) == s) return k;
  throw CoverError("unknown sampling strategy '" + s + "'");
}

struct PointSample {
  PrimeField field;
  std::vector<Point> points;
  std::uint64_t seed = 0;
  SampleStrategy strategy = SampleStrategy::Slicing;

  std::size_t size() const { return points.size(); }
};

/// Scale so the first nonzero coordinate is 1.
inline Point normalize_point(const PrimeField& f, Point p) {
  auto it = std::find_if(p.begin(), p.end(), [](std::uint32_t x) { return x != 0; });
  if (it == p.end()) throw CoverError("the zero vector is not a projective point");
  auto inv = f.inv(*it);
  for (auto& x : p) x = f.mul(x, inv);
  return p;
}

inline bool on_model(const std::vector<FpPoly>& ideal, const Point& p) {
  for (const auto& g : ideal)
    if (g.evaluate(std::span<const std::uint32_t>(p)) != 0) return false;
  return true;
}

/// Projective dimension of V(I) from the Hilbert polynomial mod p.
inline int model_dimension(const FpModel& m) {
  auto gb = verify::groebner_basis(ideal_or_zero(m));
  return verify::hilbert_polynomial(gb).dimension();
}

/// Image of p under the substitution action g, as a point: if
/// (g.f)(x) = f(y) for all forms f, then y_{t_i} = c_i x_i.
inline Point act_on_point(const equiv::ActionGen& g, const PrimeField& f, const Point& p) {
  Point y(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) y[g.target[i]] = f.mul(equiv::require_root(f, g.scalar[i]), p[i]);
  return y;
}

struct SampleOptions {
  SampleStrategy strategy = SampleStrategy::Slicing;
  std::uint64_t seed = 1;
  std::size_t budget = 0;  // slices/attempts; 0 means 20 * count + 200
  int dimension = -1;      // projective dimension of the model; -1 computes it
  std::vector<Point> file_points;
  std::vector<Point> exclude;  // never returned (used for disjoint fresh samples)
  std::vector<FpPoly> avoid;   // returned points lie off every one of these
};

namespace detail {

inline std::uint64_t projective_count(std::uint32_t q, std::size_t n) {
  // (q^n - 1) / (q - 1), saturating
  long double c = 0, pw = 1;
  for (std::size_t i = 0; i < n; ++i) {
    c += pw;
    pw *= q;
  }
  return c > 1e18L ? UINT64_MAX : static_cast<std::uint64_t>(c);
}

/// Points of V(I) in the projective linear subspace spanned by the columns
/// of B (n x k), in the chart where the first column has coefficient 1.
inline std::vector<Point> points_on_slice(const FpModel& m, const std::vector<std::vector<std::uint32_t>>& b,
                                          std::uint64_t seed) {
  const auto& f = m.field;
  const std::size_t n = m.nvars(), k = b.empty() ? 0 : b[0].size();
  const std::size_t vars = k - 1;
  auto to_point = [&](const verify::AffinePoint& u) {
    Point x(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto acc = b[i][0];
      for (std::size_t j = 1; j < k; ++j) acc = f.add(acc, f.mul(b[i][j], u[j - 1]));
      x[i] = acc;
    }
    return x;
  };
  std::vector<Point> out;
  if (vars == 0) {
    Point x = to_point({});
    if (on_model(m.ideal, x)) out.push_back(x);
    return out;
  }
  std::vector<FpPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FpPoly::Term> t;
    if (b[i][0]) t.emplace_back(Monomial(vars), b[i][0]);
    for (std::size_t j = 1; j < k; ++j)
      if (b[i][j]) t.emplace_back(Monomial::variable(vars, j - 1), b[i][j]);
    images.push_back(FpPoly::from_terms(f, vars, std::move(t)));
  }
  std::vector<FpPoly> sys;
  for (const auto& g : m.ideal) {
    auto s = g.substitute(std::span<const FpPoly>(images));
    if (!s.is_zero()) sys.push_back(std::move(s));
  }
  if (sys.empty()) throw verify::VerifyError("slice is not zero-dimensional");
  verify::SolveOptions so;
  so.seed = seed;
  so.max_solutions = 10000;
  for (const auto& u : verify::solve_zero_dim(sys, so)) {
    auto x = to_point(u);
    if (std::all_of(x.begin(), x.end(), [](std::uint32_t c) { return c == 0; })) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// `count` distinct points of the model. Deterministic in (model, count,
/// options).
inline PointSample sample_points(const FpModel& model, std::size_t count, const SampleOptions& opts = {}) {
  const auto& f = model.field;
  const std::size_t n = model.nvars();
  if (n == 0) throw CoverError("model has no coordinates");
  PointSample out{f, {}, opts.seed, opts.strategy};
  std::set<Point> seen;
  for (const auto& p : opts.exclude) seen.insert(normalize_point(f, p));
  auto accept = [&](const Point& raw) {
    auto p = normalize_point(f, raw);
    if (!on_model(model.ideal, p)) throw CoverError("internal error: sampled point is not on the model");
    for (const auto& a : opts.avoid)
      if (a.evaluate(std::span<const std::uint32_t>(p)) == 0) return;
    if (seen.insert(p).second) out.points.push_back(std::move(p));
  };
  if (detail::projective_count(f.p, n) < count)
    throw CoverError("q too small for requested count: P^" + std::to_string(n - 1) + "(GF(" + std::to_string(f.p) +
                     ")) has fewer than " + std::to_string(count) + " points");

  if (opts.strategy == SampleStrategy::File) {
    for (const auto& p : opts.file_points) {
      if (p.size() != n) throw CoverError("file point has the wrong number of coordinates");
      auto q = normalize_point(f, p);
      if (!on_model(model.ideal, q)) throw CoverError("file point does not lie on the model");
      accept(q);
      if (out.size() == count) break;
    }
    if (out.size() < count)
      throw CoverError("point file supplies only " + std::to_string(out.size()) + " usable points, " +
                       std::to_string(count) + " requested");
    return out;
  }

  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint32_t> coef(0, f.p - 1);

  if (opts.strategy == SampleStrategy::Exhaustive) {
    if (detail::projective_count(f.p, n) > 4'000'000) throw CoverError("exhaustive sampling: ambient space too large");
    std::vector<Point> all;
    Point x(n, 0);
    // Normalized points: leading coordinate 1 at position lead, zeros before.
    for (std::size_t lead = n; lead-- > 0;) {
      std::fill(x.begin(), x.end(), 0);
      x[lead] = 1;
      for (;;) {
        if (on_model(model.ideal, x)) all.push_back(x);
        std::size_t i = n;
        while (i-- > lead + 1) {
          if (++x[i] < f.p) break;
          x[i] = 0;
        }
        if (i == lead) break;
      }
    }
    std::shuffle(all.begin(), all.end(), rng);
    for (const auto& p : all) {
      accept(p);
      if (out.size() == count) break;
    }
    if (out.size() < count)
      throw CoverError("q too small for requested count: only " + std::to_string(out.size()) + " usable points over " +
                       f.name());
    return out;
  }

  const int d = opts.dimension >= 0 ? opts.dimension : model_dimension(model);
  if (d < 0) throw CoverError("model '" + model.name + "' is empty");
  const std::size_t k = n - static_cast<std::size_t>(d);  // columns of the slice basis
  const std::size_t budget = opts.budget ? opts.budget : 20 * count + 200;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (attempts++ >= budget)
      throw CoverError("sampling budget exhausted after " + std::to_string(budget) + " slices (" +
                       std::to_string(out.size()) + " of " + std::to_string(count) + " points)");
    std::vector<std::vector<std::uint32_t>> b(n, std::vector<std::uint32_t>(k, 0));
    if (opts.strategy == SampleStrategy::Substitution) {
      // Coordinate slice: fix the ratios x_s / x_c of d random coordinates.
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      std::size_t chart = perm[0];
      b[chart][0] = 1;
      for (std::size_t s = 1; s <= static_cast<std::size_t>(d); ++s) b[perm[s]][0] = coef(rng);
      for (std::size_t j = 1; j < k; ++j) b[perm[static_cast<std::size_t>(d) + j]][j] = 1;
    } else {
      for (auto& row : b)
        for (auto& c : row) c = coef(rng);
    }
    std::vector<Point> found;
    try {
      found = detail::points_on_slice(model, b, opts.seed + attempts);
    } catch (const verify::VerifyError&) {
      continue;  // special slice
    }
    for (const auto& p : found) {
      accept(p);
      if (out.size() == count) break;
    }
  }
  return out;
}

}  // namespace coverforge::cover
