#pragma once

// Forms of a given degree vanishing on a point sample: kernel of the
// evaluation matrix, computed separately on each weight class of monomials
// so every returned form is an eigenvector of the diagonal actions.

#include <cmath>
#include <optional>
#include <set>
#include <map>
#include <string>
#include <vector>

#include "coverforge/cover/sampling.hpp"
#include "coverforge/exactalg/matrix.hpp"

namespace coverforge::cover {

/// Diagonal actions whose eigenvalues split the monomial basis. With
/// `only`, only the class with these eigenvalues (one per action) is used.
struct EquivarianceFilter {
  std::vector<equiv::ActionGen> diagonal;
  std::optional<std::vector<equiv::RootOfUnity>> only;

  std::vector<int> key(const Monomial& m) const {
    std::vector<int> k;
    for (const auto& g : diagonal) k.push_back(g.apply(m).first.e);
    return k;
  }
  bool admits(const Monomial& m) const {
    if (!only) return true;
    auto k = key(m);
    for (std::size_t i = 0; i < k.size(); ++i)
      if (k[i] != (*only)[i].e) return false;
    return true;
  }
};

struct InterpolationOptions {
  double margin = 1.25;  // points per unknown in the largest class
  bool verify_fresh = true;
};

struct InterpolationReport {
  std::size_t monomials = 0;
  std::size_t largest_class = 0;
  std::size_t classes = 0;
  std::size_t points_used = 0;
  std::size_t fresh_points = 0;
};

/// Value of every monomial in `basis` at p.
inline std::vector<std::uint32_t> evaluate_monomials(const PrimeField& f, const std::vector<Monomial>& basis,
                                                     const Point& p, unsigned degree) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::uint32_t>> pw(n, std::vector<std::uint32_t>(degree + 1, 1));
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned e = 1; e <= degree; ++e) pw[i][e] = f.mul(pw[i][e - 1], p[i]);
  std::vector<std::uint32_t> out(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::uint32_t v = 1;
    for (std::size_t i = 0; i < n && v; ++i)
      if (basis[k][i]) v = f.mul(v, pw[i][basis[k][i]]);
    out[k] = v;
  }
  return out;
}

/// Points needed for a class of the given size.
inline std::size_t points_required(std::size_t unknowns, double margin) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(unknowns) * margin));
}

/// Relations of the given degree among the coordinates, in reduced echelon
/// form per class (monic, sorted by class then leading monomial). `fresh`
/// must be disjoint from `points`; every relation is re-checked on it.
inline std::vector<FpPoly> interpolate_vanishing_forms(const PointSample& points, unsigned degree, std::size_t nvars,
                                                       const EquivarianceFilter& filter, const PointSample& fresh,
                                                       const InterpolationOptions& opts = {},
                                                       InterpolationReport* report = nullptr) {
  const auto& f = points.field;
  auto all = alg::monomials_of_degree(nvars, degree);
  std::map<std::vector<int>, std::vector<Monomial>> classes;
  for (auto& m : all)
    if (filter.admits(m)) classes[filter.key(m)].push_back(m);
  InterpolationReport rep;
  rep.monomials = all.size();
  rep.classes = classes.size();
  for (const auto& [k, ms] : classes) rep.largest_class = std::max(rep.largest_class, ms.size());
  std::size_t need = points_required(rep.largest_class, opts.margin);
  if (points.size() < need)
    throw CoverError("interpolation needs " + std::to_string(need) + " points for a class of " +
                     std::to_string(rep.largest_class) + " monomials, sample has " + std::to_string(points.size()));
  for (const auto& p : points.points)
    if (p.size() != nvars) throw CoverError("sample points have the wrong number of coordinates");
  {
    std::set<Point> a(points.points.begin(), points.points.end());
    for (const auto& p : fresh.points)
      if (a.count(p)) throw CoverError("fresh sample is not disjoint from the interpolation sample");
  }
  rep.points_used = need;
  rep.fresh_points = fresh.size();

  std::vector<FpPoly> out;
  for (const auto& [key, basis] : classes) {
    const std::size_t use = std::min(points.size(), std::max(need, basis.size()));
    alg::Matrix<PrimeField> m(f, 0, basis.size());
    for (std::size_t r = 0; r < use; ++r) m.append_row(evaluate_monomials(f, basis, points.points[r], degree));
    auto ker = alg::kernel(m);
    // Canonical basis of the kernel: reduced echelon form.
    auto ech = alg::row_space_basis(f, basis.size(), ker);
    for (const auto& v : ech) out.push_back(alg::combine_monomials(f, nvars, std::span<const Monomial>(basis), v));
  }
  if (opts.verify_fresh) {
    if (fresh.size() == 0 && !out.empty()) throw CoverError("fresh-sample verification requested with no fresh points");
    for (const auto& rel : out)
      for (const auto& p : fresh.points)
        if (rel.evaluate(std::span<const std::uint32_t>(p)) != 0)
          throw CoverError("fresh-sample verification failed: an interpolated relation of degree " +
                           std::to_string(degree) +
                           " does not vanish on a fresh point (too few points or special-position sample)");
  }
  if (report) *report = rep;
  return out;
}

/// Sample enough points on `model` and interpolate, with a disjoint fresh
/// sample for verification.
inline std::vector<FpPoly> interpolate_model(const FpModel& model, unsigned degree, const EquivarianceFilter& filter,
                                             std::uint64_t seed, const InterpolationOptions& opts = {},
                                             std::size_t fresh_count = 20, InterpolationReport* report = nullptr) {
  std::size_t largest = 0;
  {
    std::map<std::vector<int>, std::size_t> sizes;
    for (const auto& m : alg::monomials_of_degree(model.nvars(), degree))
      if (filter.admits(m)) largest = std::max(largest, ++sizes[filter.key(m)]);
  }
  SampleOptions so;
  so.seed = seed;
  auto pts = sample_points(model, points_required(largest, opts.margin), so);
  SampleOptions fo = so;
  fo.seed = seed ^ 0x9e3779b97f4a7c15ull;
  fo.exclude = pts.points;
  auto fresh = sample_points(model, fresh_count, fo);
  return interpolate_vanishing_forms(pts, degree, model.nvars(), filter, fresh, opts, report);
}

}  // namespace coverforge::cover
