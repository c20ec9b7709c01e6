#pragma once

// The double cover W -> Y branched along {U10 = 0}. W sits in the space with
// coordinates P_i = U_i on Y and P_{n+k} = Q_k / sqrt(U10), where Q_0 = U10,
// so P_n = sqrt(U10). The covering involution negates the second block.

#include <string>
#include <vector>

#include "coverforge/cover/interpolate.hpp"
#include "coverforge/exactalg/univariate.hpp"
#include "coverforge/verify/diagonalize.hpp"

namespace coverforge::cover {

struct DoubleCoverOptions {
  std::uint64_t seed = 1;
  std::size_t fresh = 20;
  InterpolationOptions interpolation;
  std::string prefix = "P";
};

struct DoubleCoverReport {
  std::size_t even = 0;
  std::size_t odd = 0;
  std::size_t base_points_tried = 0;
  InterpolationReport interpolation;
};

inline equiv::ActionGen covering_involution(std::size_t base, std::size_t extra) {
  auto g = equiv::ActionGen::identity(base + extra, "iota");
  for (std::size_t k = base; k < base + extra; ++k) g.scalar[k] = equiv::RootOfUnity::minus_one();
  return g;
}

/// Points of W over sampled points of Y where U10 is a nonzero square; both
/// square roots are used.
inline std::vector<Point> double_cover_points(const FpModel& y, const std::vector<FpPoly>& basis, std::size_t count,
                                              std::uint64_t seed, const std::vector<Point>& exclude,
                                              std::size_t* tried = nullptr) {
  const auto& f = y.field;
  std::set<Point> seen(exclude.begin(), exclude.end());
  std::vector<Point> out;
  SampleOptions so;
  so.seed = seed;
  so.avoid = {basis[0]};
  std::size_t batch = count;
  std::vector<Point> used;
  for (int round = 0; round < 8 && out.size() < count; ++round) {
    so.exclude = used;
    so.seed = seed + 7919u * static_cast<std::uint64_t>(round);
    PointSample base;
    try {
      base = sample_points(y, batch, so);
    } catch (const CoverError&) {
      if (round == 0) throw;
      break;
    }
    for (const auto& p : base.points) {
      used.push_back(p);
      if (tried) ++*tried;
      auto u10 = basis[0].evaluate(std::span<const std::uint32_t>(p));
      auto roots = alg::uni_roots(f, {f.neg(u10), 0, 1});
      for (auto r : roots) {
        Point w = p;
        auto rinv = f.inv(r);
        for (const auto& q : basis) w.push_back(f.mul(q.evaluate(std::span<const std::uint32_t>(p)), rinv));
        w = normalize_point(f, w);
        if (seen.insert(w).second) out.push_back(std::move(w));
        if (out.size() == count) break;
      }
      if (out.size() == count) break;
    }
    batch *= 2;
  }
  if (out.size() < count)
    throw CoverError("double cover: found only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                     " points (U10 is rarely a square on the sample; use a larger prime)");
  return out;
}

/// Quadrics cutting out W, each of pure parity under the involution.
inline FpModel build_double_cover(const FpModel& y, const FpPoly& u10, const std::vector<FpPoly>& new_basis,
                                  const DoubleCoverOptions& opts = {}, DoubleCoverReport* report = nullptr) {
  const auto& f = y.field;
  const std::size_t n = y.nvars();
  std::vector<FpPoly> basis{u10};
  basis.insert(basis.end(), new_basis.begin(), new_basis.end());
  for (const auto& q : basis)
    if (q.nvars() != n || !q.is_homogeneous() || q.degree() != 2)
      throw CoverError("double cover: U10 and the new basis must be quadrics in the coordinates of Y");
  if (verify::groebner_basis(ideal_or_zero(y)).contains(u10))
    throw CoverError("double cover: U10 vanishes on Y");
  const std::size_t k = basis.size();
  auto iota = covering_involution(n, k);
  EquivarianceFilter parity{{iota}, std::nullopt};

  const std::size_t nw = n + k;
  std::size_t largest = 0;
  {
    std::map<std::vector<int>, std::size_t> sizes;
    for (const auto& m : alg::monomials_of_degree(nw, 2)) largest = std::max(largest, ++sizes[parity.key(m)]);
  }
  DoubleCoverReport rep;
  auto need = points_required(largest, opts.interpolation.margin);
  PointSample pts{f, double_cover_points(y, basis, need, opts.seed, {}, &rep.base_points_tried), opts.seed,
                  SampleStrategy::Slicing};
  PointSample fresh{f, double_cover_points(y, basis, opts.fresh, opts.seed ^ 0x5bd1e995u, pts.points), opts.seed,
                    SampleStrategy::Slicing};
  auto rels = interpolate_vanishing_forms(pts, 2, nw, parity, fresh, opts.interpolation, &rep.interpolation);
  for (const auto& r : rels) {
    auto w = equiv::diagonal_weight(iota, r);
    if (!w) throw CoverError("double cover: parity-mixed relation found");
    (w->e == 0 ? rep.even : rep.odd)++;
  }

  FpModel w;
  w.name = y.name.empty() ? "double cover" : "double cover of " + y.name;
  w.field = f;
  w.coords = default_coords(opts.prefix, nw);
  w.ideal = std::move(rels);
  w.actions.coords = w.coords;
  w.actions.gens.push_back(iota);
  w.meta["base coordinates"] = std::to_string(n);
  // P_n^2 - U10(P_0..P_{n-1}) is a relation by definition of P_n.
  {
    std::vector<FpPoly> lift;
    for (std::size_t i = 0; i < n; ++i) lift.push_back(FpPoly::variable(f, nw, i));
    auto ident = FpPoly::variable(f, nw, n) * FpPoly::variable(f, nw, n) - u10.substitute(std::span<const FpPoly>(lift));
    std::vector<FpPoly> both = w.ideal;
    both.push_back(ident);
    if (verify::detail::echelon_span(both).size() != w.ideal.size())
      throw CoverError("double cover: the defining identity P_n^2 = U10 is not among the relations");
  }
  if (report) *report = rep;
  return w;
}

}  // namespace coverforge::cover
