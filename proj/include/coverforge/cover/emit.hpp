#pragma once

// From a fixed multiplication table to a model of the cyclic cover Z, and
// from Z with its C7 x C2 action down to the quotient X.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "coverforge/cover/interpolate.hpp"
#include "coverforge/cover/multable.hpp"
#include "coverforge/verify/diagonalize.hpp"

namespace coverforge::cover {

/// A coordinate on Z: form(b) * e_label over the base point b.
struct ZCoordinate {
  std::string name;
  FpPoly form;
  int label = 0;
};

struct EmitOptions {
  std::vector<unsigned> degrees{2, 3, 4};
  std::uint64_t seed = 1;
  std::size_t fresh = 20;
  InterpolationOptions interpolation;
  std::vector<equiv::ActionGen> extra_actions;  // checked, then attached
};

struct EmitReport {
  std::map<unsigned, std::size_t> relations;  // all relations found in each degree
  std::map<unsigned, std::size_t> kept;       // not generated by lower degrees
  std::size_t base_points = 0;
};

/// Points of Z over sampled base points: e_1^7 = G_7 = prod_{m<7} F_{m,1},
/// e_k = e_1^k / G_k with G_k = prod_{m<k} F_{m,1}. One point per base point.
inline std::vector<Point> lift_points(const MulTable& t, const FpModel& base, const std::vector<ZCoordinate>& coords,
                                      std::size_t count, std::uint64_t seed, const std::vector<Point>& exclude,
                                      std::size_t* base_used = nullptr) {
  const auto& f = t.field;
  std::set<Point> seen(exclude.begin(), exclude.end());
  std::vector<Point> out;
  SampleOptions so;
  for (int m = 1; m < t.order; ++m) {
    so.avoid.push_back(t.at(m, 1).num);
    so.avoid.push_back(t.at(m, 1).den);
  }
  std::size_t batch = count;
  std::vector<Point> used;
  for (int round = 0; round < 8 && out.size() < count; ++round) {
    so.seed = seed + 104729u * static_cast<std::uint64_t>(round);
    so.exclude = used;
    PointSample bs;
    try {
      bs = sample_points(base, batch, so);
    } catch (const CoverError&) {
      if (round == 0) throw;
      break;
    }
    for (const auto& b : bs.points) {
      used.push_back(b);
      if (base_used) ++*base_used;
      std::vector<std::uint32_t> g(static_cast<std::size_t>(t.order) + 1, 1);  // g[k] = G_k
      for (int k = 2; k <= t.order; ++k) g[static_cast<std::size_t>(k)] = f.mul(g[static_cast<std::size_t>(k - 1)], *t.value(k - 1, 1, b));
      alg::UniPoly poly(static_cast<std::size_t>(t.order) + 1, 0);
      poly[0] = f.neg(g[static_cast<std::size_t>(t.order)]);
      poly.back() = 1;
      // One lift per base point: the others are its h-translates, which give
      // the same condition on an h-eigenform.
      auto roots = alg::uni_roots(f, poly, seed);
      if (roots.empty()) continue;
      for (auto v : {roots[(b[0] + b.back()) % roots.size()]}) {
        std::vector<std::uint32_t> e(static_cast<std::size_t>(t.order));
        e[0] = 1;
        for (int k = 1; k < t.order; ++k)
          e[static_cast<std::size_t>(k)] = f.div(f.pow(v, static_cast<std::uint64_t>(k)), g[static_cast<std::size_t>(k)]);
        Point z;
        for (const auto& c : coords)
          z.push_back(f.mul(c.form.evaluate(std::span<const std::uint32_t>(b)), e[static_cast<std::size_t>(t.reduce(c.label))]));
        if (std::all_of(z.begin(), z.end(), [](std::uint32_t x) { return x == 0; })) continue;
        z = normalize_point(f, z);
        if (seen.insert(z).second) out.push_back(std::move(z));
        if (out.size() == count) break;
      }
      if (out.size() == count) break;
    }
    batch *= 2;
  }
  if (out.size() < count)
    throw CoverError("emit: lifted only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                     " points of Z (G_7 is rarely a 7th power; use a larger prime)");
  return out;
}

/// The C7 action on Z coordinates (e_k has weight k) and, when the
/// coordinate list is closed under it, the lift of the table's sigma.
inline std::vector<equiv::ActionGen> z_actions(const MulTable& t, const std::vector<ZCoordinate>& coords) {
  const std::size_t n = coords.size();
  auto h = equiv::ActionGen::identity(n, "h");
  for (std::size_t i = 0; i < n; ++i) {
    if (42 % t.order != 0) throw CoverError("emit: degree does not divide 42");
    h.scalar[i] = equiv::RootOfUnity::from_exponent(42 / t.order * t.reduce(coords[i].label));
  }
  std::vector<equiv::ActionGen> out{h};
  equiv::ActionGen s{"sigma", std::vector<std::size_t>(n), std::vector<equiv::RootOfUnity>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    auto img = equiv::act_on_form(t.sigma, coords[i].form);
    int lab = t.reduce(coords[i].label * t.multiplier);
    bool found = false;
    for (std::size_t k = 0; k < n && !found; ++k)
      if (coords[k].label == lab && coords[k].form == img) {
        s.target[i] = k;
        found = true;
      }
    if (!found) return out;
  }
  out.push_back(s);
  return out;
}

/// Forms in `rels` mapped by g stay in their span (degree by degree).
inline bool span_is_stable(const std::vector<FpPoly>& rels, const equiv::ActionGen& g) {
  if (rels.empty()) return true;
  auto base = verify::detail::echelon_span(rels);
  std::vector<FpPoly> both = base;
  for (const auto& r : rels) both.push_back(equiv::act_on_form(g, r));
  return verify::detail::echelon_span(both).size() == base.size();
}

/// Forms of degree d in the ideal generated by `lower` (all of lower degree).
inline std::vector<FpPoly> multiples_in_degree(const std::vector<FpPoly>& lower, std::size_t n, unsigned d) {
  std::vector<FpPoly> out;
  for (const auto& r : lower) {
    if (r.degree() >= d) continue;
    const auto& f = r.field();
    for (const auto& m : alg::monomials_of_degree(n, d - r.degree())) out.push_back(FpPoly::monomial(f, m, 1) * r);
  }
  return out;
}

inline FpModel emit_model_Z(const MulTable& t, const FpModel& base, const std::vector<ZCoordinate>& coords,
                            const EmitOptions& opts = {}, EmitReport* report = nullptr) {
  if (t.state != ScalingState::AssociativityFixed) throw CoverError("emit: the table's scalings are not fixed");
  if (coords.empty()) throw CoverError("emit: no coordinates");
  unsigned dform = coords[0].form.degree();
  for (const auto& c : coords)
    if (c.form.nvars() != t.nvars() || !c.form.is_homogeneous() || c.form.degree() != dform)
      throw CoverError("emit: coordinate forms must be homogeneous of one degree on the base");
  const std::size_t n = coords.size();
  const auto& f = t.field;
  auto actions = z_actions(t, coords);
  EquivarianceFilter filter{{actions[0]}, std::nullopt};
  EmitReport rep;

  FpModel z;
  z.name = "Z";
  z.field = f;
  for (const auto& c : coords) z.coords.push_back(c.name);
  std::vector<FpPoly> kept;
  for (unsigned d : opts.degrees) {
    std::size_t largest = 0;
    std::map<std::vector<int>, std::size_t> sizes;
    for (const auto& m : alg::monomials_of_degree(n, d)) largest = std::max(largest, ++sizes[filter.key(m)]);
    auto need = points_required(largest, opts.interpolation.margin);
    PointSample pts{f, lift_points(t, base, coords, need, opts.seed + d, {}, &rep.base_points), opts.seed,
                    SampleStrategy::Slicing};
    PointSample fresh{f, lift_points(t, base, coords, opts.fresh, (opts.seed + d) ^ 0x2545f491u, pts.points), opts.seed,
                      SampleStrategy::Slicing};
    auto rels = interpolate_vanishing_forms(pts, d, n, filter, fresh, opts.interpolation);
    rep.relations[d] = rels.size();
    auto lower = multiples_in_degree(kept, n, d);
    auto span = verify::detail::echelon_span(lower);
    std::size_t rank = span.size(), added = 0;
    for (const auto& r : rels) {
      span.push_back(r);
      auto next = verify::detail::echelon_span(span);
      if (next.size() > rank) {
        rank = next.size();
        kept.push_back(r);
        ++added;
      }
      span = std::move(next);
    }
    rep.kept[d] = added;
  }
  z.ideal = std::move(kept);
  z.actions.coords = z.coords;
  z.actions.gens = actions;
  for (const auto& g : opts.extra_actions) {
    if (g.size() != n) throw CoverError("emit: action '" + g.name + "' has the wrong size");
    z.actions.gens.push_back(g);
  }
  // Stability is checked on all relations of each degree, which span I(Z)_d.
  for (const auto& g : z.actions.gens)
    for (unsigned d : opts.degrees) {
      std::vector<FpPoly> all_d = multiples_in_degree(z.ideal, n, d);
      for (const auto& r : z.ideal)
        if (r.degree() == d) all_d.push_back(r);
      if (!span_is_stable(all_d, g))
        throw CoverError("emit: the emitted ideal is not stable under action '" + g.name + "' in degree " +
                         std::to_string(d));
    }
  z.meta["table"] = "fixed";
  if (report) *report = rep;
  return z;
}

// ---------------------------------------------------------------- descent

struct DescendOptions {
  std::size_t z0 = 0;              // index of the coordinate r_{0,0}
  int expected_quadrics = -1;      // checked when >= 0
  int expected_cubics = -1;
  unsigned relation_degree = 3;
  std::uint64_t seed = 1;
  std::size_t fresh = 20;
  InterpolationOptions interpolation;
  std::string prefix = "X";
};

struct DescendReport {
  std::size_t group_order = 0;
  std::size_t invariant_quadrics = 0;  // before reduction modulo I(Z)
  std::vector<FpPoly> quadrics;        // C14-invariant, independent modulo I(Z)
  std::vector<FpPoly> cubics;          // extra anti-invariant cubics
  std::vector<FpPoly> coordinates;     // Z0 * quadrics, then the cubics
  std::size_t relations = 0;
};

namespace detail {

/// Elements of <c7, c2> with the character that is 1 on c7 and -1 on c2.
inline std::vector<std::pair<equiv::ActionGen, int>> c14_elements(const equiv::ActionGen& c7,
                                                                 const equiv::ActionGen& c2) {
  std::vector<std::pair<equiv::ActionGen, int>> out{{equiv::ActionGen::identity(c7.size()), 1}};
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& [g, s] : {std::pair{c7, 1}, std::pair{c2, -1}}) {
      auto h = out[k].first.then(g);
      int sign = out[k].second * s;
      bool found = false;
      for (const auto& [x, sx] : out)
        if (x == h) {
          if (sx != sign) throw CoverError("descend: c2 lies in the group generated by c7");
          found = true;
          break;
        }
      if (!found) out.emplace_back(h, sign);
      if (out.size() > 10000) throw CoverError("descend: group too large");
    }
  }
  return out;
}

/// Span of sum_g chi(g)^sign g.m over monomials of degree d.
inline std::vector<FpPoly> averaged_forms(const PrimeField& f, std::size_t n, unsigned d,
                                          const std::vector<std::pair<equiv::ActionGen, int>>& group, bool anti) {
  std::vector<FpPoly> out;
  for (const auto& m : alg::monomials_of_degree(n, d)) {
    FpPoly acc(f, n);
    auto mono = FpPoly::monomial(f, m, 1);
    for (const auto& [g, s] : group) {
      auto img = equiv::act_on_form(g, mono);
      acc = acc + (anti && s < 0 ? -img : img);
    }
    if (!acc.is_zero()) out.push_back(acc);
  }
  return verify::detail::echelon_span(out);
}

/// Greedy: members of `cands` whose normal forms extend span(NF(base)).
inline std::vector<FpPoly> independent_mod(const verify::GroebnerBasis& gb, const std::vector<FpPoly>& base,
                                           const std::vector<FpPoly>& cands) {
  std::vector<FpPoly> span;
  for (const auto& b : base) {
    auto nf = gb.normal_form(b);
    if (!nf.is_zero()) span.push_back(nf);
  }
  span = verify::detail::echelon_span(span);
  std::vector<FpPoly> out;
  for (const auto& c : cands) {
    auto nf = gb.normal_form(c);
    if (nf.is_zero()) continue;
    auto next = span;
    next.push_back(nf);
    next = verify::detail::echelon_span(next);
    if (next.size() > span.size()) {
      span = std::move(next);
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace detail

inline FpModel descend_to_X(const FpModel& z, const equiv::ActionGen& c7, const equiv::ActionGen& c2,
                            const DescendOptions& opts = {}, DescendReport* report = nullptr) {
  const auto& f = z.field;
  const std::size_t n = z.nvars();
  if (c7.size() != n || c2.size() != n) throw CoverError("descend: actions do not match Z's coordinates");
  if (opts.z0 >= n) throw CoverError("descend: Z0 index out of range");
  DescendReport rep;
  auto group = detail::c14_elements(c7, c2);
  rep.group_order = group.size();
  auto gb = verify::groebner_basis(ideal_or_zero(z));

  auto inv2 = detail::averaged_forms(f, n, 2, group, false);
  rep.invariant_quadrics = inv2.size();
  rep.quadrics = detail::independent_mod(gb, {}, inv2);
  if (opts.expected_quadrics >= 0 && rep.quadrics.size() != static_cast<std::size_t>(opts.expected_quadrics))
    throw CoverError("descend: invariant quadric space has dimension " + std::to_string(rep.quadrics.size()) +
                     ", expected " + std::to_string(opts.expected_quadrics));

  // Anti-invariant cubics vanishing on Z ∩ {Z0 = 0}, found on points.
  auto anti3 = detail::averaged_forms(f, n, 3, group, true);
  FpModel boundary = z;
  boundary.ideal.push_back(FpPoly::variable(f, n, opts.z0));
  std::vector<FpPoly> vanishing;
  if (!anti3.empty()) {
    const std::size_t need = points_required(anti3.size(), opts.interpolation.margin);
    SampleOptions so;
    so.seed = opts.seed;
    auto pts = sample_points(boundary, need + opts.fresh, so).points;
    alg::Matrix<PrimeField> ev(f, 0, anti3.size());
    for (std::size_t r = 0; r < need; ++r) {
      std::vector<std::uint32_t> row;
      for (const auto& c : anti3) row.push_back(c.evaluate(std::span<const std::uint32_t>(pts[r])));
      ev.append_row(row);
    }
    for (const auto& v : alg::kernel(ev)) {
      FpPoly c(f, n);
      for (std::size_t k = 0; k < anti3.size(); ++k)
        if (v[k]) c = c + anti3[k].scaled(v[k]);
      for (std::size_t r = need; r < pts.size(); ++r)
        if (c.evaluate(std::span<const std::uint32_t>(pts[r])) != 0)
          throw CoverError("descend: fresh-sample verification failed for a boundary cubic");
      vanishing.push_back(c);
    }
  }
  std::vector<FpPoly> trivial;
  auto z0 = FpPoly::variable(f, n, opts.z0);
  for (const auto& q : inv2) trivial.push_back(z0 * q);
  rep.cubics = detail::independent_mod(gb, trivial, verify::detail::echelon_span(vanishing));
  if (opts.expected_cubics >= 0 && rep.cubics.size() != static_cast<std::size_t>(opts.expected_cubics))
    throw CoverError("descend: extra cubic space has dimension " + std::to_string(rep.cubics.size()) + ", expected " +
                     std::to_string(opts.expected_cubics));

  for (const auto& q : rep.quadrics) rep.coordinates.push_back(z0 * q);
  for (const auto& c : rep.cubics) rep.coordinates.push_back(c);
  const std::size_t nx = rep.coordinates.size();

  // Points of X: images of points of Z off {Z0 = 0}.
  auto image_points = [&](std::size_t count, std::uint64_t seed, const std::vector<Point>& exclude) {
    std::set<Point> seen(exclude.begin(), exclude.end());
    std::vector<Point> out;
    SampleOptions so;
    so.avoid = {z0};
    std::size_t batch = count * 2;
    for (int round = 0; round < 8 && out.size() < count; ++round) {
      so.seed = seed + 15485863u * static_cast<std::uint64_t>(round);
      PointSample zs;
      try {
        zs = sample_points(z, batch, so);
      } catch (const CoverError&) {
        if (round == 0) throw;
        break;
      }
      for (const auto& p : zs.points) {
        Point x;
        for (const auto& c : rep.coordinates) x.push_back(c.evaluate(std::span<const std::uint32_t>(p)));
        if (std::all_of(x.begin(), x.end(), [](std::uint32_t v) { return v == 0; })) continue;
        x = normalize_point(f, x);
        if (seen.insert(x).second) out.push_back(std::move(x));
        if (out.size() == count) break;
      }
      batch *= 2;
    }
    if (out.size() < count) throw CoverError("descend: not enough points on X");
    return out;
  };
  auto need = points_required(alg::monomials_of_degree(nx, opts.relation_degree).size(), opts.interpolation.margin);
  PointSample pts{f, image_points(need, opts.seed + 1, {}), opts.seed, SampleStrategy::Slicing};
  PointSample fresh{f, image_points(opts.fresh, opts.seed + 2, pts.points), opts.seed, SampleStrategy::Slicing};
  FpModel x;
  x.name = "X";
  x.field = f;
  x.coords = default_coords(opts.prefix, nx);
  x.ideal = interpolate_vanishing_forms(pts, opts.relation_degree, nx, {}, fresh, opts.interpolation);
  x.actions.coords = x.coords;
  rep.relations = x.ideal.size();
  x.meta["quadric coordinates"] = std::to_string(rep.quadrics.size());
  x.meta["cubic coordinates"] = std::to_string(rep.cubics.size());
  if (report) *report = rep;
  return x;
}

}  // namespace coverforge::cover
