#pragma once

// Sections of O(d) on a model with prescribed vanishing along curves. The
// unknown is a combination of standard monomials (a complement of the
// ideal's degree-d part); vanishing to order 1 at a curve point is a value
// condition, order 2 adds the gradient on the tangent space of the model.

#include <map>
#include <string>
#include <vector>

#include "coverforge/cover/interpolate.hpp"
#include "coverforge/cover/sampling.hpp"

namespace coverforge::cover {

enum class DivisorSign { Zero, Pole };

struct CurveCondition {
  std::string label;
  std::vector<FpPoly> forms;  // cut the curve out on the model
  unsigned multiplicity = 1;
  DivisorSign sign = DivisorSign::Zero;
};

struct DivisorConstraint {
  std::vector<CurveCondition> curves;
};

struct SectionSearchOptions {
  EquivarianceFilter invariance;  // diagonal actions; `only` picks the eigenclass
  std::vector<std::pair<equiv::ActionGen, equiv::RootOfUnity>> eigen;  // g.F = lambda F on the model
  std::size_t points_per_curve = 0;  // 0: candidate count + 5
  std::uint64_t seed = 1;
};

struct SectionSearchReport {
  std::size_t candidates = 0;
  std::size_t conditions = 0;
  std::size_t solution_dimension = 0;
  std::vector<std::size_t> curve_points;
};

/// Degree-d monomials that are standard for the Groebner basis, sorted
/// descending in lex order.
inline std::vector<Monomial> standard_monomials(const verify::GroebnerBasis& gb, unsigned degree) {
  auto lead = gb.leading_monomials();
  std::vector<Monomial> out;
  for (auto& m : alg::monomials_of_degree(gb.nvars(), degree)) {
    bool divisible = false;
    for (const auto& l : lead)
      if (l.degree() > 0 && l.divides(m)) {
        divisible = true;
        break;
      }
    if (!divisible) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), alg::MonomialOrder{alg::OrderKind::Lex});
  return out;
}

/// Every GF(p)-point of a zero-dimensional model (three random charts).
inline std::vector<Point> all_points_zero_dim(const FpModel& m, std::uint64_t seed) {
  const auto& f = m.field;
  const std::size_t n = m.nvars();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> c(0, f.p - 1);
  std::set<Point> seen;
  for (int chart = 0; chart < 3; ++chart) {
    std::vector<std::vector<std::uint32_t>> b(n, std::vector<std::uint32_t>(n));
    for (;;) {
      alg::Matrix<PrimeField> mm(f, 0, n);
      for (auto& row : b) {
        for (auto& x : row) x = c(rng);
        mm.append_row(row);
      }
      if (alg::rank(mm) == n) break;
    }
    for (const auto& p : detail::points_on_slice(m, b, seed + chart)) seen.insert(normalize_point(f, p));
  }
  return {seen.begin(), seen.end()};
}

/// Points of the curve {forms = 0} on the model.
inline std::vector<Point> curve_points(const FpModel& model, const CurveCondition& curve, std::size_t want,
                                       std::uint64_t seed) {
  FpModel c = model;
  c.ideal.insert(c.ideal.end(), curve.forms.begin(), curve.forms.end());
  const int dim = model_dimension(c);
  if (dim < 0) throw CoverError("curve '" + curve.label + "' is empty on the model");
  if (dim == 0) return all_points_zero_dim(c, seed);
  SampleOptions so;
  so.seed = seed;
  so.dimension = dim;
  return sample_points(c, want, so).points;
}

/// Tangent space of the affine cone of the model at p: kernel of the Jacobian.
inline std::vector<std::vector<std::uint32_t>> tangent_space(const FpModel& model, const Point& p) {
  const auto& f = model.field;
  const std::size_t n = model.nvars();
  alg::Matrix<PrimeField> j(f, 0, n);
  for (const auto& g : model.ideal) {
    std::vector<std::uint32_t> row(n);
    for (std::size_t i = 0; i < n; ++i) row[i] = g.derivative(i).evaluate(std::span<const std::uint32_t>(p));
    j.append_row(row);
  }
  if (model.ideal.empty()) return alg::kernel(alg::Matrix<PrimeField>(f, 1, n));
  return alg::kernel(j);
}

inline FpPoly find_section_with_divisor(const FpModel& model, unsigned degree, const DivisorConstraint& constraint,
                                        const SectionSearchOptions& opts = {},
                                        SectionSearchReport* report = nullptr) {
  const auto& f = model.field;
  const std::size_t n = model.nvars();
  for (const auto& c : constraint.curves) {
    if (c.multiplicity == 0) throw CoverError("curve '" + c.label + "' has multiplicity 0");
    if (c.sign == DivisorSign::Pole)
      throw CoverError("curve '" + c.label +
                       "' is a pole: multiply through by a section vanishing there and constrain its zeros instead");
    if (c.multiplicity > 2) throw CoverError("vanishing order above 2 is not supported (curve '" + c.label + "')");
    for (const auto& g : c.forms)
      if (g.nvars() != n) throw CoverError("curve '" + c.label + "' does not live on the model's coordinates");
  }
  auto gb = verify::groebner_basis(ideal_or_zero(model));
  std::vector<Monomial> cand;
  for (auto& m : standard_monomials(gb, degree))
    if (opts.invariance.admits(m)) cand.push_back(std::move(m));
  SectionSearchReport rep;
  rep.candidates = cand.size();
  if (cand.empty()) throw CoverError("no candidate sections of degree " + std::to_string(degree));
  std::map<Monomial, std::size_t> idx;
  for (std::size_t k = 0; k < cand.size(); ++k) idx.emplace(cand[k], k);

  alg::Matrix<PrimeField> cond(f, 0, cand.size());
  // Eigen conditions, expressed in normal forms.
  if (!opts.eigen.empty()) {
    auto all_std = standard_monomials(gb, degree);
    std::map<Monomial, std::size_t> sidx;
    for (std::size_t k = 0; k < all_std.size(); ++k) sidx.emplace(all_std[k], k);
    for (const auto& [g, lambda] : opts.eigen) {
      auto lam = equiv::require_root(f, lambda);
      // rows indexed by standard monomials, columns by candidates
      std::vector<std::vector<std::uint32_t>> rows(all_std.size(), std::vector<std::uint32_t>(cand.size(), 0));
      for (std::size_t k = 0; k < cand.size(); ++k) {
        auto img = gb.normal_form(equiv::act_on_form(g, FpPoly::monomial(f, cand[k], 1)));
        for (const auto& [m, c] : img.terms()) rows[sidx.at(m)][k] = f.add(rows[sidx.at(m)][k], c);
        auto& own = rows[sidx.at(cand[k])][k];
        own = f.sub(own, lam);
      }
      for (const auto& r : rows) cond.append_row(r);
    }
  }
  const std::size_t want = opts.points_per_curve ? opts.points_per_curve : cand.size() + 5;
  std::uint64_t seed = opts.seed;
  for (const auto& c : constraint.curves) {
    auto pts = curve_points(model, c, want, seed++);
    rep.curve_points.push_back(pts.size());
    for (const auto& p : pts) {
      cond.append_row(evaluate_monomials(f, cand, p, degree));
      if (c.multiplicity < 2) continue;
      // d/dt F(p + t v) = grad F(p) . v
      for (const auto& v : tangent_space(model, p)) {
        std::vector<std::uint32_t> row(cand.size(), 0);
        for (std::size_t k = 0; k < cand.size(); ++k) {
          std::uint32_t acc = 0;
          for (std::size_t i = 0; i < n; ++i) {
            if (!cand[k][i] || !v[i]) continue;
            Monomial d = cand[k];
            auto e = d[i];
            d[i] = static_cast<std::uint16_t>(e - 1);
            std::uint32_t val = f.from_int(e);
            for (std::size_t t = 0; t < n && val; ++t) val = f.mul(val, f.pow(p[t], d[t]));
            acc = f.add(acc, f.mul(val, v[i]));
          }
          row[k] = acc;
        }
        cond.append_row(row);
      }
    }
  }
  rep.conditions = cond.rows();
  auto ker = alg::kernel(cond);
  rep.solution_dimension = ker.size();
  if (report) *report = rep;
  if (ker.size() != 1)
    throw CoverError("divisor-constrained section space has dimension " + std::to_string(ker.size()) +
                     (ker.empty() ? " (constraints inconsistent or degree too small)"
                                  : " (not enough conditions; add points or constraints)"));
  auto v = ker[0];
  std::size_t lead = 0;
  while (v[lead] == 0) ++lead;
  auto inv = f.inv(v[lead]);
  for (auto& x : v) x = f.mul(x, inv);
  return alg::combine_monomials(f, n, std::span<const Monomial>(cand), std::span<const std::uint32_t>(v));
}

}  // namespace coverforge::cover
