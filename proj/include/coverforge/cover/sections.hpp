#pragma once

// Linear forms s1..s4 on a model with an involution iota and a diagonal C7
// action h such that s1 has weight a+1, s2 = iota(s1), s3 and s4 are
// iota-invariant of weights 2 and 2a, and s1 s2 = s3 s4 on the model.
// Scalings (s1, s3, s4) -> (l s1, m s3, l^2/m s4) are fixed by making the
// first nonzero coefficient of s1 and of s3 equal to 1.

#include <optional>
#include <string>
#include <vector>

#include "coverforge/cover/model.hpp"
#include "coverforge/equivariant/weights.hpp"
#include "coverforge/verify/groebner.hpp"
#include "coverforge/verify/solve.hpp"

namespace coverforge::cover {

struct WeightedSections {
  FpPoly s1, s2, s3, s4;
};

struct SectionsOptions {
  std::uint64_t seed = 1;
  std::size_t max_solutions = 1000;
};

struct SectionsReport {
  std::size_t dim_s1 = 0, dim_s3 = 0, dim_s4 = 0;
  std::size_t pivot_cases = 0;
  std::size_t raw_solutions = 0;
};

namespace detail {

/// Coordinates that are eigenvectors of both actions with the given
/// eigenvalue exponents (iota parity optional).
inline std::vector<std::size_t> coordinates_of_weight(const equiv::ActionGen& h, int weight7,
                                                      const equiv::ActionGen* iota, std::optional<int> parity) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (equiv::detail::order7_exponent(h.scalar[i], "h scalar") != ((weight7 % 7) + 7) % 7) continue;
    if (parity && iota && iota->scalar[i].e != *parity) continue;
    out.push_back(i);
  }
  return out;
}

inline FpPoly linear_form(const PrimeField& f, std::size_t n, const std::vector<std::size_t>& vars,
                          const std::vector<std::uint32_t>& c) {
  std::vector<FpPoly::Term> t;
  for (std::size_t k = 0; k < vars.size(); ++k)
    if (c[k]) t.emplace_back(Monomial::variable(n, vars[k]), c[k]);
  return FpPoly::from_terms(f, n, std::move(t));
}

}  // namespace detail

/// All solutions over the model's field, one per {s1, s2} swap class.
/// Empty means no solution exists for this a.
inline std::vector<WeightedSections> find_weighted_sections(const FpModel& w, const equiv::ActionGen& iota,
                                                            const equiv::ActionGen& h, int a,
                                                            const SectionsOptions& opts = {},
                                                            SectionsReport* report = nullptr) {
  const auto& f = w.field;
  const std::size_t n = w.nvars();
  if (!iota.is_diagonal() || !h.is_diagonal() || iota.size() != n || h.size() != n)
    throw CoverError("find_weighted_sections: iota and h must be diagonal actions on the model's coordinates");
  for (const auto& s : iota.scalar)
    if (s.e != 0 && s.e != 21) throw CoverError("find_weighted_sections: iota must act by +1 and -1");
  auto v1 = detail::coordinates_of_weight(h, a + 1, nullptr, std::nullopt);
  auto v3 = detail::coordinates_of_weight(h, 2, &iota, 0);
  auto v4 = detail::coordinates_of_weight(h, 2 * a, &iota, 0);
  SectionsReport rep;
  rep.dim_s1 = v1.size();
  rep.dim_s3 = v3.size();
  rep.dim_s4 = v4.size();
  std::vector<WeightedSections> out;
  if (v1.empty() || v3.empty() || v4.empty()) {
    if (report) *report = rep;
    return out;
  }
  auto gb = verify::groebner_basis(ideal_or_zero(w));

  // Unknowns: free coefficients of s1 after the pivot, of s3 after the
  // pivot, and all of s4. Equations: coefficients of NF(s1 s2 - s3 s4).
  std::set<std::vector<std::uint32_t>> seen;
  for (std::size_t p1 = 0; p1 < v1.size(); ++p1)
    for (std::size_t p3 = 0; p3 < v3.size(); ++p3) {
      ++rep.pivot_cases;
      const std::size_t n1 = v1.size() - p1 - 1, n3 = v3.size() - p3 - 1, n4 = v4.size();
      const std::size_t nu = n1 + n3 + n4;
      auto unk = [&](std::size_t k) { return FpPoly::variable(f, n + nu, n + k); };
      auto one = FpPoly::constant(f, n + nu, 1);
      auto coord = [&](std::size_t i) { return FpPoly::variable(f, n + nu, i); };
      FpPoly s1(f, n + nu), s2(f, n + nu), s3(f, n + nu), s4(f, n + nu);
      for (std::size_t k = p1; k < v1.size(); ++k) {
        auto c = k == p1 ? one : unk(k - p1 - 1);
        auto sign = iota.scalar[v1[k]].e == 21 ? f.neg(1) : 1u;
        s1 = s1 + c * coord(v1[k]);
        s2 = s2 + c.scaled(sign) * coord(v1[k]);
      }
      for (std::size_t k = p3; k < v3.size(); ++k) s3 = s3 + (k == p3 ? one : unk(n1 + k - p3 - 1)) * coord(v3[k]);
      for (std::size_t k = 0; k < v4.size(); ++k) s4 = s4 + unk(n1 + n3 + k) * coord(v4[k]);
      // Reduce modulo the model in the coordinate variables only: the
      // product is quadratic in coordinates, so split by coordinate monomial.
      auto prod = s1 * s2 - s3 * s4;
      std::map<Monomial, FpPoly> by_coord;  // coordinate monomial -> coefficient poly in unknowns
      for (const auto& [m, c] : prod.terms()) {
        Monomial cm(n), um(nu);
        for (std::size_t i = 0; i < n; ++i) cm[i] = m[i];
        for (std::size_t i = 0; i < nu; ++i) um[i] = m[n + i];
        auto& slot = by_coord.try_emplace(cm, FpPoly(f, nu)).first->second;
        slot = slot + FpPoly::monomial(f, um, c);
      }
      std::map<Monomial, FpPoly> reduced;
      for (const auto& [cm, coeff] : by_coord) {
        auto nf = gb.normal_form(FpPoly::monomial(f, cm, 1));
        for (const auto& [m2, c2] : nf.terms()) {
          auto& slot = reduced.try_emplace(m2, FpPoly(f, nu)).first->second;
          slot = slot + coeff.scaled(c2);
        }
      }
      std::vector<FpPoly> eqs;
      bool inconsistent = false;
      for (auto& [m, e] : reduced) {
        if (e.is_zero()) continue;
        if (e.degree() == 0) inconsistent = true;
        eqs.push_back(e);
      }
      if (inconsistent) continue;
      std::vector<verify::AffinePoint> sols;
      if (nu == 0) {
        if (eqs.empty()) sols.push_back({});
      } else {
        if (eqs.empty())
          throw CoverError("find_weighted_sections: positive-dimensional family for a=" + std::to_string(a));
        verify::SolveOptions so;
        so.seed = opts.seed;
        so.max_solutions = opts.max_solutions;
        try {
          sols = verify::solve_zero_dim(eqs, so);
        } catch (const verify::VerifyError& e) {
          throw CoverError("find_weighted_sections: solution set for a=" + std::to_string(a) +
                           " is not finite modulo scaling (" + e.what() + ")");
        }
      }
      for (const auto& u : sols) {
        std::vector<std::uint32_t> c1(v1.size(), 0), c3(v3.size(), 0), c4(v4.size(), 0);
        c1[p1] = 1;
        for (std::size_t k = 0; k < n1; ++k) c1[p1 + 1 + k] = u[k];
        c3[p3] = 1;
        for (std::size_t k = 0; k < n3; ++k) c3[p3 + 1 + k] = u[n1 + k];
        for (std::size_t k = 0; k < n4; ++k) c4[k] = u[n1 + n3 + k];
        if (std::all_of(c4.begin(), c4.end(), [](std::uint32_t x) { return x == 0; })) continue;
        ++rep.raw_solutions;
        std::vector<std::uint32_t> c2 = c1;
        for (std::size_t k = 0; k < v1.size(); ++k)
          if (iota.scalar[v1[k]].e == 21) c2[k] = f.neg(c2[k]);
        // s2 normalized the same way as s1, for the swap class key
        std::uint32_t lead2 = 0;
        for (auto x : c2)
          if (x) {
            lead2 = x;
            break;
          }
        auto inv2 = f.inv(lead2);
        for (auto& x : c2) x = f.mul(x, inv2);
        auto key = std::min(c1, c2);
        key.insert(key.end(), c3.begin(), c3.end());
        if (!seen.insert(key).second) continue;
        WeightedSections ws;
        bool swap = c2 < c1;
        ws.s1 = detail::linear_form(f, n, v1, c1);
        ws.s2 = equiv::act_on_form(iota, ws.s1);
        ws.s3 = detail::linear_form(f, n, v3, c3);
        ws.s4 = detail::linear_form(f, n, v4, c4);
        if (swap) {
          // Present the class by its smaller member; rescale s4 for s2/lead2.
          ws.s1 = ws.s2.scaled(inv2);
          ws.s2 = equiv::act_on_form(iota, ws.s1);
          ws.s4 = ws.s4.scaled(f.mul(inv2, inv2));
        }
        if (!gb.contains(ws.s1 * ws.s2 - ws.s3 * ws.s4))
          throw CoverError("find_weighted_sections: internal error, s1 s2 - s3 s4 is not in the ideal");
        out.push_back(std::move(ws));
      }
    }
  if (report) *report = rep;
  return out;
}

}  // namespace coverforge::cover
