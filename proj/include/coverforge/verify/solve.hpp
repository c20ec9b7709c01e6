#pragma once

// GF(p)-rational solutions of a zero-dimensional affine system: lex Groebner
// basis, roots of the univariate element in the last free variable, fix it,
// repeat.

#include <cstdint>
#include <string>
#include <vector>

#include "coverforge/exactalg/univariate.hpp"
#include "coverforge/verify/groebner.hpp"

namespace coverforge::verify {

using AffinePoint = std::vector<std::uint32_t>;

/// f with variable var replaced by the constant v (variable count unchanged).
inline FpPoly fix_variable(const FpPoly& f, std::size_t var, std::uint32_t v) {
  const auto& F = f.field();
  std::vector<FpPoly::Term> out;
  out.reserve(f.size());
  for (const auto& [m, c] : f.terms()) {
    Monomial k = m;
    auto e = k[var];
    k[var] = 0;
    out.emplace_back(std::move(k), F.mul(c, F.pow(v, e)));
  }
  return FpPoly::from_terms(F, f.nvars(), std::move(out));
}

struct SolveOptions {
  std::size_t max_solutions = 100000;
  std::uint64_t seed = 1;
  GbOptions gb{OrderKind::Lex, 0};
};

namespace detail {

inline void solve_rec(std::vector<FpPoly> polys, std::size_t free_vars, AffinePoint& fixed,
                      std::vector<AffinePoint>& out, const SolveOptions& opts) {
  if (out.size() >= opts.max_solutions) throw VerifyError("zero-dimensional solve exceeded the solution cap");
  std::vector<FpPoly> nz;
  for (auto& p : polys)
    if (!p.is_zero()) nz.push_back(std::move(p));
  if (free_vars == 0) {
    if (nz.empty()) out.push_back(fixed);
    return;  // remaining nonzero constants mean no solution
  }
  const std::size_t var = free_vars - 1;
  const std::size_t n = fixed.size();
  std::vector<std::uint32_t> candidates;
  if (nz.empty()) throw VerifyError("system is not zero-dimensional (variable " + std::to_string(var) + " is free)");
  auto gb = groebner_basis(nz, opts.gb);
  if (!gb.complete()) throw VerifyError("lex Groebner basis timed out");
  if (gb.is_unit()) return;
  auto basis = gb.polys();
  // In lex with x0 > ... > x_{n-1}, a univariate element in x_var has its
  // leading monomial a pure power of x_var (variables above var are fixed
  // to constants already and do not appear).
  const FpPoly* uni = nullptr;
  for (const auto& g : basis) {
    const auto& lm = g.leading_monomial();
    bool pure = true;
    for (std::size_t k = 0; k < n; ++k)
      if (k != var && lm[k]) pure = false;
    if (pure && lm[var] > 0) {
      bool only = true;
      for (const auto& [m, c] : g.terms())
        for (std::size_t k = 0; k < n; ++k)
          if (k != var && m[k]) only = false;
      if (only) {
        uni = &g;
        break;
      }
    }
  }
  if (!uni) throw VerifyError("system is not zero-dimensional (no univariate element in variable " +
                              std::to_string(var) + ")");
  alg::UniPoly u(uni->degree() + 1, 0);
  for (const auto& [m, c] : uni->terms()) u[m[var]] = c;
  for (auto r : alg::uni_roots(gb.field(), u, opts.seed + var)) {
    std::vector<FpPoly> next;
    next.reserve(basis.size());
    for (const auto& g : basis) next.push_back(fix_variable(g, var, r));
    fixed[var] = r;
    solve_rec(std::move(next), free_vars - 1, fixed, out, opts);
  }
  fixed[var] = 0;
}

}  // namespace detail

/// All points of V(polys) in GF(p)^n. Throws if the solution set is not
/// finite over the algebraic closure.
inline std::vector<AffinePoint> solve_zero_dim(const std::vector<FpPoly>& polys, const SolveOptions& opts = {}) {
  if (polys.empty()) throw VerifyError("solve_zero_dim needs at least one polynomial");
  const std::size_t n = polys.front().nvars();
  AffinePoint fixed(n, 0);
  std::vector<AffinePoint> out;
  detail::solve_rec(polys, n, fixed, out, opts);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coverforge::verify
