#pragma once

// Change of coordinates diagonalizing an order-3 monomial action, with the
// ideal rewritten in the new coordinates and split into eigenvectors.

#include <map>
#include <vector>

#include "coverforge/equivariant/action.hpp"
#include "coverforge/exactalg/matrix.hpp"
#include "coverforge/verify/groebner.hpp"

namespace coverforge::verify {

struct C3Diagonalization {
  /// New coordinate Y_k as a linear form in the old coordinates.
  std::vector<FpPoly> coordinates;
  /// g3 . Y_k = zeta_3^eigen[k] Y_k
  std::vector<int> eigen;
  /// Old coordinate X_i as a linear form in the new ones.
  std::vector<FpPoly> inverse;
  /// Ideal basis in the new coordinates; every element is a g3-eigenvector.
  std::vector<FpPoly> ideal;
  std::vector<int> ideal_eigen;
  std::size_t terms_input = 0;    // as supplied
  std::size_t terms_reduced = 0;  // echelon basis of the same span, old coordinates
  std::size_t terms_output = 0;   // echelon basis per eigenspace, new coordinates

  double ratio() const { return terms_reduced ? static_cast<double>(terms_output) / terms_reduced : 0.0; }
};

namespace detail {

/// Echelon basis of the span of homogeneous polynomials, per degree.
inline std::vector<FpPoly> echelon_span(const std::vector<FpPoly>& polys) {
  if (polys.empty()) return {};
  const auto& f = polys.front().field();
  const std::size_t n = polys.front().nvars();
  std::map<unsigned, std::vector<const FpPoly*>> by_degree;
  for (const auto& p : polys)
    if (!p.is_zero()) by_degree[p.degree()].push_back(&p);
  std::vector<FpPoly> out;
  for (const auto& [deg, ps] : by_degree) {
    auto basis = alg::monomials_of_degree(n, deg);
    std::map<Monomial, std::size_t> idx;
    for (std::size_t k = 0; k < basis.size(); ++k) idx.emplace(basis[k], k);
    alg::Matrix<PrimeField> m(f, 0, basis.size());
    for (const auto* p : ps) {
      std::vector<std::uint32_t> row(basis.size(), 0);
      for (const auto& [mono, c] : p->terms()) row[idx.at(mono)] = c;
      m.append_row(row);
    }
    auto piv = alg::rref(m);
    for (std::size_t r = 0; r < piv.size(); ++r)
      out.push_back(alg::combine_monomials(f, n, std::span<const Monomial>(basis), m.row(r)));
  }
  return out;
}

inline std::size_t term_count(const std::vector<FpPoly>& ps) {
  std::size_t t = 0;
  for (const auto& p : ps) t += p.size();
  return t;
}

}  // namespace detail

inline C3Diagonalization diagonalize_c3(const std::vector<FpPoly>& ideal, const equiv::ActionGen& g3) {
  if (ideal.empty()) throw VerifyError("empty ideal");
  const PrimeField f = ideal.front().field();
  const std::size_t n = g3.size();
  if ((f.p - 1) % 3 != 0) throw VerifyError("diagonalizing C3 needs p = 1 mod 3, got p=" + std::to_string(f.p));
  g3.validate();
  if (g3.order() != 3 && g3.order() != 1) throw VerifyError("action '" + g3.name + "' does not have order 3");
  for (const auto& p : ideal)
    if (p.nvars() != n) throw VerifyError("ideal and action have different numbers of coordinates");
    else if (!p.is_homogeneous()) throw VerifyError("diagonalize_c3 needs homogeneous generators");

  // Linear map on linear forms: X_i -> c_i X_{t_i}.
  alg::Matrix<PrimeField> a(f, n, n);
  for (std::size_t i = 0; i < n; ++i) a(g3.target[i], i) = equiv::require_root(f, g3.scalar[i]);
  C3Diagonalization out;
  alg::Matrix<PrimeField> v(f, 0, n);
  for (int e = 0; e < 3; ++e) {
    auto lambda = equiv::require_root(f, equiv::RootOfUnity::zeta3(e));
    auto shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) = f.sub(shifted(i, i), lambda);
    for (auto vec : alg::kernel(shifted)) {
      std::size_t lead = 0;
      while (vec[lead] == 0) ++lead;
      auto inv = f.inv(vec[lead]);
      for (auto& x : vec) x = f.mul(x, inv);
      v.append_row(vec);
      out.coordinates.push_back(alg::linear_form(f, std::span<const std::uint32_t>(vec)));
      out.eigen.push_back(e);
    }
  }
  if (v.rows() != n) throw VerifyError("action is not diagonalizable over GF(" + std::to_string(f.p) + ")");
  // Invert V: X = V^-1 Y.
  alg::Matrix<PrimeField> aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      aug(i, j) = v(i, j);
      aug(i, n + j) = i == j ? 1u : 0u;
    }
  alg::rref(aug);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = aug(i, n + k);
    out.inverse.push_back(alg::linear_form(f, std::span<const std::uint32_t>(row)));
  }

  out.terms_input = detail::term_count(ideal);
  auto reduced = detail::echelon_span(ideal);
  out.terms_reduced = detail::term_count(reduced);

  // Rewrite and split each relation into eigen-components.
  std::vector<std::vector<FpPoly>> pieces(3);
  for (const auto& p : reduced) {
    auto q = p.substitute(std::span<const FpPoly>(out.inverse));
    std::vector<std::vector<FpPoly::Term>> parts(3);
    for (const auto& [m, c] : q.terms()) {
      int w = 0;
      for (std::size_t k = 0; k < n; ++k) w += out.eigen[k] * m[k];
      parts[static_cast<std::size_t>(w % 3)].emplace_back(m, c);
    }
    for (int e = 0; e < 3; ++e)
      if (!parts[static_cast<std::size_t>(e)].empty())
        pieces[static_cast<std::size_t>(e)].push_back(
            FpPoly::from_terms(f, n, std::move(parts[static_cast<std::size_t>(e)])));
  }
  for (int e = 0; e < 3; ++e)
    for (auto& p : detail::echelon_span(pieces[static_cast<std::size_t>(e)])) {
      out.ideal.push_back(std::move(p));
      out.ideal_eigen.push_back(e);
    }
  // The components lie in the span iff it is g3-stable; compare dimensions.
  if (out.ideal.size() != reduced.size())
    throw VerifyError("ideal is not stable under '" + g3.name + "' (span grows from " + std::to_string(reduced.size()) +
                      " to " + std::to_string(out.ideal.size()) + ")");
  out.terms_output = detail::term_count(out.ideal);
  return out;
}

}  // namespace coverforge::verify
