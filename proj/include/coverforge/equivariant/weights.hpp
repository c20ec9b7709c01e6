#pragma once

// Decomposition of a space of forms into joint eigenspaces of two commuting
// actions of order 7.

#include <map>
#include <vector>

#include "coverforge/equivariant/action.hpp"
#include "coverforge/equivariant/representation.hpp"

namespace coverforge::equiv {

namespace detail {

inline int order7_exponent(const RootOfUnity& r, const std::string& what) {
  if (r.e % 6 != 0) throw ActionError(what + " is not a 7th root of unity");
  return r.e / 6;
}

template <Field F>
void check_torus(const F& f, const ActionGen& g, const ActionGen& h) {
  g.validate();
  h.validate();
  for (const auto* a : {&g, &h})
    if (7 % a->order() != 0) throw ActionError("action '" + a->name + "' does not have order 7");
  if (!(g.then(h) == h.then(g))) throw ActionError("actions '" + g.name + "' and '" + h.name + "' do not commute");
  if (!embed_root(f, RootOfUnity::zeta7(1))) throw ActionError("field " + f.name() + " lacks zeta_7");
}

}  // namespace detail

/// Splits span(space) by the joint eigenvalues (zeta_7^i, zeta_7^j) of
/// (g, h). The forms in `space` must be linearly independent and their span
/// must be stable under both actions.
template <Field F>
std::map<WeightPair, std::vector<MultiPoly<F>>> weight_decompose(const std::vector<MultiPoly<F>>& space,
                                                                 const ActionGen& g, const ActionGen& h) {
  std::map<WeightPair, std::vector<MultiPoly<F>>> out;
  if (space.empty()) return out;
  const F& fld = space.front().field();
  detail::check_torus(fld, g, h);
  for (const auto& p : space)
    if (p.nvars() != g.size()) throw ActionError("form and action have different numbers of coordinates");

  // Diagonal actions on weight vectors: read weights off the monomials.
  if (g.is_diagonal() && h.is_diagonal()) {
    bool pure = true;
    std::map<WeightPair, std::vector<MultiPoly<F>>> fast;
    for (const auto& p : space) {
      auto a = diagonal_weight(g, p), b = diagonal_weight(h, p);
      if (!a || !b) {
        pure = false;
        break;
      }
      fast[WeightPair(detail::order7_exponent(*a, "weight"), detail::order7_exponent(*b, "weight"))].push_back(p);
    }
    if (pure) {
      // Distinct weight spaces are independent, so it suffices to check
      // each block.
      std::map<Monomial, std::size_t> idx;
      for (const auto& p : space)
        for (const auto& [m, c] : p.terms()) idx.emplace(m, idx.size());
      for (const auto& [w, v] : fast) {
        alg::Matrix<F> mtx(fld, 0, idx.size());
        for (const auto& p : v) {
          std::vector<typename F::Element> row(idx.size(), fld.zero());
          for (const auto& [m, c] : p.terms()) row[idx.at(m)] = c;
          mtx.append_row(row);
        }
        if (alg::rank(mtx) != v.size()) throw ActionError("forms are linearly dependent");
      }
      return fast;
    }
  }

  const std::size_t n = space.size();
  std::vector<MultiPoly<F>> gs, hs;
  for (const auto& p : space) {
    gs.push_back(act_on_form(g, p));
    hs.push_back(act_on_form(h, p));
  }
  std::map<Monomial, std::size_t> idx;
  auto index_terms = [&](const std::vector<MultiPoly<F>>& v) {
    for (const auto& p : v)
      for (const auto& [m, c] : p.terms()) idx.emplace(m, idx.size());
  };
  index_terms(space);
  index_terms(gs);
  index_terms(hs);
  const std::size_t width = idx.size();
  auto vec = [&](const MultiPoly<F>& p) {
    std::vector<typename F::Element> row(width, fld.zero());
    for (const auto& [m, c] : p.terms()) row[idx.at(m)] = c;
    return row;
  };

  alg::Matrix<F> base(fld, 0, width);
  for (const auto& p : space) base.append_row(vec(p));
  if (alg::rank(base) != n) throw ActionError("forms are linearly dependent");
  for (const auto* imgs : {&gs, &hs}) {
    alg::Matrix<F> ext = base;
    for (const auto& p : *imgs) ext.append_row(vec(p));
    if (alg::rank(ext) != n) throw ActionError("span of the forms is not stable under the actions");
  }
  for (std::size_t k = 0; k < n; ++k)
    if (!(act_on_form(h, gs[k]) == act_on_form(g, hs[k]))) throw ActionError("actions do not commute on the forms");

  std::vector<typename F::Element> zeta(7);
  for (int i = 0; i < 7; ++i) zeta[static_cast<std::size_t>(i)] = require_root(fld, RootOfUnity::zeta7(i));

  std::size_t total = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      // Columns: coefficient vectors of (g - z^i) f_k stacked over (h - z^j) f_k.
      alg::Matrix<F> sys(fld, 2 * width, n);
      for (std::size_t k = 0; k < n; ++k) {
        auto a = vec(gs[k] - space[k].scaled(zeta[static_cast<std::size_t>(i)]));
        auto b = vec(hs[k] - space[k].scaled(zeta[static_cast<std::size_t>(j)]));
        for (std::size_t r = 0; r < width; ++r) {
          sys(r, k) = a[r];
          sys(width + r, k) = b[r];
        }
      }
      auto ker = alg::kernel(sys);
      if (ker.empty()) continue;
      auto& block = out[WeightPair(i, j)];
      for (const auto& x : ker) {
        auto p = MultiPoly<F>::constant(fld, g.size(), fld.zero());
        for (std::size_t k = 0; k < n; ++k)
          if (!fld.is_zero(x[k])) p = p + space[k].scaled(x[k]);
        block.push_back(std::move(p));
      }
      total += ker.size();
    }
  if (total != n) throw ActionError("actions are not diagonalizable on the forms over " + fld.name());
  return out;
}

}  // namespace coverforge::equiv
