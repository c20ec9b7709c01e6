#pragma once

// Finite quotients from coset actions, derived subgroups, and checks that a
// finite quotient realizes a given presentation.

#include <string>
#include <vector>

#include "coverforge/fpgroup/perm.hpp"
#include "coverforge/fpgroup/rewrite.hpp"

namespace coverforge::group {

struct FiniteQuotient {
  std::size_t degree = 0;
  std::vector<Perm> generator_images;
  alg::Integer order = 0;

  Perm image(const Word& w) const { return perm_of_word(w, generator_images, degree); }

  /// Permutation group generated by the images of some words.
  PermGroup subgroup(const std::vector<Word>& words) const {
    std::vector<Perm> gens;
    for (const auto& w : words) gens.push_back(image(w));
    return PermGroup(degree, std::move(gens));
  }

  bool is_abelian() const { return PermGroup(degree, generator_images).is_abelian(); }
};

/// The permutation action of the ambient generators on the cosets. Every
/// relator is checked to act trivially.
inline FiniteQuotient coset_action_quotient(const CosetTable& table, const FpPresentation& pres) {
  table.require_complete();
  if (table.generators() != pres.rank()) throw GroupError("coset table does not match the presentation");
  FiniteQuotient q;
  q.degree = table.index();
  for (std::size_t g = 0; g < pres.rank(); ++g) {
    Perm p(q.degree);
    for (std::size_t c = 0; c < q.degree; ++c) p[c] = static_cast<std::uint32_t>(table(c, 2 * g));
    q.generator_images.push_back(std::move(p));
  }
  for (const auto& r : pres.relators)
    if (!perm_is_identity(q.image(r))) throw GroupError("internal: relator acts nontrivially on cosets");
  q.order = PermGroup(q.degree, q.generator_images).order();
  return q;
}

/// Commutator subgroup of `sub`, as the normal closure (in the ambient
/// group) of the commutators of its Schreier generators. `table` is the
/// coset table of `sub`. The normal closure equals the derived subgroup
/// whenever the latter is normal in the ambient group; use
/// derived_subgroup_generators for a description that does not assume it.
inline SubgroupSpec derived_subgroup_spec(const FpPresentation& pres, const SubgroupSpec& sub, const CosetTable& table) {
  (void)sub;
  SubgroupPresentation sp(pres, table);
  const auto& s = sp.schreier_words();
  SubgroupSpec out;
  out.mode = ClosureMode::NormalClosure;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      Word c = commutator(s[i], s[j]);
      if (!c.empty()) out.generators.push_back(std::move(c));
    }
  return out;
}

/// Generators (as ambient words, as-given mode) of the commutator subgroup
/// of a finite-index subgroup with finite abelianization. The derived
/// subgroup is enumerated inside the Reidemeister-Schreier presentation of
/// `sub`, where it is normal, and its Schreier generators are mapped back.
inline SubgroupSpec derived_subgroup_generators(const FpPresentation& pres, const CosetTable& table,
                                                const EnumerationOptions& opts = {}) {
  SubgroupPresentation sp(pres, table);
  const FpPresentation& h = sp.presentation();
  SubgroupSpec inner;
  inner.mode = ClosureMode::NormalClosure;
  for (std::size_t i = 0; i < h.rank(); ++i)
    for (std::size_t j = i + 1; j < h.rank(); ++j)
      inner.generators.push_back(commutator(Word::generator(static_cast<int>(i)), Word::generator(static_cast<int>(j))));
  auto inner_table = coset_enumerate(h, inner, opts);
  if (!inner_table.complete()) throw GroupError("enumeration of the derived subgroup overflowed");
  SubgroupPresentation dp(h, inner_table);
  SubgroupSpec out;
  for (const auto& w : dp.schreier_words()) {
    Word a = sp.to_ambient(w);
    if (!a.empty()) out.generators.push_back(std::move(a));
  }
  return out;
}

/// Rewrite an as-given subgroup of the ambient group into the Schreier
/// generators of a larger subgroup `sp`. Throws if some generator does not
/// lie in it.
inline SubgroupSpec rewrite_spec(const SubgroupPresentation& sp, const SubgroupSpec& s) {
  if (s.mode != ClosureMode::AsGiven || !s.normal_words.empty())
    throw GroupError("only as-given subgroups can be rewritten into a subgroup presentation");
  SubgroupSpec out;
  for (const auto& w : s.generators) out.generators.push_back(sp.rewrite(w));
  return out;
}

struct QuotientCheck {
  bool relators_hold = false;
  bool generates = false;
  alg::Integer quotient_order = 0;
  alg::Integer image_order = 0;
  alg::Integer target_order = 0;  // 0 if the target enumeration overflowed

  bool passed() const { return relators_hold && generates && target_order == quotient_order; }
};

/// Does the quotient realize `target` via the given image words (one per
/// target generator, written in the quotient's source generators)?
inline QuotientCheck verify_quotient_presentation(const FiniteQuotient& q, const FpPresentation& target,
                                                  const std::vector<Word>& images,
                                                  const EnumerationOptions& opts = {}) {
  target.validate();
  if (images.size() != target.rank()) throw GroupError("need one image word per target generator");
  std::vector<Perm> perms;
  for (const auto& w : images) perms.push_back(q.image(w));
  QuotientCheck out;
  out.quotient_order = q.order;
  out.relators_hold = true;
  for (const auto& r : target.relators)
    if (!perm_is_identity(perm_of_word(r, perms, q.degree))) out.relators_hold = false;
  out.image_order = PermGroup(q.degree, perms).order();
  out.generates = out.image_order == q.order;
  auto t = coset_enumerate(target, SubgroupSpec{}, opts);
  if (t.complete()) out.target_order = t.index();
  return out;
}

}  // namespace coverforge::group
