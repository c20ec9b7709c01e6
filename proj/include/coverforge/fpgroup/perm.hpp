#pragma once

// Permutations and permutation-group orders (deterministic Schreier-Sims).
//
// Points are 0-based. Products follow the right-action convention used by
// coset tables: (a * b)(p) = b(a(p)), so a word evaluates letter by letter
// from the left.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "coverforge/exactalg/fields.hpp"
#include "coverforge/fpgroup/word.hpp"

namespace coverforge::group {

using Perm = std::vector<std::uint32_t>;

inline Perm perm_identity(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

inline bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

inline Perm perm_mul(const Perm& a, const Perm& b) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

inline Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<std::uint32_t>(i);
  return r;
}

inline bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

/// Evaluate a word on generator images.
inline Perm perm_of_word(const Word& w, const std::vector<Perm>& images, std::size_t degree) {
  Perm r = perm_identity(degree);
  for (const auto& l : w.letters()) {
    if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= images.size()) throw GroupError("word uses a generator with no image");
    const Perm& g = images[static_cast<std::size_t>(l.gen)];
    Perm step = l.exp > 0 ? g : perm_inverse(g);
    long n = l.exp < 0 ? -l.exp : l.exp;
    for (long k = 0; k < n; ++k) r = perm_mul(r, step);
  }
  return r;
}

/// Base and strong generating set of a permutation group.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators) : n_(degree), gens_(std::move(generators)) {
    for (const auto& g : gens_)
      if (g.size() != n_ || !is_permutation(g)) throw GroupError("invalid permutation generator");
    build();
  }

  std::size_t degree() const { return n_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<std::uint32_t>& base() const { return base_; }

  alg::Integer order() const {
    alg::Integer r = 1;
    for (const auto& lvl : levels_) r *= static_cast<unsigned>(lvl.orbit.size());
    return r;
  }

  bool contains(const Perm& g) const {
    if (g.size() != n_) return false;
    auto [h, level] = strip(g, 0);
    return level == levels_.size() && perm_is_identity(h);
  }

  bool is_abelian() const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      for (std::size_t j = i + 1; j < gens_.size(); ++j)
        if (perm_mul(gens_[i], gens_[j]) != perm_mul(gens_[j], gens_[i])) return false;
    return true;
  }

 private:
  struct Level {
    std::uint32_t point = 0;
    std::vector<Perm> strong;           // generators fixing all earlier base points
    std::vector<std::uint32_t> orbit;   // orbit of `point`
    std::vector<int> where;             // point -> index in orbit, -1 if absent
    std::vector<Perm> transversal;      // transversal[k] maps point to orbit[k]
  };

  void recompute_orbit(Level& lvl) const {
    lvl.orbit.assign(1, lvl.point);
    lvl.where.assign(n_, -1);
    lvl.where[lvl.point] = 0;
    lvl.transversal.assign(1, perm_identity(n_));
    for (std::size_t k = 0; k < lvl.orbit.size(); ++k) {
      for (const auto& s : lvl.strong) {
        std::uint32_t img = s[lvl.orbit[k]];
        if (lvl.where[img] >= 0) continue;
        lvl.where[img] = static_cast<int>(lvl.orbit.size());
        lvl.orbit.push_back(img);
        lvl.transversal.push_back(perm_mul(lvl.transversal[k], s));
      }
    }
  }

  // Sift g through levels from `from`; returns the residue and the level at
  // which sifting stopped (levels_.size() if it passed every level).
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const Level& lvl = levels_[i];
      int k = lvl.where[g[lvl.point]];
      if (k < 0) return {g, i};
      g = perm_mul(g, perm_inverse(lvl.transversal[static_cast<std::size_t>(k)]));
    }
    return {g, levels_.size()};
  }

  std::uint32_t moved_point(const Perm& g) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (g[i] != i) return static_cast<std::uint32_t>(i);
    throw GroupError("internal: identity has no moved point");
  }

  void add_level(const Perm& g) {
    Level lvl;
    lvl.point = moved_point(g);
    base_.push_back(lvl.point);
    levels_.push_back(std::move(lvl));
  }

  void build() {
    for (const auto& g : gens_) {
      if (perm_is_identity(g)) continue;
      bool fixes_base = true;
      for (auto b : base_)
        if (g[b] != b) fixes_base = false;
      if (fixes_base) add_level(g);
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      for (const auto& g : gens_) {
        bool fixes = !perm_is_identity(g);
        for (std::size_t j = 0; j < i && fixes; ++j)
          if (g[base_[j]] != base_[j]) fixes = false;
        if (fixes) levels_[i].strong.push_back(g);
      }
      recompute_orbit(levels_[i]);
    }
    if (levels_.empty()) return;
    std::size_t i = levels_.size();
    while (i-- > 0) {
    restart:
      bool changed = false;
      Level& lvl = levels_[i];
      for (std::size_t k = 0; !changed && k < lvl.orbit.size(); ++k) {
        for (std::size_t si = 0; !changed && si < lvl.strong.size(); ++si) {
          const Perm& s = lvl.strong[si];
          std::uint32_t img = s[lvl.orbit[k]];
          Perm h = perm_mul(perm_mul(lvl.transversal[k], s),
                            perm_inverse(lvl.transversal[static_cast<std::size_t>(lvl.where[img])]));
          if (perm_is_identity(h)) continue;
          auto [y, j] = strip(h, i + 1);
          if (j == levels_.size() && perm_is_identity(y)) continue;
          if (j == levels_.size()) add_level(y);
          for (std::size_t l = i + 1; l <= j; ++l) {
            levels_[l].strong.push_back(y);
            recompute_orbit(levels_[l]);
          }
          i = j;
          changed = true;
        }
      }
      if (changed) goto restart;
    }
  }

  std::size_t n_;
  std::vector<Perm> gens_;
  std::vector<std::uint32_t> base_;
  std::vector<Level> levels_;
};

}  // namespace coverforge::group
