#pragma once

// Reidemeister-Schreier rewriting, abelian invariants, and best-effort
// Tietze simplification.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "coverforge/exactalg/snf.hpp"
#include "coverforge/fpgroup/coset_enum.hpp"

namespace coverforge::group {

/// Presentation of a finite-index subgroup on Schreier generators, with the
/// data needed to rewrite ambient words that lie in the subgroup.
class SubgroupPresentation {
 public:
  SubgroupPresentation(const FpPresentation& ambient, const CosetTable& table) : table_(table) {
    table.require_complete();
    if (table.generators() != ambient.rank()) throw GroupError("coset table does not match the presentation");
    const std::size_t n = table.index(), k = ambient.rank();

    // Breadth-first spanning tree from coset 0.
    reps_.assign(n, Word());
    tree_.assign(n * k, false);
    std::vector<bool> seen(n, false);
    std::vector<int> queue{0};
    seen[0] = true;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int c = queue[q];
      for (std::size_t x = 0; x < 2 * k; ++x) {
        int d = table(static_cast<std::size_t>(c), x);
        if (seen[static_cast<std::size_t>(d)]) continue;
        seen[static_cast<std::size_t>(d)] = true;
        queue.push_back(d);
        int g = static_cast<int>(x / 2);
        if (x % 2 == 0) {
          reps_[static_cast<std::size_t>(d)] = reps_[static_cast<std::size_t>(c)] * Word::generator(g);
          tree_[static_cast<std::size_t>(c) * k + static_cast<std::size_t>(g)] = true;
        } else {
          reps_[static_cast<std::size_t>(d)] = reps_[static_cast<std::size_t>(c)] * Word::generator(g, -1);
          tree_[static_cast<std::size_t>(d) * k + static_cast<std::size_t>(g)] = true;
        }
      }
    }

    // Every non-tree edge (c, g) is a Schreier generator rep(c) g rep(c.g)^-1.
    gen_of_.assign(n * k, -1);
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t g = 0; g < k; ++g) {
        if (tree_[c * k + g]) continue;
        int d = table(c, 2 * g);
        gen_of_[c * k + g] = static_cast<int>(schreier_words_.size());
        schreier_words_.push_back(reps_[c] * Word::generator(static_cast<int>(g)) * reps_[static_cast<std::size_t>(d)].inverse());
        presentation_.generators.push_back("s" + std::to_string(schreier_words_.size()));
      }
    }

    for (std::size_t c = 0; c < n; ++c)
      for (const auto& r : ambient.relators) presentation_.relators.push_back(rewrite_from(static_cast<int>(c), r).first);
  }

  const FpPresentation& presentation() const { return presentation_; }
  /// Ambient word of each Schreier generator, in generator order.
  const std::vector<Word>& schreier_words() const { return schreier_words_; }
  /// Coset representatives (spanning-tree words).
  const std::vector<Word>& representatives() const { return reps_; }

  /// Express an ambient word lying in the subgroup in Schreier generators.
  Word rewrite(const Word& w) const {
    auto [out, end] = rewrite_from(0, w);
    if (end != 0) throw GroupError("word does not lie in the subgroup");
    return out;
  }

  /// Map a word in Schreier generators back to the ambient group.
  Word to_ambient(const Word& w) const {
    Word out;
    for (const auto& l : w.letters()) {
      if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= schreier_words_.size()) throw GroupError("not a Schreier generator");
      out = out * schreier_words_[static_cast<std::size_t>(l.gen)].pow(l.exp);
    }
    return out;
  }

 private:
  std::pair<Word, int> rewrite_from(int c, const Word& w) const {
    const std::size_t k = table_.generators();
    std::vector<Letter> letters;
    for (int letter : w.expanded()) {
      if (letter > 0) {
        std::size_t g = static_cast<std::size_t>(letter - 1);
        int s = gen_of_[static_cast<std::size_t>(c) * k + g];
        if (s >= 0) letters.push_back({s, 1});
        c = table_(static_cast<std::size_t>(c), 2 * g);
      } else {
        std::size_t g = static_cast<std::size_t>(-letter - 1);
        int d = table_(static_cast<std::size_t>(c), 2 * g + 1);
        int s = gen_of_[static_cast<std::size_t>(d) * k + g];
        if (s >= 0) letters.push_back({s, -1});
        c = d;
      }
    }
    return {Word(std::move(letters)), c};
  }

  CosetTable table_;
  std::vector<Word> reps_;
  std::vector<bool> tree_;
  std::vector<int> gen_of_;
  std::vector<Word> schreier_words_;
  FpPresentation presentation_;
};

inline SubgroupPresentation subgroup_presentation(const FpPresentation& pres, const CosetTable& table) {
  return SubgroupPresentation(pres, table);
}

struct AbelianInvariants {
  std::vector<alg::Integer> torsion;  // d1 | d2 | ..., each > 1
  std::size_t free_rank = 0;

  bool finite() const { return free_rank == 0; }
  bool operator==(const AbelianInvariants&) const = default;
};

inline std::string format_invariants(const AbelianInvariants& inv) {
  std::string out = "[";
  for (std::size_t i = 0; i < inv.torsion.size(); ++i) out += (i ? ", " : "") + inv.torsion[i].str();
  out += "]";
  if (inv.free_rank) out += " + Z^" + std::to_string(inv.free_rank);
  return out;
}

/// Abelian invariants from the Smith normal form of the exponent-sum matrix.
inline AbelianInvariants abelian_invariants(const FpPresentation& pres) {
  const std::size_t k = pres.rank();
  alg::IntMatrix m;
  for (const auto& r : pres.relators) {
    std::vector<alg::Integer> row(k, 0);
    for (const auto& l : r.letters()) row[static_cast<std::size_t>(l.gen)] += l.exp;
    if (std::any_of(row.begin(), row.end(), [](const alg::Integer& x) { return x != 0; })) m.push_back(std::move(row));
  }
  AbelianInvariants out;
  std::size_t rank = 0;
  if (!m.empty() && k > 0) {
    auto snf = alg::smith_normal_form(m);
    for (const auto& d : snf.diagonal) {
      if (d == 0) continue;
      ++rank;
      if (d > 1) out.torsion.push_back(d);
    }
  }
  out.free_rank = k - rank;
  return out;
}

/// Best-effort Tietze simplification: drops trivial and duplicate relators
/// and eliminates a generator whenever some relator of length at most
/// `max_length` contains it exactly once. Never changes the group.
inline FpPresentation simplify_presentation(FpPresentation pres, long max_length = 30) {
  auto cyclic_key = [](const Word& w) {
    auto e = w.expanded();
    std::vector<int> best = e;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t s = 0; s < e.size(); ++s) {
        std::vector<int> rot(e.begin() + static_cast<long>(s), e.end());
        rot.insert(rot.end(), e.begin(), e.begin() + static_cast<long>(s));
        best = std::min(best, rot);
      }
      std::reverse(e.begin(), e.end());
      for (auto& x : e) x = -x;
    }
    return best;
  };
  auto cyclically_reduced = [](Word w) {
    while (w.syllables() >= 2 && w.letters().front().gen == w.letters().back().gen) {
      Word head = Word::generator(w.letters().front().gen, w.letters().front().exp);
      w = head.inverse() * w * head;
    }
    return w;
  };
  for (;;) {
    std::set<std::vector<int>> seen;
    std::vector<Word> rels;
    for (auto& r : pres.relators) {
      Word c = cyclically_reduced(r);
      if (c.empty()) continue;
      if (seen.insert(cyclic_key(c)).second) rels.push_back(c);
    }
    pres.relators = rels;

    // Find an eliminable generator in the shortest suitable relator.
    int best_rel = -1, best_gen = -1;
    long best_len = max_length + 1;
    for (std::size_t i = 0; i < pres.relators.size(); ++i) {
      const Word& r = pres.relators[i];
      if (r.length() >= best_len) continue;
      std::map<int, long> count;
      for (const auto& l : r.letters()) count[l.gen] += l.exp < 0 ? -l.exp : l.exp;
      for (const auto& [g, c] : count) {
        if (c == 1) {
          best_rel = static_cast<int>(i);
          best_gen = g;
          best_len = r.length();
          break;
        }
      }
    }
    if (best_rel < 0) return pres;

    // r = u g^e v with e = +-1, so g = (v u)^(-e).
    const Word& r = pres.relators[static_cast<std::size_t>(best_rel)];
    std::vector<Letter> u, v;
    long e = 0;
    bool after = false;
    for (const auto& l : r.letters()) {
      if (l.gen == best_gen) {
        e = l.exp;
        after = true;
      } else {
        (after ? v : u).push_back(l);
      }
    }
    Word value = (Word(v) * Word(u)).pow(-e);
    // Substitute and renumber the remaining generators.
    std::vector<Word> images;
    FpPresentation next;
    for (std::size_t g = 0; g < pres.rank(); ++g) {
      if (static_cast<int>(g) == best_gen) {
        images.push_back({});
        continue;
      }
      images.push_back(Word::generator(static_cast<int>(next.generators.size())));
      next.generators.push_back(pres.generators[g]);
    }
    auto substitute = [&](const Word& w) {
      Word out;
      for (const auto& l : w.letters()) {
        if (l.gen == best_gen) {
          Word img;
          for (const auto& vl : value.letters()) img = img * images[static_cast<std::size_t>(vl.gen)].pow(vl.exp);
          out = out * img.pow(l.exp);
        } else {
          out = out * images[static_cast<std::size_t>(l.gen)].pow(l.exp);
        }
      }
      return out;
    };
    for (std::size_t i = 0; i < pres.relators.size(); ++i)
      if (static_cast<int>(i) != best_rel) next.relators.push_back(substitute(pres.relators[i]));
    pres = std::move(next);
  }
}

}  // namespace coverforge::group
