#pragma once

// Representations of D14 x C7 on the canonical sections of Z: weight
// bookkeeping for the symbols r_{i,j}, the generator actions t1..t4 on
// them, and the regular-representation search that pins down the second
// weight a.
//
// Conventions: t2 generates C7 in D14 (weight i), t3 generates {1} x C7
// (weight j), t1 is the reflection in D14, t4 has order 3 and sends
// weight (i, j) to (4i, 2j).

#include <array>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "coverforge/equivariant/action.hpp"
#include "coverforge/exactalg/matrix.hpp"
#include "coverforge/fpgroup/word.hpp"

namespace coverforge::equiv {

inline int mod7(long x) { return static_cast<int>(((x % 7) + 7) % 7); }

struct WeightPair {
  int i = 0;
  int j = 0;
  WeightPair() = default;
  WeightPair(long a, long b) : i(mod7(a)), j(mod7(b)) {}
  WeightPair operator+(WeightPair o) const { return {i + o.i, j + o.j}; }
  WeightPair c3() const { return {4 * i, 2 * j}; }
  WeightPair reflect() const { return {-i, j}; }
  bool operator==(const WeightPair&) const = default;
  auto operator<=>(const WeightPair&) const = default;
};

struct SectionSymbol {
  std::string name;
  WeightPair weight;
  int parity = 0;  // -1 for r_{0,0} (negated by t1), 0 where t1 swaps symbols
};

/// First index written as 0, 1, 2, 4 or its negative; r_{-4,2} is spelled
/// rm4_2 so that names stay valid variable names.
inline std::string symbol_name(WeightPair w) {
  bool neg = w.i == 3 || w.i == 5 || w.i == 6;
  return "r" + std::string(neg ? "m" : "") + std::to_string(neg ? 7 - w.i : w.i) + "_" + std::to_string(w.j);
}

/// The thirteen symbols in the order (r_{0,0}, r_{1,1}, r_{-1,1}, r_{4,2},
/// r_{-4,2}, r_{2,4}, r_{-2,4}, r_{1,a}, r_{-1,a}, ...).
inline std::vector<SectionSymbol> canonical_symbols(int a) {
  std::vector<SectionSymbol> out{{symbol_name({0, 0}), {0, 0}, -1}};
  for (int y : {1, a}) {
    WeightPair w{1, y};
    for (int k = 0; k < 3; ++k) {
      out.push_back({symbol_name(w), w, 0});
      out.push_back({symbol_name(w.reflect()), w.reflect(), 0});
      w = w.c3();
    }
  }
  std::set<WeightPair> seen;
  for (const auto& s : out)
    if (!seen.insert(s.weight).second) throw ActionError("second weight a=" + std::to_string(a) + " repeats a weight");
  return out;
}

/// Actions of t1..t4 on the symbol coordinates (named "t1".."t4").
inline std::vector<ActionGen> symbol_actions(const std::vector<SectionSymbol>& syms) {
  auto find = [&](WeightPair w) {
    for (std::size_t k = 0; k < syms.size(); ++k)
      if (syms[k].weight == w) return k;
    throw ActionError("symbol set is not closed under the group action");
  };
  const std::size_t n = syms.size();
  ActionGen t1{"t1", {}, {}}, t2{"t2", {}, {}}, t3{"t3", {}, {}}, t4{"t4", {}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    const auto& w = syms[k].weight;
    t1.target.push_back(find(w.reflect()));
    t1.scalar.push_back(syms[k].parity < 0 ? RootOfUnity::minus_one() : RootOfUnity::one());
    t2.target.push_back(k);
    t2.scalar.push_back(RootOfUnity::zeta7(w.i));
    t3.target.push_back(k);
    t3.scalar.push_back(RootOfUnity::zeta7(w.j));
    t4.target.push_back(find(w.c3()));
    t4.scalar.push_back(RootOfUnity::one());
  }
  return {t1, t2, t3, t4};
}

/// Evaluate a group word (over generators named like the actions) on
/// actions, applying letters from the left.
inline ActionGen word_action(const group::Word& w, const std::vector<ActionGen>& gens) {
  if (gens.empty()) throw ActionError("no generators");
  ActionGen r = ActionGen::identity(gens[0].size());
  for (const auto& l : w.letters()) r = r.then(gens.at(static_cast<std::size_t>(l.gen)).pow(l.exp));
  return r;
}

/// Relators of `pres` that fail on the actions (empty when all hold).
inline std::vector<std::size_t> failing_relators(const group::FpPresentation& pres, const std::vector<ActionGen>& gens) {
  std::vector<std::size_t> bad;
  ActionGen id = ActionGen::identity(gens.at(0).size());
  for (std::size_t k = 0; k < pres.relators.size(); ++k)
    if (!(word_action(pres.relators[k], gens) == id)) bad.push_back(k);
  return bad;
}

/// Matrix of g on linear forms: column i is the image c_i X_{t_i} of X_i.
template <Field F>
alg::Matrix<F> action_matrix(const ActionGen& g, const F& field) {
  alg::Matrix<F> m(field, g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i) m(g.target[i], i) = require_root(field, g.scalar[i]);
  return m;
}

/// Relators of `pres` whose matrix product is not the identity. Letters act
/// from the left, so a word l1 l2 ... ln has matrix M(ln) ... M(l1).
template <Field F>
std::vector<std::size_t> failing_relators_as_matrices(const group::FpPresentation& pres,
                                                      const std::vector<ActionGen>& gens, const F& field) {
  const std::size_t n = gens.at(0).size();
  std::vector<alg::Matrix<F>> fwd, inv;
  for (const auto& g : gens) {
    fwd.push_back(action_matrix(g, field));
    inv.push_back(action_matrix(g.inverse(), field));
    if (!(fwd.back() * inv.back() == alg::Matrix<F>::identity(field, n)))
      throw ActionError("internal: inverse matrix of '" + g.name + "' is wrong");
  }
  std::vector<std::size_t> bad;
  const auto id = alg::Matrix<F>::identity(field, n);
  for (std::size_t k = 0; k < pres.relators.size(); ++k) {
    auto m = id;
    for (const auto& l : pres.relators[k].letters()) {
      const auto& step = l.exp > 0 ? fwd.at(static_cast<std::size_t>(l.gen)) : inv.at(static_cast<std::size_t>(l.gen));
      for (long e = 0; e < (l.exp > 0 ? l.exp : -l.exp); ++e) m = step * m;
    }
    if (!(m == id)) bad.push_back(k);
  }
  return bad;
}

/// Irreducible representations of D14 x C7: V_{+,y}, V_{-,y} (dimension
/// 1) and V_{k,y} for k in {1,2,4} (dimension 2).
struct RepLabel {
  enum Kind { Plus, Minus, Two };
  Kind kind = Plus;
  int k = 0;  // 1, 2 or 4 when kind == Two
  int y = 0;

  static RepLabel plus(int y) { return {Plus, 0, mod7(y)}; }
  static RepLabel minus(int y) { return {Minus, 0, mod7(y)}; }
  static RepLabel two(int k, int y) {
    int kk = mod7(k);
    if (kk == 3 || kk == 5 || kk == 6) kk = mod7(-kk);
    if (kk != 1 && kk != 2 && kk != 4) throw ActionError("two-dimensional labels need k in {1,2,4}");
    return {Two, kk, mod7(y)};
  }
  int dim() const { return kind == Two ? 2 : 1; }
  RepLabel c3() const { return kind == Two ? two(4 * k, 2 * y) : RepLabel{kind, 0, mod7(2 * y)}; }
  std::string str() const {
    std::string head = kind == Plus ? "+" : kind == Minus ? "-" : std::to_string(k);
    return "V_{" + head + "," + std::to_string(y) + "}";
  }
  bool operator==(const RepLabel&) const = default;
  auto operator<=>(const RepLabel&) const = default;
};

namespace detail {

// Character values live in ZZ[zeta_7], stored as 7 integer coefficients of
// 1, z, ..., z^6 (not reduced; x is zero iff all coefficients agree).
using CharValue = std::array<long, 7>;

inline CharValue char_zero() { return CharValue{}; }
inline CharValue char_root(int e) {
  CharValue v{};
  v[static_cast<std::size_t>(mod7(e))] = 1;
  return v;
}
inline void char_add(CharValue& a, const CharValue& b, long scale = 1) {
  for (std::size_t i = 0; i < 7; ++i) a[i] += scale * b[i];
}
inline bool char_equals_int(const CharValue& v, long n) {
  // v - n = 0  <=>  (v0 - n) = v1 = ... = v6
  long base = v[1];
  if (v[0] - n != base) return false;
  for (std::size_t i = 2; i < 7; ++i)
    if (v[i] != base) return false;
  return true;
}

// Element c^m s^e u^q of D14 x C7 (c rotation, s reflection, u generator of C7).
inline CharValue character(const RepLabel& L, int m, int e, int q) {
  CharValue out{};
  CharValue twist = char_root(L.y * q);
  switch (L.kind) {
    case RepLabel::Plus:
      return twist;
    case RepLabel::Minus:
      char_add(out, twist, e ? -1 : 1);
      return out;
    case RepLabel::Two:
      if (e) return out;
      // (z^{km} + z^{-km}) z^{yq}
      out = char_zero();
      char_add(out, char_root(L.k * m + L.y * q));
      char_add(out, char_root(-L.k * m + L.y * q));
      return out;
  }
  return out;
}

}  // namespace detail

/// Does labels + (one trivial summand) restrict to the regular
/// representation of D14 = D14 x {1} and of C14 = C2 x ({1} x C7)?
inline bool regular_rep_check(const std::vector<RepLabel>& labels) {
  int dim = 1;
  for (const auto& L : labels) dim += L.dim();
  if (dim != 14) throw ActionError("labels plus the trivial summand must have dimension 14, got " + std::to_string(dim));
  auto total = [&](int m, int e, int q) {
    detail::CharValue v = detail::char_root(0);  // trivial summand
    for (const auto& L : labels) detail::char_add(v, detail::character(L, m, e, q));
    return v;
  };
  // D14: c^m s^e with q = 0.
  for (int e = 0; e < 2; ++e)
    for (int m = 0; m < 7; ++m)
      if (!detail::char_equals_int(total(m, e, 0), (m == 0 && e == 0) ? 14 : 0)) return false;
  // C14: s^e u^q with m = 0.
  for (int e = 0; e < 2; ++e)
    for (int q = 0; q < 7; ++q)
      if (!detail::char_equals_int(total(0, e, q), (q == 0 && e == 0) ? 14 : 0)) return false;
  return true;
}

/// Decomposition V_{-,0} + V_{1,1} + V_{4,2} + V_{2,4} + V_{1,a} + V_{4,2a} + V_{2,4a}.
inline std::vector<RepLabel> decomposition_for(int a) {
  std::vector<RepLabel> out{RepLabel::minus(0)};
  for (int y : {1, a}) {
    RepLabel L = RepLabel::two(1, y);
    for (int k = 0; k < 3; ++k) {
      out.push_back(L);
      L = L.c3();
    }
  }
  return out;
}

struct AdmissibleOptions {
  /// Identify a with a^-1 (re-choosing the generator of {1} x C7 swaps the
  /// two V_1 blocks), keeping the smaller representative.
  bool identify_inverse = false;
};

struct AdmissibleResult {
  std::set<int> values;
  std::size_t candidates = 0;      // labelings examined
  std::size_t regular = 0;         // passing both regularity checks
  std::size_t c3_closed = 0;       // also closed under the C3 conjugation
};

/// Search all labelings of a 13-dimensional space (one one-dimensional and
/// six two-dimensional irreducibles) for those that, with a trivial
/// summand, are regular for D14 and C14 and are closed under C3; normalize
/// the generator of {1} x C7 so that a V_1 block is V_{1,1} and report the
/// weight of the other V_1 block.
inline AdmissibleResult lefschetz_admissible_a(const AdmissibleOptions& opts = {}) {
  AdmissibleResult res;
  std::vector<RepLabel> ones;
  for (int y = 0; y < 7; ++y) {
    ones.push_back(RepLabel::plus(y));
    ones.push_back(RepLabel::minus(y));
  }
  std::vector<RepLabel> twos;
  for (int k : {1, 2, 4})
    for (int y = 0; y < 7; ++y) twos.push_back(RepLabel::two(k, y));

  // Multisets of six two-dimensional labels, pruned by the necessary
  // condition that no C14 character (the pair (+,y),(-,y) of V_{k,y})
  // occurs twice, i.e. the y's are distinct.
  std::vector<RepLabel> pick;
  std::vector<bool> used_y(7, false);
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == 6) {
      for (const auto& one : ones) {
        ++res.candidates;
        std::vector<RepLabel> labels{one};
        labels.insert(labels.end(), pick.begin(), pick.end());
        if (!regular_rep_check(labels)) continue;
        ++res.regular;
        std::multiset<RepLabel> ms(labels.begin(), labels.end()), image;
        for (const auto& L : labels) image.insert(L.c3());
        if (ms != image) continue;
        ++res.c3_closed;
        std::vector<int> v1;
        for (const auto& L : labels)
          if (L.kind == RepLabel::Two && L.k == 1) v1.push_back(L.y);
        for (std::size_t first = 0; first < v1.size(); ++first) {
          // Rescale y by the inverse of v1[first] so that block becomes V_{1,1}.
          int inv = 1;
          while (mod7(inv * v1[first]) != 1) ++inv;
          for (std::size_t other = 0; other < v1.size(); ++other) {
            if (other == first) continue;
            int a = mod7(v1[other] * inv);
            if (opts.identify_inverse) {
              int ainv = 1;
              while (mod7(ainv * a) != 1) ++ainv;
              a = std::min(a, ainv);
            }
            res.values.insert(a);
          }
        }
      }
      return;
    }
    for (std::size_t t = from; t < twos.size(); ++t) {
      if (used_y[static_cast<std::size_t>(twos[t].y)]) continue;
      used_y[static_cast<std::size_t>(twos[t].y)] = true;
      pick.push_back(twos[t]);
      rec(t + 1);
      pick.pop_back();
      used_y[static_cast<std::size_t>(twos[t].y)] = false;
    }
  };
  rec(0);
  return res;
}

}  // namespace coverforge::equiv
