#pragma once

// Jacobian criterion modulo p. The singular locus of an equidimensional
// projective scheme V(I) of dimension d in P^{n-1} is cut out by I and the
// (n-1-d)-minors of the Jacobian; it is empty iff that ideal has Hilbert
// polynomial 0.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "coverforge/verify/groebner.hpp"
#include "coverforge/verify/hilbert.hpp"

namespace coverforge::verify {

/// Determinant of a square matrix of polynomials (expansion over column
/// subsets, 2^k k products).
inline FpPoly poly_determinant(const std::vector<std::vector<FpPoly>>& m) {
  const std::size_t k = m.size();
  if (k == 0) throw VerifyError("determinant of an empty matrix");
  const auto& f = m[0][0].field();
  const std::size_t n = m[0][0].nvars();
  if (k > 20) throw VerifyError("determinant size too large");
  // dets[S] = det of rows 0..|S|-1 restricted to the columns in S
  std::vector<FpPoly> dets(std::size_t{1} << k, FpPoly(f, n));
  dets[0] = FpPoly::constant(f, n, f.one());
  for (std::size_t s = 1; s < dets.size(); ++s) {
    std::size_t row = static_cast<std::size_t>(__builtin_popcountll(s)) - 1;
    FpPoly acc(f, n);
    for (std::size_t c = 0; c < k; ++c) {
      if (!(s >> c & 1)) continue;
      // Expansion along the last row; the sign is the parity of the number
      // of columns of S after c.
      std::size_t after = static_cast<std::size_t>(__builtin_popcountll(s >> (c + 1)));
      const auto& sub = dets[s & ~(std::size_t{1} << c)];
      if (!sub.is_zero() && !m[row][c].is_zero()) {
        FpPoly term = sub * m[row][c];
        acc = after % 2 ? acc - term : acc + term;
      }
    }
    dets[s] = std::move(acc);
  }
  return dets.back();
}

inline std::vector<std::vector<FpPoly>> jacobian(const std::vector<FpPoly>& ideal) {
  std::vector<std::vector<FpPoly>> j;
  for (const auto& g : ideal) j.push_back(alg::gradient(g));
  return j;
}

inline alg::Integer binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  alg::Integer b = 1;
  for (std::size_t i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

/// All k-minors of a polynomial matrix.
inline std::vector<FpPoly> all_minors(const std::vector<std::vector<FpPoly>>& mat, std::size_t k) {
  std::vector<FpPoly> out;
  const std::size_t rows = mat.size(), cols = rows ? mat[0].size() : 0;
  if (k == 0 || k > rows || k > cols) return out;
  std::vector<std::size_t> r(k), c(k);
  auto first = [](std::vector<std::size_t>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  };
  auto next = [](std::vector<std::size_t>& v, std::size_t n) {
    std::size_t i = v.size();
    while (i-- > 0) {
      if (v[i] < n - v.size() + i) {
        ++v[i];
        for (std::size_t j = i + 1; j < v.size(); ++j) v[j] = v[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  first(r);
  do {
    first(c);
    do {
      std::vector<std::vector<FpPoly>> sub(k, std::vector<FpPoly>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub[i][j] = mat[r[i]][c[j]];
      auto d = poly_determinant(sub);
      if (!d.is_zero()) out.push_back(std::move(d));
    } while (next(c, cols));
  } while (next(r, rows));
  return out;
}

struct SmoothnessOptions {
  int expected_dimension = -1;     // required: projective dimension of V(I)
  std::size_t max_minors = 2000;   // above this, use random compressions
  std::size_t random_rounds = 6;
  std::uint64_t seed = 1;
  GbOptions gb;
};

struct SmoothnessReport {
  std::uint32_t prime = 0;
  int model_dimension = -1;         // computed from the Hilbert polynomial of I
  bool dimension_matches = false;   // false signals a non-equidimensional warning
  bool exhaustive = false;          // all minors used (verdict exact both ways)
  bool smooth = false;
  bool conclusive = false;
  int singular_dimension = -1;      // exact when exhaustive, else an upper bound
  std::size_t minors_used = 0;
  std::string method;
};

/// I plus the codim-sized minors of the Jacobian (all of them).
inline std::vector<FpPoly> singular_locus_ideal(const std::vector<FpPoly>& ideal, int expected_dimension) {
  if (ideal.empty()) throw VerifyError("empty ideal");
  int codim = static_cast<int>(ideal.front().nvars()) - 1 - expected_dimension;
  if (codim < 0) throw VerifyError("expected dimension exceeds the ambient dimension");
  auto out = ideal;
  auto minors = all_minors(jacobian(ideal), static_cast<std::size_t>(codim));
  out.insert(out.end(), minors.begin(), minors.end());
  return out;
}

inline SmoothnessReport smoothness_check_mod_p(const std::vector<FpPoly>& ideal, const SmoothnessOptions& opts) {
  if (ideal.empty()) throw VerifyError("empty ideal");
  if (opts.expected_dimension < 0) throw VerifyError("smoothness check needs the expected dimension");
  const auto& f = ideal.front().field();
  const std::size_t n = ideal.front().nvars();
  SmoothnessReport rep;
  rep.prime = f.p;
  auto gb = groebner_basis(ideal, opts.gb);
  if (!gb.complete()) throw VerifyError("Groebner basis of the model timed out");
  auto hd = hilbert_polynomial(gb);
  rep.model_dimension = hd.dimension();
  rep.dimension_matches = rep.model_dimension == opts.expected_dimension;
  int codim = static_cast<int>(n) - 1 - opts.expected_dimension;
  if (codim < 0) throw VerifyError("expected dimension exceeds the ambient dimension");
  auto jac = jacobian(ideal);
  auto count = binomial(ideal.size(), static_cast<std::size_t>(codim)) * binomial(n, static_cast<std::size_t>(codim));
  auto sing_dim = [&](const std::vector<FpPoly>& gens) {
    auto g = groebner_basis(gens, opts.gb);
    if (!g.complete()) throw VerifyError("Groebner basis of the singular locus timed out");
    return hilbert_polynomial(g).dimension();
  };
  if (count <= opts.max_minors) {
    auto minors = all_minors(jac, static_cast<std::size_t>(codim));
    rep.minors_used = minors.size();
    auto gens = ideal;
    gens.insert(gens.end(), minors.begin(), minors.end());
    rep.singular_dimension = sing_dim(gens);
    rep.exhaustive = true;
    rep.conclusive = true;
    rep.smooth = rep.singular_dimension < 0;
    rep.method = "all " + std::to_string(codim) + "-minors of the Jacobian";
    return rep;
  }
  // Minors of random compressions A * J * B also vanish on the singular
  // locus, so an empty intersection still certifies smoothness.
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::uint32_t> coef(0, f.p - 1);
  auto gens = ideal;
  rep.method = "minors of random " + std::to_string(codim) + "x" + std::to_string(codim) + " compressions";
  for (std::size_t round = 0; round < opts.random_rounds; ++round) {
    std::vector<std::vector<FpPoly>> aj(static_cast<std::size_t>(codim), std::vector<FpPoly>(n, FpPoly(f, n)));
    for (auto& row : aj) {
      for (std::size_t r = 0; r < ideal.size(); ++r) {
        auto a = coef(rng);
        if (!a) continue;
        for (std::size_t c = 0; c < n; ++c) row[c] += jac[r][c].scaled(a);
      }
    }
    std::vector<std::vector<FpPoly>> sq(static_cast<std::size_t>(codim),
                                        std::vector<FpPoly>(static_cast<std::size_t>(codim), FpPoly(f, n)));
    for (std::size_t c = 0; c < static_cast<std::size_t>(codim); ++c)
      for (std::size_t v = 0; v < n; ++v) {
        auto b = coef(rng);
        if (!b) continue;
        for (std::size_t r = 0; r < static_cast<std::size_t>(codim); ++r) sq[r][c] += aj[r][v].scaled(b);
      }
    auto d = poly_determinant(sq);
    if (d.is_zero()) continue;
    gens.push_back(std::move(d));
    ++rep.minors_used;
    rep.singular_dimension = sing_dim(gens);
    if (rep.singular_dimension < 0) {
      rep.smooth = true;
      rep.conclusive = true;
      return rep;
    }
  }
  rep.smooth = false;
  rep.conclusive = false;
  return rep;
}

}  // namespace coverforge::verify
