#pragma once

// Dense univariate polynomials over GF(p), lowest degree first, and their
// roots in GF(p) (distinct-degree split against x^p - x, then random
// equal-degree splitting).

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "coverforge/exactalg/fields.hpp"

namespace coverforge::alg {

using UniPoly = std::vector<std::uint32_t>;

inline void uni_trim(UniPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int uni_degree(const UniPoly& a) { return static_cast<int>(a.size()) - 1; }

inline UniPoly uni_sub(const PrimeField& f, UniPoly a, const UniPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  uni_trim(a);
  return a;
}

inline UniPoly uni_mul(const PrimeField& f, const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  uni_trim(r);
  return r;
}

/// a = q b + r with deg r < deg b.
inline void uni_divmod(const PrimeField& f, UniPoly a, const UniPoly& b, UniPoly& q, UniPoly& r) {
  if (b.empty()) throw ArithmeticError("polynomial division by zero");
  uni_trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  auto inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    auto c = f.mul(a.back(), inv);
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = f.sub(a[i + shift], f.mul(c, b[i]));
    uni_trim(a);
  }
  r = std::move(a);
}

inline UniPoly uni_mod(const PrimeField& f, const UniPoly& a, const UniPoly& b) {
  UniPoly q, r;
  uni_divmod(f, a, b, q, r);
  return r;
}

inline UniPoly uni_monic(const PrimeField& f, UniPoly a) {
  uni_trim(a);
  if (a.empty()) return a;
  auto inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

inline UniPoly uni_gcd(const PrimeField& f, UniPoly a, UniPoly b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    auto r = uni_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return uni_monic(f, a);
}

/// base^e mod m.
inline UniPoly uni_powmod(const PrimeField& f, UniPoly base, std::uint64_t e, const UniPoly& m) {
  UniPoly r{1};
  r = uni_mod(f, r, m);
  base = uni_mod(f, base, m);
  while (e) {
    if (e & 1) r = uni_mod(f, uni_mul(f, r, base), m);
    base = uni_mod(f, uni_mul(f, base, base), m);
    e >>= 1;
  }
  return r;
}

inline std::uint32_t uni_eval(const PrimeField& f, const UniPoly& a, std::uint32_t x) {
  std::uint32_t acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = f.add(f.mul(acc, x), a[i]);
  return acc;
}

/// Distinct roots of a in GF(p), sorted. The zero polynomial has no finite
/// root set and is rejected.
inline std::vector<std::uint32_t> uni_roots(const PrimeField& f, UniPoly a, std::uint64_t seed = 1) {
  uni_trim(a);
  if (a.empty()) throw ArithmeticError("roots of the zero polynomial");
  std::vector<std::uint32_t> out;
  if (a.size() == 1) return out;
  a = uni_monic(f, a);
  if (f.p == 2) {
    for (std::uint32_t x = 0; x < 2; ++x)
      if (uni_eval(f, a, x) == 0) out.push_back(x);
    return out;
  }
  // g = gcd(a, x^p - x) is the product of the distinct linear factors.
  auto xp = uni_powmod(f, UniPoly{0, 1}, f.p, a);
  auto g = uni_gcd(f, a, uni_sub(f, xp, UniPoly{0, 1}));
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, f.p - 1);
  std::vector<UniPoly> stack{g};
  while (!stack.empty()) {
    auto h = std::move(stack.back());
    stack.pop_back();
    if (uni_degree(h) <= 0) continue;
    if (uni_degree(h) == 1) {
      out.push_back(f.neg(f.mul(h[0], f.inv(h[1]))));
      continue;
    }
    // (x + c)^((p-1)/2) - 1 separates roots by quadratic character of x + c.
    for (;;) {
      auto t = uni_powmod(f, UniPoly{pick(rng), 1}, (f.p - 1) / 2, h);
      auto d = uni_gcd(f, h, uni_sub(f, t, UniPoly{1}));
      if (uni_degree(d) > 0 && uni_degree(d) < uni_degree(h)) {
        UniPoly q, r;
        uni_divmod(f, h, d, q, r);
        stack.push_back(std::move(d));
        stack.push_back(uni_monic(f, q));
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace coverforge::alg
