#pragma once

// Elementary number theory over word-size primes plus the bridges between
// QQ(w) and GF(p): reduction with a chosen square root of -7, Chinese
// remaindering and rational reconstruction.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coverforge/exactalg/fields.hpp"

namespace coverforge::alg {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Smallest generator of GF(p)^*.
inline std::uint32_t primitive_root(const PrimeField& f) {
  auto factors = prime_factors(f.p - 1);
  for (std::uint32_t g = 2; g < f.p; ++g) {
    bool ok = true;
    for (auto q : factors) {
      if (f.pow(g, (f.p - 1) / q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // p == 2
}

/// The canonical primitive n-th root of unity: g^((p-1)/n) for the smallest
/// primitive root g. Requires n | p-1.
inline std::uint32_t root_of_unity(const PrimeField& f, std::uint32_t n) {
  if ((f.p - 1) % n != 0)
    throw ArithmeticError("GF(" + std::to_string(f.p) + ") has no primitive " +
                          std::to_string(n) + "-th root of unity");
  return f.pow(primitive_root(f), (f.p - 1) / n);
}

/// All square roots of a in GF(p), ascending.
inline std::vector<std::uint32_t> square_roots(const PrimeField& f, std::uint32_t a) {
  a %= f.p;
  if (a == 0) return {0};
  if (f.p == 2) return {a};
  if (f.pow(a, (f.p - 1) / 2) != 1) return {};
  // Tonelli-Shanks
  std::uint64_t q = f.p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::uint32_t z = 2;
  while (f.pow(z, (f.p - 1) / 2) != f.p - 1) ++z;
  std::uint32_t m = s;
  std::uint32_t c = f.pow(z, q);
  std::uint32_t t = f.pow(a, q);
  std::uint32_t r = f.pow(a, (q + 1) / 2);
  while (t != 1) {
    std::uint32_t i = 0;
    std::uint32_t tt = t;
    while (tt != 1) {
      tt = f.mul(tt, tt);
      ++i;
    }
    std::uint32_t b = c;
    for (std::uint32_t k = 0; k + 1 < m - i; ++k) b = f.mul(b, b);
    m = i;
    c = f.mul(b, b);
    t = f.mul(t, c);
    r = f.mul(r, b);
  }
  std::uint32_t r2 = f.neg(r);
  if (r2 < r) std::swap(r, r2);
  return {r, r2};
}

/// The two square roots of -7 mod p, ascending; empty if -7 is a non-residue.
inline std::vector<std::uint32_t> sqrt_minus7(const PrimeField& f) {
  return square_roots(f, f.from_int(-7));
}

/// Smallest prime p >= start with p = 1 (mod m).
inline std::uint32_t next_prime_congruent_one(std::uint32_t start, std::uint32_t m) {
  for (std::uint64_t p = start;; ++p)
    if (p % m == 1 && is_prime(p)) return static_cast<std::uint32_t>(p);
}

/// Ring homomorphism QQ(w) -> GF(p), w -> root. The root must satisfy
/// root^2 = -7 (mod p).
struct QuadReduction {
  PrimeField target;
  std::uint32_t root = 0;

  QuadReduction(PrimeField f, std::uint32_t r) : target(f), root(r % f.p) {
    if (target.mul(root, root) != target.from_int(-7))
      throw ArithmeticError("root " + std::to_string(r) + " is not a square root of -7 mod " +
                            std::to_string(f.p));
  }
  std::uint32_t operator()(const QuadElement& x) const {
    return target.add(target.from_rational(x.a), target.mul(target.from_rational(x.b), root));
  }
};

/// Field homomorphism QQ(zeta_7) -> GF(p) sending zeta_7 to a chosen
/// primitive 7th root of unity.
struct CycloReduction {
  PrimeField target;
  std::uint32_t zeta = 0;

  CycloReduction(PrimeField f, std::uint32_t z) : target(f), zeta(z % f.p) {
    if (zeta == 1 || target.pow(zeta, 7) != 1)
      throw ArithmeticError("not a primitive 7th root of unity mod " + std::to_string(f.p));
  }
  std::uint32_t operator()(const CycloElement& x) const {
    std::uint32_t acc = 0;
    std::uint32_t zp = 1;
    for (int i = 0; i < 6; ++i) {
      acc = target.add(acc, target.mul(target.from_rational(x.c[i]), zp));
      zp = target.mul(zp, zeta);
    }
    return acc;
  }
};

/// Symmetric CRT accumulator: combine residues one prime at a time.
struct CrtAccumulator {
  Integer value = 0;
  Integer modulus = 1;

  void add(std::uint32_t residue, std::uint32_t p) {
    // value + modulus * k = residue (mod p)
    PrimeField f(p);
    std::uint32_t cur = f.from_integer(value);
    std::uint32_t mod = f.from_integer(modulus);
    std::uint32_t k = f.div(f.sub(residue % p, cur), mod);
    value += modulus * k;
    modulus *= p;
  }
};

/// Wang's rational reconstruction: find n/d = a (mod m) with |n|, d below
/// sqrt(m/2). Returns nullopt when no such fraction exists.
inline std::optional<Rational> rational_reconstruct(const Integer& a, const Integer& m) {
  Integer r0 = m, r1 = a % m;
  if (r1 < 0) r1 += m;
  Integer t0 = 0, t1 = 1;
  Integer half = m / 2;
  Integer bound = boost::multiprecision::sqrt(half);
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  if (gcd(r1, t1) != 1) return std::nullopt;
  if (t1 < 0) {
    t1 = -t1;
    r1 = -r1;
  }
  Rational out(r1, t1);
  return out;
}

/// One modular image of a QQ(w) quantity: its value mod p under w -> root.
struct QuadImage {
  std::uint32_t prime;
  std::uint32_t root;
  std::uint32_t value;
};

/// Recover a + b*w from images at (p, r) and (p, -r) pairs over several
/// primes. Each prime must contribute both conjugate roots.
inline std::optional<QuadElement> reconstruct_quadratic(const std::vector<QuadImage>& images) {
  CrtAccumulator ca, cb;
  std::vector<std::uint32_t> seen;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& x = images[i];
    bool done = false;
    for (auto p : seen)
      if (p == x.prime) done = true;
    if (done) continue;
    const QuadImage* partner = nullptr;
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      if (images[j].prime == x.prime && images[j].root != x.root) partner = &images[j];
    }
    if (!partner) return std::nullopt;
    PrimeField f(x.prime);
    if (f.add(x.root, partner->root) != 0) return std::nullopt;
    // v1 = a + b r, v2 = a - b r
    std::uint32_t two_inv = f.inv(2);
    std::uint32_t a = f.mul(f.add(x.value, partner->value), two_inv);
    std::uint32_t b = f.div(f.sub(x.value, partner->value), f.mul(2, x.root));
    ca.add(a, x.prime);
    cb.add(b, x.prime);
    seen.push_back(x.prime);
  }
  auto a = rational_reconstruct(ca.value, ca.modulus);
  auto b = rational_reconstruct(cb.value, cb.modulus);
  if (!a || !b) return std::nullopt;
  return QuadElement{*a, *b};
}

}  // namespace coverforge::alg
