#pragma once

// Exact coefficient fields: QQ, QQ(w) with w^2 = -7, QQ(zeta_7) and GF(p).
//
// Every field is a small value type carrying whatever context it needs (the
// prime for GF(p)); elements are plain values. Generic code takes a field
// object and calls its arithmetic methods, so a polynomial or matrix never
// needs to know which concrete field it lives over.

#include <array>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace coverforge::alg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Integer& n) { return n.str(); }

inline std::string to_string(const Rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

template <class F>
concept Field = requires(const F& f, const typename F::Element& a,
                         const typename F::Element& b, long long n,
                         const Rational& q) {
  typename F::Element;
  { f.zero() } -> std::same_as<typename F::Element>;
  { f.one() } -> std::same_as<typename F::Element>;
  { f.from_int(n) } -> std::same_as<typename F::Element>;
  { f.from_rational(q) } -> std::same_as<typename F::Element>;
  { f.add(a, b) } -> std::same_as<typename F::Element>;
  { f.sub(a, b) } -> std::same_as<typename F::Element>;
  { f.mul(a, b) } -> std::same_as<typename F::Element>;
  { f.neg(a) } -> std::same_as<typename F::Element>;
  { f.inv(a) } -> std::same_as<typename F::Element>;
  { f.div(a, b) } -> std::same_as<typename F::Element>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.equal(a, b) } -> std::same_as<bool>;
  { f.format(a) } -> std::same_as<std::string>;
  { f.name() } -> std::same_as<std::string>;
};

/// The rational numbers.
struct RationalField {
  using Element = Rational;

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long n) const { return n; }
  Element from_rational(const Rational& q) const { return q; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const {
    if (a == 0) throw ArithmeticError("division by zero in QQ");
    return Rational(1) / a;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool is_zero(const Element& a) const { return a == 0; }
  bool equal(const Element& a, const Element& b) const { return a == b; }
  std::string format(const Element& a) const { return to_string(a); }
  std::string name() const { return "QQ"; }
  bool operator==(const RationalField&) const = default;
};

/// a + b*w with w^2 = -7.
struct QuadElement {
  Rational a;
  Rational b;
  bool operator==(const QuadElement&) const = default;
};

/// QQ(sqrt(-7)). The generator is printed as `w`.
struct QuadraticField {
  using Element = QuadElement;
  static constexpr long long kSquare = -7;

  Element zero() const { return {0, 0}; }
  Element one() const { return {1, 0}; }
  Element gen() const { return {0, 1}; }
  Element from_int(long long n) const { return {n, 0}; }
  Element from_rational(const Rational& q) const { return {q, 0}; }
  Element add(const Element& x, const Element& y) const { return {x.a + y.a, x.b + y.b}; }
  Element sub(const Element& x, const Element& y) const { return {x.a - y.a, x.b - y.b}; }
  Element mul(const Element& x, const Element& y) const {
    return {x.a * y.a + kSquare * x.b * y.b, x.a * y.b + x.b * y.a};
  }
  Element neg(const Element& x) const { return {-x.a, -x.b}; }
  Element conj(const Element& x) const { return {x.a, -x.b}; }
  /// a^2 + 7 b^2
  Rational norm(const Element& x) const { return x.a * x.a - kSquare * x.b * x.b; }
  Element inv(const Element& x) const {
    Rational n = norm(x);
    if (n == 0) throw ArithmeticError("division by zero in QQ(w)");
    return {x.a / n, -x.b / n};
  }
  Element div(const Element& x, const Element& y) const { return mul(x, inv(y)); }
  bool is_zero(const Element& x) const { return x.a == 0 && x.b == 0; }
  bool equal(const Element& x, const Element& y) const { return x == y; }
  std::string format(const Element& x) const {
    if (x.b == 0) return to_string(x.a);
    std::string wpart = (x.b == 1) ? "w" : (x.b == -1 ? "-w" : to_string(x.b) + "*w");
    if (x.a == 0) return wpart;
    std::string s = to_string(x.a);
    if (wpart[0] != '-') s += "+";
    return "(" + s + wpart + ")";
  }
  std::string name() const { return "QQ(w)"; }
  bool operator==(const QuadraticField&) const = default;
};

/// Element of QQ(zeta_7) in the power basis 1, z, ..., z^5.
struct CycloElement {
  std::array<Rational, 6> c{};
  bool operator==(const CycloElement&) const = default;
};

/// QQ(zeta_7), reduced modulo the 7th cyclotomic polynomial.
struct CyclotomicField {
  using Element = CycloElement;

  Element zero() const { return {}; }
  Element one() const {
    Element e;
    e.c[0] = 1;
    return e;
  }
  Element from_int(long long n) const {
    Element e;
    e.c[0] = n;
    return e;
  }
  Element from_rational(const Rational& q) const {
    Element e;
    e.c[0] = q;
    return e;
  }
  /// zeta_7^k for any integer k.
  Element zeta(long long k) const {
    int r = static_cast<int>(((k % 7) + 7) % 7);
    Element e;
    if (r < 6) {
      e.c[r] = 1;
    } else {
      for (auto& x : e.c) x = -1;
    }
    return e;
  }
  Element add(const Element& x, const Element& y) const {
    Element e;
    for (int i = 0; i < 6; ++i) e.c[i] = x.c[i] + y.c[i];
    return e;
  }
  Element sub(const Element& x, const Element& y) const {
    Element e;
    for (int i = 0; i < 6; ++i) e.c[i] = x.c[i] - y.c[i];
    return e;
  }
  Element neg(const Element& x) const {
    Element e;
    for (int i = 0; i < 6; ++i) e.c[i] = -x.c[i];
    return e;
  }
  Element mul(const Element& x, const Element& y) const {
    std::array<Rational, 11> prod{};
    for (int i = 0; i < 6; ++i) {
      if (x.c[i] == 0) continue;
      for (int j = 0; j < 6; ++j) prod[i + j] += x.c[i] * y.c[j];
    }
    // z^7 = 1 folds degrees 7..10 down, then z^6 = -(1 + ... + z^5).
    for (int k = 10; k >= 7; --k) {
      prod[k - 7] += prod[k];
      prod[k] = 0;
    }
    Element e;
    for (int i = 0; i < 6; ++i) e.c[i] = prod[i] - prod[6];
    return e;
  }
  Element inv(const Element& x) const;
  Element div(const Element& x, const Element& y) const { return mul(x, inv(y)); }
  bool is_zero(const Element& x) const {
    for (const auto& v : x.c)
      if (v != 0) return false;
    return true;
  }
  bool equal(const Element& x, const Element& y) const { return x == y; }
  std::string format(const Element& x) const {
    std::string s;
    for (int i = 0; i < 6; ++i) {
      if (x.c[i] == 0) continue;
      std::string coef = to_string(x.c[i]);
      if (!s.empty() && coef[0] != '-') s += "+";
      if (i == 0) {
        s += coef;
      } else {
        if (x.c[i] == 1) {
        } else if (x.c[i] == -1) {
          s += "-";
        } else {
          s += coef + "*";
        }
        s += (i == 1) ? std::string("z7") : "z7^" + std::to_string(i);
      }
    }
    return s.empty() ? "0" : "(" + s + ")";
  }
  std::string name() const { return "QQ(z7)"; }
  bool operator==(const CyclotomicField&) const = default;
};

inline CycloElement CyclotomicField::inv(const CycloElement& x) const {
  if (is_zero(x)) throw ArithmeticError("division by zero in QQ(z7)");
  // Solve (multiplication-by-x matrix) * y = e_0 over QQ.
  std::array<std::array<Rational, 7>, 6> m{};
  for (int j = 0; j < 6; ++j) {
    Element col = mul(x, zeta(j));
    for (int i = 0; i < 6; ++i) m[i][j] = col.c[i];
  }
  m[0][6] = 1;
  for (int col = 0; col < 6; ++col) {
    int piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    Rational p = m[col][col];
    for (auto& v : m[col]) v /= p;
    for (int r = 0; r < 6; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (int c = col; c < 7; ++c) m[r][c] -= f * m[col][c];
    }
  }
  Element y;
  for (int i = 0; i < 6; ++i) y.c[i] = m[i][6];
  return y;
}

/// GF(p) for an odd prime p < 2^31.
struct PrimeField {
  using Element = std::uint32_t;
  std::uint32_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (prime < 2 || prime >= (1u << 31)) throw ArithmeticError("prime out of range");
  }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(long long n) const {
    long long r = n % static_cast<long long>(p);
    return static_cast<Element>(r < 0 ? r + p : r);
  }
  Element from_integer(const Integer& n) const {
    Integer r = n % p;
    if (r < 0) r += p;
    return static_cast<Element>(r);
  }
  Element from_rational(const Rational& q) const {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    Element d = from_integer(denominator(q));
    if (d == 0) throw ArithmeticError("denominator divisible by p=" + std::to_string(p));
    return mul(from_integer(numerator(q)), inv(d));
  }
  Element add(Element a, Element b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Element>(s >= p ? s - p : s);
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p - b; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((std::uint64_t(a) * b) % p);
  }
  Element neg(Element a) const { return a == 0 ? 0 : p - a; }
  Element pow(Element a, std::uint64_t e) const {
    Element r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Element inv(Element a) const {
    if (a == 0) throw ArithmeticError("division by zero in GF(" + std::to_string(p) + ")");
    long long t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      long long q = r / nr;
      long long tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return from_int(t);
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool is_zero(Element a) const { return a == 0; }
  bool equal(Element a, Element b) const { return a == b; }
  std::string format(Element a) const { return std::to_string(a); }
  std::string name() const { return "GF(" + std::to_string(p) + ")"; }
  bool operator==(const PrimeField&) const = default;
};

template <class F>
inline constexpr bool is_prime_field_v = std::is_same_v<F, PrimeField>;

/// Repeated squaring in any field; negative exponents invert.
template <Field F>
typename F::Element power(const F& f, typename F::Element a, long long e) {
  if (e < 0) {
    a = f.inv(a);
    e = -e;
  }
  auto r = f.one();
  while (e) {
    if (e & 1) r = f.mul(r, a);
    a = f.mul(a, a);
    e >>= 1;
  }
  return r;
}

static_assert(Field<RationalField>);
static_assert(Field<QuadraticField>);
static_assert(Field<CyclotomicField>);
static_assert(Field<PrimeField>);

}  // namespace coverforge::alg
