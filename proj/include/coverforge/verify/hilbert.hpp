#pragma once

// Hilbert series, function and polynomial of S/I for a homogeneous ideal I,
// read off the leading-term ideal of a Groebner basis.

#include <string>
#include <vector>

#include "coverforge/exactalg/fields.hpp"
#include "coverforge/verify/groebner.hpp"

namespace coverforge::verify {

using alg::Integer;
using alg::Rational;

/// Polynomial in one variable with integer coefficients, lowest degree first.
using IntSeries = std::vector<Integer>;

namespace detail {

inline void trim(IntSeries& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline IntSeries series_add(IntSeries a, const IntSeries& b, unsigned shift = 0) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
  trim(a);
  return a;
}

inline IntSeries series_mul(const IntSeries& a, const IntSeries& b) {
  if (a.empty() || b.empty()) return {};
  IntSeries r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

inline IntSeries one_minus_t_pow(unsigned d) {
  IntSeries r(d + 1, 0);
  r[0] += 1;
  r[d] -= 1;
  trim(r);
  return r;
}

inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (auto& m : gens) {
    bool redundant = false;
    for (const auto& k : out)
      if (k.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(std::move(m));
  }
  return out;
}

/// Numerator N with HS(S/I) = N(t) / (1-t)^n.
inline IntSeries hilbert_numerator(std::vector<Monomial> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  bool coprime = true;
  for (std::size_t i = 0; i < gens.size() && coprime; ++i)
    for (std::size_t j = i + 1; j < gens.size() && coprime; ++j)
      if (!gens[i].coprime(gens[j])) coprime = false;
  if (coprime) {
    IntSeries r{1};
    for (const auto& g : gens) r = series_mul(r, one_minus_t_pow(g.degree()));
    return r;
  }
  // Pivot on the variable occurring in the most generators.
  const std::size_t n = gens.front().size();
  std::size_t best = 0, best_count = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t c = 0;
    for (const auto& g : gens) c += g[v] > 0;
    if (c > best_count) {
      best = v;
      best_count = c;
    }
  }
  unsigned e = ~0u;
  for (const auto& g : gens)
    if (g[best] > 0) e = std::min<unsigned>(e, g[best]);
  Monomial p = Monomial::variable(n, best, e);
  // HS(S/I) = HS(S/(I + p)) + t^deg(p) HS(S/(I : p))
  std::vector<Monomial> plus = gens, colon;
  plus.push_back(p);
  for (const auto& g : gens) {
    Monomial q = g;
    q[best] = static_cast<std::uint16_t>(g[best] > e ? g[best] - e : 0);
    colon.push_back(std::move(q));
  }
  return series_add(hilbert_numerator(std::move(plus)), hilbert_numerator(std::move(colon)), e);
}

}  // namespace detail

/// Polynomial in m with rational coefficients, lowest degree first.
using RatPoly = std::vector<Rational>;

inline Rational eval(const RatPoly& p, const Rational& m) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * m + p[i];
  return acc;
}

inline std::string format_polynomial(const RatPoly& p, const std::string& var = "m") {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    Rational c = p[i];
    if (c == 0) continue;
    bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string cs = alg::to_string(c);
    if (i == 0) {
      out += cs;
    } else {
      if (c != 1) out += cs + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

struct HilbertData {
  std::size_t nvars = 0;
  IntSeries numerator;      // HS = numerator / (1-t)^nvars
  IntSeries reduced;        // HS = reduced / (1-t)^krull_dim
  int krull_dim = 0;        // of S/I
  RatPoly polynomial;       // Hilbert polynomial in m
  std::vector<Integer> function;  // h(0..cutoff)
  int regularity = 0;       // h(m) = polynomial(m) for all m >= regularity

  /// Projective dimension; -1 for the empty scheme.
  int dimension() const { return krull_dim - 1; }
  Integer degree() const {
    if (krull_dim == 0) return 0;
    Integer s = 0;
    for (const auto& c : reduced) s += c;
    return s;
  }
  std::string polynomial_string() const { return format_polynomial(polynomial); }
};

inline Integer hilbert_function_value(const HilbertData& h, long m) {
  if (m < 0) return 0;
  Integer acc = 0;
  for (std::size_t i = 0; i < h.reduced.size(); ++i) {
    long k = m - static_cast<long>(i);
    if (k < 0) break;
    if (h.krull_dim == 0) {
      if (k == 0) acc += h.reduced[i];
      continue;
    }
    // binom(k + d - 1, d - 1)
    Integer b = 1;
    for (int j = 1; j < h.krull_dim; ++j) b = b * (k + j) / j;
    acc += h.reduced[i] * b;
  }
  return acc;
}

inline HilbertData hilbert_from_leading_terms(const std::vector<Monomial>& lead, std::size_t nvars,
                                              unsigned cutoff = 10) {
  HilbertData h;
  h.nvars = nvars;
  h.numerator = detail::hilbert_numerator(lead);
  IntSeries q = h.numerator;
  int k = 0;
  auto at_one = [](const IntSeries& s) {
    Integer a = 0;
    for (const auto& c : s) a += c;
    return a;
  };
  while (!q.empty() && at_one(q) == 0) {
    // divide by (1 - t): quotient coefficients are partial sums
    IntSeries r(q.size() - 1, 0);
    Integer run = 0;
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
      run += q[i];
      r[i] = run;
    }
    detail::trim(r);
    q = std::move(r);
    ++k;
  }
  h.reduced = q;
  h.krull_dim = q.empty() ? 0 : static_cast<int>(nvars) - k;
  const int d = h.krull_dim;
  // HP(m) = sum_i q_i binom(m - i + d - 1, d - 1)
  h.polynomial.clear();
  if (d > 0) {
    h.polynomial.assign(static_cast<std::size_t>(d), Rational(0));
    Integer fact = 1;
    for (int j = 1; j < d; ++j) fact *= j;
    for (std::size_t i = 0; i < q.size(); ++i) {
      // prod_{j=1}^{d-1} (m - i + j) / (d-1)!
      RatPoly term{Rational(1)};
      for (int j = 1; j < d; ++j) {
        Rational shift(static_cast<long>(j) - static_cast<long>(i));
        RatPoly next(term.size() + 1, Rational(0));
        for (std::size_t a = 0; a < term.size(); ++a) {
          next[a] += term[a] * shift;
          next[a + 1] += term[a];
        }
        term = std::move(next);
      }
      for (std::size_t a = 0; a < term.size(); ++a) h.polynomial[a] += term[a] * Rational(q[i]) / Rational(fact);
    }
    while (!h.polynomial.empty() && h.polynomial.back() == 0) h.polynomial.pop_back();
  }
  h.regularity = std::max(0, static_cast<int>(q.size()) - d);
  for (unsigned m = 0; m <= cutoff; ++m) h.function.push_back(hilbert_function_value(h, m));
  return h;
}

/// Hilbert data of S/I for I generated by a homogeneous Groebner basis.
inline HilbertData hilbert_polynomial(const GroebnerBasis& gb, unsigned cutoff = 10) {
  if (!gb.input_homogeneous()) throw VerifyError("Hilbert polynomial requires a homogeneous ideal");
  if (!gb.complete()) throw VerifyError("Groebner basis computation did not finish");
  return hilbert_from_leading_terms(gb.leading_monomials(), gb.nvars(), cutoff);
}

}  // namespace coverforge::verify
