#pragma once

// Reduction of QQ(w) polynomials modulo a prime, with the choices of
// sqrt(-7) and of roots of unity recorded alongside.

#include <optional>
#include <string>

#include "coverforge/exactalg/modular.hpp"
#include "coverforge/exactalg/poly.hpp"

namespace coverforge::alg {

/// A prime together with the images chosen for w = sqrt(-7) and, where the
/// prime allows, for zeta_3 and zeta_7.
struct ModularEmbedding {
  PrimeField field;
  std::uint32_t root = 0;
  std::optional<std::uint32_t> zeta3;
  std::optional<std::uint32_t> zeta7;

  /// The first square root (ascending) unless `root_index` picks the other.
  static ModularEmbedding standard(std::uint32_t p, int root_index = 0) {
    if (!is_prime(p)) throw ArithmeticError(std::to_string(p) + " is not prime");
    PrimeField f(p);
    auto roots = sqrt_minus7(f);
    if (roots.empty()) throw ArithmeticError("-7 is not a square mod " + std::to_string(p));
    ModularEmbedding e{f, roots.at(static_cast<std::size_t>(root_index) % roots.size()), {}, {}};
    if ((p - 1) % 3 == 0) e.zeta3 = root_of_unity(f, 3);
    if ((p - 1) % 7 == 0) e.zeta7 = root_of_unity(f, 7);
    return e;
  }

  void validate() const {
    QuadReduction(field, root);
    if (zeta3 && (*zeta3 == 1 || field.pow(*zeta3, 3) != 1)) throw ArithmeticError("invalid cube root of unity");
    if (zeta7 && (*zeta7 == 1 || field.pow(*zeta7, 7) != 1)) throw ArithmeticError("invalid 7th root of unity");
  }

  std::string describe() const {
    std::string s = "p=" + std::to_string(field.p) + " w->" + std::to_string(root);
    if (zeta3) s += " z3->" + std::to_string(*zeta3);
    if (zeta7) s += " z7->" + std::to_string(*zeta7);
    return s;
  }
};

inline MultiPoly<PrimeField> reduce_mod_p(const MultiPoly<QuadraticField>& f, const ModularEmbedding& e) {
  QuadReduction red(e.field, e.root);
  return f.map_coefficients(e.field, [&](const QuadElement& c) { return red(c); });
}

inline MultiPoly<PrimeField> reduce_mod_p(const MultiPoly<RationalField>& f, const PrimeField& p) {
  return f.map_coefficients(p, [&](const Rational& c) { return p.from_rational(c); });
}

}  // namespace coverforge::alg
