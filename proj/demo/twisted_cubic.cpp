// Recover the twisted cubic from sampled points over GF(43), then check its
// Hilbert polynomial and smoothness.

#include <iostream>

#include "coverforge/cover/interpolate.hpp"
#include "coverforge/verify/hilbert.hpp"
#include "coverforge/verify/smoothness.hpp"

int main() {
  using namespace coverforge;
  cover::FpModel m;
  m.name = "twisted cubic";
  m.field = alg::PrimeField(43);
  m.coords = {"x0", "x1", "x2", "x3"};
  for (const char* e : {"x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"})
    m.ideal.push_back(alg::parse_poly(m.field, m.coords, e));
  m.actions.coords = m.coords;

  auto quadrics = cover::interpolate_model(m, 2, {}, 1);
  for (const auto& q : quadrics) std::cout << alg::format_poly(q, m.coords) << "\n";

  auto h = verify::hilbert_polynomial(verify::groebner_basis(quadrics));
  std::cout << "Hilbert polynomial " << h.polynomial_string() << "\n";
  verify::SmoothnessOptions o;
  o.expected_dimension = h.dimension();
  std::cout << (verify::smoothness_check_mod_p(quadrics, o).smooth ? "smooth" : "singular") << "\n";
}
