// Index, normality and abelianization of the subgroups of the lattice.

#include <iostream>

#include "coverforge/fpgroup/coset_enum.hpp"
#include "coverforge/fpgroup/lattice.hpp"
#include "coverforge/fpgroup/quotient.hpp"
#include "coverforge/fpgroup/rewrite.hpp"

int main() {
  using namespace coverforge::group;
  const auto& g = lattice::gamma_bar();
  for (const char* name : {"X", "Y"}) {
    const auto& sub = lattice::gamma_bar_file().subgroups.at(name);
    auto t = coset_enumerate(g, sub);
    auto ab = abelian_invariants(subgroup_presentation(g, t).presentation());
    std::cout << "Gamma_" << name << ": index " << t.index() << (is_normal(g, sub) ? ", normal" : ", not normal")
              << ", abelianization " << format_invariants(ab) << "\n";
  }
  auto tx = coset_enumerate(g, lattice::gamma_x());
  auto z = derived_subgroup_spec(g, lattice::gamma_x(), tx);
  std::cout << "derived subgroup of Gamma_X: index " << coset_enumerate(g, z).index() << "\n";
}
