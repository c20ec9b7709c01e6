#pragma once

// Built-in presentations: the lattice containing the groups of X and Y, the
// subgroups used by the cover diagram, and the order-294 quotient. The same
// text ships as data/gamma_bar.pres and data/quotient294.pres.

#include <sstream>
#include <string>
#include <vector>

#include "coverforge/fpgroup/word.hpp"

namespace coverforge::group::lattice {

inline const char* gamma_bar_text() {
  return R"(gens: z b
rel: z^7
rel: (b^{-2}z)^3
rel: (b^2z^{-2}b^2z^2)^3
rel: (b^2z^{-2}b^2z^4)^3
rel: b^3z^{-2}b^{-1}z^2b^{-2}z
rel: b^3zb^3z^3bz^2b^{-1}z^{-1}
rel: b^3z^2b^2z^{-2}b^{-1}z^{-1}b^{-3}zb^{-1}z^{-1}
sub X: b^3; zb^3z; bz^2b^{-1}z
sub Y: b^3; (zbz^{-1})^3; bzb^2z^{-2}; zbz^3b^{-1}
word t1: b^3
word t2: bzb^2z^{-2}b^3
word t3: bz^2b^{-1}z
word t4: b^4
)";
}

inline const char* quotient294_text() {
  return R"(gens: t1 t2 t3 t4
rel: t1^2
rel: t2^7
rel: (t1t2)^2
rel: t3^7
rel: [t1,t3]
rel: [t2,t3]
rel: t4^3
rel: t4t1t4^-1t1^-1
rel: t4t2t4^-1t2^-4
rel: t4t3t4^-1t3^-2
)";
}

inline PresentationFile parse_text(const char* text) {
  std::istringstream in(text);
  return parse_presentation_file(in);
}

inline const PresentationFile& gamma_bar_file() {
  static const PresentationFile f = parse_text(gamma_bar_text());
  return f;
}

inline const FpPresentation& gamma_bar() { return gamma_bar_file().presentation; }
inline const SubgroupSpec& gamma_x() { return gamma_bar_file().subgroups.at("X"); }
inline const SubgroupSpec& gamma_y() { return gamma_bar_file().subgroups.at("Y"); }

/// Words t1..t4 in z, b.
inline std::vector<Word> t_words() {
  const auto& w = gamma_bar_file().words;
  return {w.at("t1"), w.at("t2"), w.at("t3"), w.at("t4")};
}

inline const FpPresentation& quotient294() {
  static const FpPresentation p = parse_text(quotient294_text()).presentation;
  return p;
}

}  // namespace coverforge::group::lattice
