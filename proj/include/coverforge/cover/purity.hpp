#pragma once

// Weight/parity purity of stage outputs: every relation of a model must be
// an eigenvector of each declared diagonal action, and the relation span of
// each degree must be stable under every declared action.

#include <string>
#include <vector>

#include "coverforge/cover/model.hpp"
#include "coverforge/verify/diagonalize.hpp"

namespace coverforge::cover {

struct PurityReport {
  std::size_t relations = 0;
  std::size_t checks = 0;
  std::vector<std::string> violations;

  bool pure() const { return violations.empty(); }
};

inline bool is_eigenvector(const equiv::ActionGen& g, const FpPoly& r) {
  if (r.is_zero()) return true;
  if (g.is_diagonal()) return equiv::diagonal_weight(g, r).has_value();
  return equiv::eigenvalue(g, r).has_value();
}

/// Diagonal actions are checked relation by relation; the others for
/// stability of the span of each degree.
inline PurityReport check_purity(const FpModel& m, PurityReport rep = {}) {
  std::map<unsigned, std::vector<FpPoly>> by_degree;
  for (const auto& r : m.ideal) by_degree[r.degree()].push_back(r);
  rep.relations += m.ideal.size();
  for (const auto& g : m.actions.gens) {
    if (g.is_diagonal()) {
      for (std::size_t k = 0; k < m.ideal.size(); ++k) {
        ++rep.checks;
        if (!is_eigenvector(g, m.ideal[k]))
          rep.violations.push_back(m.name + ": relation " + std::to_string(k) + " is not an eigenvector of " + g.name);
      }
      continue;
    }
    for (const auto& [d, rs] : by_degree) {
      ++rep.checks;
      auto base = verify::detail::echelon_span(rs);
      auto both = base;
      for (const auto& r : rs) both.push_back(equiv::act_on_form(g, r));
      if (verify::detail::echelon_span(both).size() != base.size())
        rep.violations.push_back(m.name + ": degree " + std::to_string(d) + " relations are not stable under " +
                                 g.name);
    }
  }
  return rep;
}

}  // namespace coverforge::cover
