#pragma once

// Projective models: ideal generators in the polynomial text format plus
// action blocks and free-form metadata.
//
// File layout (any order after the headers; '#' comments allowed):
//   name: W
//   field: QQ(w)
//   vars: P0 .. P19
//   meta bundle: 2K
//   action iota: P0 .. P9 -P10 .. -P19      (one image per coordinate)
//   <one polynomial per line>

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coverforge/equivariant/action.hpp"
#include "coverforge/exactalg/poly_io.hpp"
#include "coverforge/exactalg/reduce.hpp"
#include "coverforge/verify/groebner.hpp"

namespace coverforge::cover {

using alg::Monomial;
using alg::PrimeField;
using verify::FpPoly;

class CoverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VarietyModel {
  std::string name;
  alg::AnyPolySystem system = alg::PolySystem<alg::RationalField>{};
  equiv::ActionSet actions;
  std::map<std::string, std::string> meta;
  int dimension = -1;  // projective; filled in by validation

  const std::vector<std::string>& coords() const {
    return std::visit([](const auto& s) -> const std::vector<std::string>& { return s.vars; }, system);
  }
  std::size_t nvars() const { return coords().size(); }
  std::size_t ngens() const {
    return std::visit([](const auto& s) { return s.polys.size(); }, system);
  }
  std::string field_name() const {
    return std::visit([](const auto& s) { return s.field.name(); }, system);
  }
};

/// The same model over GF(p), which is what every pipeline stage runs on.
struct FpModel {
  std::string name;
  PrimeField field;
  std::vector<std::string> coords;
  std::vector<FpPoly> ideal;
  equiv::ActionSet actions;
  std::map<std::string, std::string> meta;

  std::size_t nvars() const { return coords.size(); }
};

inline std::vector<std::string> default_coords(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline VarietyModel parse_model(std::istream& in) {
  VarietyModel m;
  std::ostringstream rest;
  std::vector<std::pair<std::size_t, std::string>> action_lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = alg::trim(line.substr(0, line.find('#')));
    if (t.rfind("name:", 0) == 0) {
      m.name = alg::trim(t.substr(5));
      rest << "\n";
    } else if (t.rfind("meta ", 0) == 0) {
      auto colon = t.find(':');
      if (colon == std::string::npos) throw alg::ParseError("expected 'meta <key>: <value>'", lineno, 1);
      m.meta[alg::trim(t.substr(5, colon - 5))] = alg::trim(t.substr(colon + 1));
      rest << "\n";
    } else if (t.rfind("action ", 0) == 0) {
      action_lines.emplace_back(lineno, t);
      rest << "\n";
    } else {
      rest << line << "\n";  // keeps line numbers aligned for the parser
    }
  }
  std::istringstream body(rest.str());
  m.system = alg::parse_system(body);
  m.actions.coords = m.coords();
  for (const auto& [ln, t] : action_lines) {
    auto colon = t.find(':');
    if (colon == std::string::npos) throw alg::ParseError("expected 'action <name>: ...'", ln, 1);
    try {
      m.actions.gens.push_back(
          equiv::parse_action_line(alg::trim(t.substr(7, colon - 7)), t.substr(colon + 1), m.actions.coords));
      m.actions.gens.back().validate();
    } catch (const equiv::ActionError& e) {
      throw alg::ParseError(e.what(), ln, colon + 2);
    }
  }
  return m;
}

inline VarietyModel parse_model_string(const std::string& text) {
  std::istringstream in(text);
  return parse_model(in);
}

inline std::string format_model(const VarietyModel& m) {
  std::string out;
  if (!m.name.empty()) out += "name: " + m.name + "\n";
  out += "field: " + m.field_name() + "\n";
  out += "vars: " + alg::format_variable_list(m.coords()) + "\n";
  for (const auto& [k, v] : m.meta) out += "meta " + k + ": " + v + "\n";
  for (const auto& g : m.actions.gens) out += equiv::format_action_line(g, m.coords()) + "\n";
  std::visit(
      [&](const auto& s) {
        for (const auto& p : s.polys) out += alg::format_poly(p, s.vars) + "\n";
      },
      m.system);
  return out;
}

inline VarietyModel to_variety_model(const FpModel& m) {
  VarietyModel v;
  v.name = m.name;
  v.system = alg::PolySystem<PrimeField>{m.field, m.coords, m.ideal};
  v.actions = m.actions;
  v.actions.coords = m.coords;
  v.meta = m.meta;
  return v;
}

/// Reduce to GF(p). QQ(w) coefficients use the embedding's image of w; a
/// model already over GF(p) must be over the same prime.
inline FpModel reduce_model(const VarietyModel& m, const alg::ModularEmbedding& e) {
  FpModel out;
  out.name = m.name;
  out.field = e.field;
  out.coords = m.coords();
  out.actions = m.actions;
  out.meta = m.meta;
  std::visit(
      [&](const auto& s) {
        using Fd = std::decay_t<decltype(s.field)>;
        for (const auto& p : s.polys) {
          if constexpr (std::is_same_v<Fd, alg::RationalField>) {
            out.ideal.push_back(alg::reduce_mod_p(p, e.field));
          } else if constexpr (std::is_same_v<Fd, alg::QuadraticField>) {
            out.ideal.push_back(alg::reduce_mod_p(p, e));
          } else {
            if (s.field.p != e.field.p)
              throw CoverError("model is over " + s.field.name() + ", cannot reduce to " + e.field.name());
            out.ideal.push_back(p);
          }
        }
      },
      m.system);
  // Generators that vanish mod p are dropped; a bad prime for the model
  // shows up later as a dimension mismatch.
  std::erase_if(out.ideal, [](const FpPoly& p) { return p.is_zero(); });
  return out;
}

/// Prime of a model already over GF(p), else 0.
inline std::uint32_t model_prime(const VarietyModel& m) {
  if (auto* s = std::get_if<alg::PolySystem<PrimeField>>(&m.system)) return s->field.p;
  return 0;
}

/// Ideal generators as given, or {0} for the empty ideal (so Groebner
/// routines have a ring to work in).
inline std::vector<FpPoly> ideal_or_zero(const FpModel& m) {
  if (!m.ideal.empty()) return m.ideal;
  return {FpPoly(m.field, m.nvars())};
}

}  // namespace coverforge::cover
