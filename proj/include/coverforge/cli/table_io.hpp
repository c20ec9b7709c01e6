#pragma once

// JSON form of multiplication tables and Z coordinate lists.

#include <fstream>
#include <string>

#include "json.hpp"

#include "coverforge/cover/emit.hpp"
#include "coverforge/cover/multable.hpp"

namespace coverforge::cli {

using alg::PrimeField;

inline nlohmann::json table_to_json(const cover::MulTable& t) {
  nlohmann::json j;
  j["prime"] = t.field.p;
  j["coords"] = t.coords;
  j["order"] = t.order;
  j["multiplier"] = t.multiplier;
  j["sigma"] = equiv::format_action_line(t.sigma, t.coords);
  j["labels"] = t.labels;
  j["state"] = t.state == cover::ScalingState::Raw ? "raw" : "fixed";
  j["entries"] = nlohmann::json::array();
  for (const auto& [ij, e] : t.products)
    j["entries"].push_back({{"i", ij.first},
                            {"j", ij.second},
                            {"target", e.target},
                            {"scale", e.scale},
                            {"num", alg::format_poly(e.num, t.coords)},
                            {"den", alg::format_poly(e.den, t.coords)}});
  return j;
}

/// Accepts the output of table_to_json; the sigma line is "action <name>: ...".
inline cover::MulTable table_from_json(const nlohmann::json& j) {
  cover::MulTable t;
  t.field = PrimeField(j.at("prime").get<std::uint32_t>());
  t.coords = j.at("coords").get<std::vector<std::string>>();
  t.order = j.value("order", 7);
  t.multiplier = j.value("multiplier", 4);
  auto line = j.at("sigma").get<std::string>();
  auto colon = line.find(':');
  if (line.rfind("action ", 0) != 0 || colon == std::string::npos)
    throw cover::CoverError("table: expected 'action <name>: ...' for sigma");
  t.sigma = equiv::parse_action_line(alg::trim(line.substr(7, colon - 7)), line.substr(colon + 1), t.coords);
  t.labels = j.value("labels", cover::default_labels());
  t.state = j.value("state", std::string("raw")) == "fixed" ? cover::ScalingState::AssociativityFixed
                                                            : cover::ScalingState::Raw;
  for (const auto& e : j.at("entries")) {
    cover::TableEntry te;
    te.target = e.at("target").get<int>();
    te.scale = e.value("scale", 1u);
    te.num = alg::parse_poly(t.field, t.coords, e.at("num").get<std::string>());
    te.den = alg::parse_poly(t.field, t.coords, e.at("den").get<std::string>());
    if (te.num.is_zero() || te.den.is_zero()) throw cover::CoverError("table: zero numerator or denominator");
    auto ln = te.num.leading_coefficient(), ld = te.den.leading_coefficient();
    te.scale = t.field.mul(te.scale, t.field.div(ln, ld));
    te.num = te.num.monic();
    te.den = te.den.monic();
    t.products[{e.at("i").get<int>(), e.at("j").get<int>()}] = te;
  }
  return t;
}

/// Orbit representatives only ({"i", "j", "num", "den"}); the rest follows
/// from sigma.
inline cover::MulTable table_from_representatives(const nlohmann::json& j) {
  PrimeField f(j.at("prime").get<std::uint32_t>());
  auto coords = j.at("coords").get<std::vector<std::string>>();
  auto line = j.at("sigma").get<std::string>();
  auto colon = line.find(':');
  if (line.rfind("action ", 0) != 0 || colon == std::string::npos)
    throw cover::CoverError("representatives: expected 'action <name>: ...' for sigma");
  auto sigma = equiv::parse_action_line(alg::trim(line.substr(7, colon - 7)), line.substr(colon + 1), coords);
  std::map<std::pair<int, int>, cover::RatFunc> reps;
  for (const auto& e : j.at("entries"))
    reps[{e.at("i").get<int>(), e.at("j").get<int>()}] =
        cover::RatFunc{alg::parse_poly(f, coords, e.at("num").get<std::string>()),
                       alg::parse_poly(f, coords, e.at("den").get<std::string>())};
  return cover::build_multiplication_table(f, coords, sigma, reps, j.value("order", 7), j.value("multiplier", 4),
                                           j.value("labels", cover::default_labels()));
}

inline nlohmann::json zcoords_to_json(const std::vector<cover::ZCoordinate>& zs, const std::vector<std::string>& base) {
  auto out = nlohmann::json::array();
  for (const auto& z : zs) out.push_back({{"name", z.name}, {"form", alg::format_poly(z.form, base)}, {"label", z.label}});
  return out;
}

inline std::vector<cover::ZCoordinate> zcoords_from_json(const nlohmann::json& j, const PrimeField& f,
                                                         const std::vector<std::string>& base) {
  std::vector<cover::ZCoordinate> out;
  for (const auto& e : j)
    out.push_back({e.at("name").get<std::string>(), alg::parse_poly(f, base, e.at("form").get<std::string>()),
                   e.at("label").get<int>()});
  return out;
}

inline nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cover::CoverError("cannot open " + path);
  return nlohmann::json::parse(in);
}

}  // namespace coverforge::cli
