// coverforge: group, representation, pipeline and verification claims from
// the command line. Every command prints a JSON report; exit status is 0 when
// every claim passes (or is skipped), 1 when a claim fails, 2 on bad input.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"

#include "coverforge/cli/claims.hpp"
#include "coverforge/cli/table_io.hpp"
#include "coverforge/cover/double_cover.hpp"
#include "coverforge/cover/emit.hpp"
#include "coverforge/cover/fixtures.hpp"
#include "coverforge/cover/io.hpp"
#include "coverforge/cover/purity.hpp"
#include "coverforge/cover/sections.hpp"
#include "coverforge/verify/diagonalize.hpp"
#include "coverforge/verify/hilbert.hpp"
#include "coverforge/verify/smoothness.hpp"

namespace {

using namespace coverforge;
using cli::Claim;
using cli::Outcome;
using nlohmann::json;
using cover::FpPoly;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string report_path, out_path;
  std::uint64_t seed = 1;
  std::uint32_t prime = 43;
  int root = 0;
  std::size_t points = 0;
  double margin = 1.25;
  std::size_t fresh = 20;
  bool fixture = false;

  std::string pres, sub;
  std::string y, u10, w, base, table, reps, zcoords, z, model;
  int a = 3;
  unsigned upto = 10;
  std::string action = "g3", c7 = "h", c2 = "g2", iota = "iota", h = "h";
  int expect = -1, expect_quadrics = 7, expect_cubics = 3, expect_relations = 84;
  int dim = -1;
  bool expect_smooth = false, check_ratio = false;
  std::string expect_hilbert;
  std::vector<std::string> stages;
};

// Stage outputs passed along within one `run`.
struct State {
  std::optional<cover::FpModel> w, z, x;
  std::optional<cover::MulTable> table;
};

cover::ValidationOptions validation(const Settings& s) { return {s.prime, s.root, 5, s.seed}; }

cover::VarietyModel read_model(const std::string& path, const Settings& s) {
  try {
    return cover::load_model_file(path, validation(s));
  } catch (const alg::ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const cover::CoverError& e) {
    throw InputError(e.what());
  }
}

cover::FpModel read_fp_model(const std::string& path, const Settings& s) {
  auto m = read_model(path, s);
  return cover::reduce_model(m, cover::embedding_for(m, validation(s)));
}

// A polynomial list that is not itself a model (no validation).
std::vector<FpPoly> read_forms(const std::string& path, const Settings& s) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    auto m = cover::parse_model(in);
    return cover::reduce_model(m, cover::embedding_for(m, validation(s))).ideal;
  } catch (const alg::ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

json read_json(const std::string& path) {
  try {
    return cli::read_json_file(path);
  } catch (const std::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_model(const cover::FpModel& m, const std::string& path) {
  if (!path.empty()) cover::save_model_file(cover::to_variety_model(m), path);
}

void write_json(const json& j, const std::string& path) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

const equiv::ActionGen& named_action(const cover::FpModel& m, const std::string& name) {
  if (!m.actions.has(name)) throw InputError("model '" + m.name + "' has no action named '" + name + "'");
  return m.actions.get(name);
}

cover::InterpolationOptions interpolation(const Settings& s) {
  cover::InterpolationOptions o;
  o.margin = s.margin;
  return o;
}

void append(cli::ClaimReport& r, std::vector<Claim> cs) {
  for (auto& c : cs) r.add(std::move(c));
}

// ------------------------------------------------------------------ group

std::vector<Claim> custom_group(const std::string& verb, const Settings& s) {
  std::ifstream in(s.pres);
  if (!in) throw InputError("cannot open " + s.pres);
  group::PresentationFile pf;
  try {
    pf = group::parse_presentation_file(in);
  } catch (const std::exception& e) {
    throw InputError(s.pres + ": " + e.what());
  }
  group::SubgroupSpec sub;
  if (!s.sub.empty()) {
    auto it = pf.subgroups.find(s.sub);
    if (it == pf.subgroups.end()) throw InputError("no subgroup '" + s.sub + "' in " + s.pres);
    sub = it->second;
  }
  const auto& p = pf.presentation;
  std::string name = s.sub.empty() ? "trivial subgroup" : s.sub;
  if (verb == "index")
    return {cli::evaluate("index", "index of " + name, "computed", "-", [&] {
      return Outcome{std::to_string(group::coset_enumerate(p, sub).index()), true};
    })};
  if (verb == "normal")
    return {cli::evaluate("normal", name + " is normal", "computed", "-",
                          [&] { return Outcome{cli::yes_no(group::is_normal(p, sub)), true}; })};
  if (verb == "abelian")
    return {cli::evaluate("abelian", "abelian invariants of " + name, "computed", "-", [&] {
      auto t = group::coset_enumerate(p, sub);
      return Outcome{group::format_invariants(group::abelian_invariants(group::subgroup_presentation(p, t).presentation())),
                     true};
    })};
  if (verb == "quotient")
    return {cli::evaluate("quotient", "quotient by the normal closure of " + name, "computed", "-", [&] {
      auto t = group::coset_enumerate(p, sub);
      auto q = group::coset_action_quotient(t, p);
      return Outcome{q.order.str() + (q.is_abelian() ? ", abelian" : ", nonabelian"), true};
    })};
  throw InputError("verb '" + verb + "' does not take --pres");
}

std::vector<Claim> group_verb(const std::string& verb, const Settings& s) {
  if (!s.pres.empty()) return custom_group(verb, s);
  cli::LatticeContext ctx;
  if (verb == "index") return cli::index_claims(ctx);
  if (verb == "normal") return cli::normality_claims(ctx);
  if (verb == "abelian") return cli::abelian_claims(ctx);
  if (verb == "quotient") {
    auto q = cli::quotient_claims(ctx);
    return {q[0], q[1], q[3], q[4]};
  }
  if (verb == "verify-quotient294") return {cli::quotient_claims(ctx)[2]};
  if (verb == "verify-order14") return cli::order14_claims(ctx);
  return cli::group_claims(ctx);
}

// -------------------------------------------------------------------- rep

std::vector<Claim> rep_verb(const std::string& verb, const Settings& s, cli::ClaimReport& rep) {
  if (verb == "admissible-a") return {cli::admissible_claim()};
  if (verb == "check-relations") {
    std::vector<Claim> out;
    for (int a : {3, 5, 6}) out.push_back(cli::relations_claim(a));
    return out;
  }
  if (verb == "weights") {
    auto syms = equiv::canonical_symbols(s.a);
    json arr = json::array();
    for (const auto& sym : syms)
      arr.push_back({{"symbol", equiv::symbol_name(sym.weight)}, {"weight", {sym.weight.i, sym.weight.j}}});
    rep.context["symbols"] = arr;
    return {cli::evaluate("symbols", "13 symbols with distinct weights for a=" + std::to_string(s.a), "elementary", "13",
                          [&] {
                            std::set<std::pair<int, int>> w;
                            for (const auto& sym : syms) w.insert({sym.weight.i, sym.weight.j});
                            return Outcome{std::to_string(w.size()), syms.size() == 13 && w.size() == 13};
                          })};
  }
  return cli::rep_claims();
}

// --------------------------------------------------------------- pipeline

std::vector<Claim> stage_double_cover(const Settings& s, State& st) {
  const std::string stmt = "W is cut out by quadrics of pure involution parity";
  const std::string expected = std::to_string(s.expect >= 0 ? s.expect : 100);
  if (s.y.empty() || s.u10.empty()) return {cli::skipped("W-quadrics", stmt, "published", expected)};
  auto y = read_fp_model(s.y, s);
  auto forms = read_forms(s.u10, s);
  if (forms.size() < 2) throw InputError(s.u10 + ": expected U10 followed by the new basis");
  cover::DoubleCoverOptions o;
  o.seed = s.seed;
  o.fresh = s.fresh;
  o.interpolation = interpolation(s);
  cover::DoubleCoverReport dr;
  std::optional<cover::FpModel> w;
  auto c = cli::evaluate("W-quadrics", stmt, "published", expected, [&] {
    w = cover::build_double_cover(y, forms[0], {forms.begin() + 1, forms.end()}, o, &dr);
    return Outcome{std::to_string(w->ideal.size()), std::to_string(w->ideal.size()) == expected,
                   std::to_string(dr.even) + " even, " + std::to_string(dr.odd) + " odd"};
  });
  std::vector<Claim> out{c};
  if (w) {
    out.push_back(cli::evaluate("W-purity", "every relation of W is an eigenvector of the involution", "elementary",
                                "pure", [&] {
                                  auto p = cover::check_purity(*w);
                                  return Outcome{p.pure() ? "pure" : p.violations.front(), p.pure()};
                                }));
    write_model(*w, s.out_path);
    st.w = w;
  }
  return out;
}

std::vector<Claim> stage_sections(const Settings& s, State& st, cli::ClaimReport& rep) {
  const bool want = s.a == 3;
  const std::string stmt = "sections s1..s4 with s1 s2 = s3 s4 exist for a=" + std::to_string(s.a);
  const std::string basis = (s.a == 3 || s.a == 6) ? "published" : "computed";
  const std::string expected = s.a == 5 ? "-" : (want ? "exists" : "none");
  if (s.w.empty() && !st.w) return {cli::skipped("sections-a" + std::to_string(s.a), stmt, basis, expected)};
  auto w = st.w ? *st.w : read_fp_model(s.w, s);
  const auto& iota = named_action(w, s.iota);
  const auto& h = named_action(w, s.h);
  return {cli::evaluate("sections-a" + std::to_string(s.a), stmt, basis, expected, [&] {
    cover::SectionsOptions o;
    o.seed = s.seed;
    cover::SectionsReport sr;
    auto sols = cover::find_weighted_sections(w, iota, h, s.a, o, &sr);
    json arr = json::array();
    for (const auto& x : sols)
      arr.push_back({{"s1", alg::format_poly(x.s1, w.coords)},
                     {"s2", alg::format_poly(x.s2, w.coords)},
                     {"s3", alg::format_poly(x.s3, w.coords)},
                     {"s4", alg::format_poly(x.s4, w.coords)}});
    rep.context["sections"] = arr;
    bool pass = s.a == 5 || (want ? !sols.empty() : sols.empty());
    return Outcome{sols.empty() ? "none" : "exists", pass, std::to_string(sols.size()) + " solution classes"};
  })};
}

cover::FpModel base_model(const Settings& s) { return s.base.empty() ? cover::fixtures::plane_model() : read_fp_model(s.base, s); }

std::vector<Claim> stage_multable(const Settings& s, State& st) {
  const std::string stmt = "table entries are weight additive and C3-equivariant";
  if (!s.fixture && s.reps.empty()) return {cli::skipped("table-structure", stmt, "elementary", "true")};
  cover::MulTable t;
  try {
    t = s.fixture ? cover::fixtures::cyclic_raw_table(s.seed) : cli::table_from_representatives(read_json(s.reps));
  } catch (const cover::CoverError& e) {
    throw InputError(e.what());
  }
  auto c = cli::evaluate("table-structure", stmt, "elementary", "true", [&] {
    bool ok = cover::weight_additive(t) && cover::c3_equivariant(t);
    return Outcome{cli::yes_no(ok), ok, std::to_string(t.products.size()) + " entries"};
  });
  write_json(cli::table_to_json(t), s.out_path);
  st.table = t;
  return {c};
}

std::vector<Claim> stage_fix(const Settings& s, State& st) {
  const std::string stmt = "associativity fixes the scalings uniquely, independent of the C3-invariant gauge";
  std::optional<cover::MulTable> raw = st.table;
  if (!raw && !s.table.empty()) raw = cli::table_from_json(read_json(s.table));
  if (!raw && s.fixture) raw = cover::fixtures::cyclic_raw_table(s.seed);
  if (!raw) return {cli::skipped("fix-scalings", stmt, "published", "unique, gauge invariant")};
  auto base = base_model(s);
  cover::FixOptions o;
  o.seed = s.seed;
  if (s.points) o.points = s.points;
  cover::FixReport fr;
  std::optional<cover::MulTable> fixed;
  auto c = cli::evaluate("fix-scalings", stmt, "published", "unique, gauge invariant", [&] {
    fixed = cover::fix_scalings_by_associativity(*raw, base, o, &fr);
    std::mt19937_64 rng(s.seed);
    std::uniform_int_distribution<std::uint32_t> d(1, raw->field.p - 1);
    auto moved = cover::fixtures::rescale_basis(*raw, d(rng), d(rng));
    bool same = cover::fix_scalings_by_associativity(moved, base, o).products == fixed->products;
    bool ok = fr.solutions == 1 && fr.failures_after == 0 && same;
    return Outcome{std::string(fr.solutions == 1 ? "unique" : std::to_string(fr.solutions) + " solutions") +
                       (same ? ", gauge invariant" : ", gauge dependent"),
                   ok,
                   std::to_string(fr.unknowns) + " unknowns, " + std::to_string(fr.equations) + " equations, rank " +
                       std::to_string(fr.rank)};
  });
  if (fixed) {
    write_json(cli::table_to_json(*fixed), s.out_path);
    st.table = fixed;
  }
  return {c};
}

std::vector<Claim> stage_emit(const Settings& s, State& st) {
  const std::string stmt = "Z relations vanish on fresh lifted points and are pure for the C7 weights";
  std::optional<cover::MulTable> t = st.table;
  if (!t && !s.table.empty()) t = cli::table_from_json(read_json(s.table));
  if (!t && s.fixture)
    t = cover::fix_scalings_by_associativity(cover::fixtures::cyclic_raw_table(s.seed), cover::fixtures::plane_model());
  if (!t) return {cli::skipped("emit-z", stmt, "oracle", "verified, pure")};
  auto base = base_model(s);
  std::vector<cover::ZCoordinate> zs;
  if (!s.zcoords.empty())
    zs = cli::zcoords_from_json(read_json(s.zcoords), t->field, t->coords);
  else if (s.fixture)
    zs = cover::fixtures::cyclic_z_coordinates();
  else
    return {cli::skipped("emit-z", stmt, "oracle", "verified, pure", "skipped: missing input (--zcoords)")};
  std::optional<cover::FpModel> z;
  auto c = cli::evaluate("emit-z", stmt, "oracle", "verified, pure", [&] {
    cover::EmitOptions o;
    o.seed = s.seed;
    o.fresh = s.fresh;
    o.interpolation = interpolation(s);
    cover::EmitReport er;
    z = cover::emit_model_Z(*t, base, zs, o, &er);
    auto p = cover::check_purity(*z);
    std::string counts;
    for (const auto& [d, k] : er.kept) counts += (counts.empty() ? "" : ", ") + std::to_string(k) + " in degree " + std::to_string(d);
    return Outcome{p.pure() ? "verified, pure" : p.violations.front(), p.pure(), counts};
  });
  if (z) {
    write_model(*z, s.out_path);
    st.z = z;
  }
  return {c};
}

std::vector<Claim> stage_descend(const Settings& s, State& st) {
  const std::string q = std::to_string(s.expect_quadrics), k = std::to_string(s.expect_cubics),
                    r = std::to_string(s.expect_relations);
  const std::string stmt = "X: invariant quadrics, extra cubics, cubic relations";
  const std::string expected = q + " quadrics, " + k + " cubics, " + r + " relations";
  if (s.z.empty() && !st.z) return {cli::skipped("descend-x", stmt, "published", expected)};
  auto z = st.z ? *st.z : read_fp_model(s.z, s);
  if (st.z && (!z.actions.has(s.c7) || !z.actions.has(s.c2)))
    return {cli::skipped("descend-x", stmt, "published", expected,
                         "skipped: the emitted Z carries no '" + s.c2 + "' action")};
  const auto& c7 = named_action(z, s.c7);
  const auto& c2 = named_action(z, s.c2);
  std::optional<cover::FpModel> x;
  auto c = cli::evaluate("descend-x", stmt, "published", expected, [&] {
    cover::DescendOptions o;
    o.seed = s.seed;
    o.fresh = s.fresh;
    o.interpolation = interpolation(s);
    cover::DescendReport dr;
    x = cover::descend_to_X(z, c7, c2, o, &dr);
    auto got = std::to_string(dr.quadrics.size()) + " quadrics, " + std::to_string(dr.cubics.size()) + " cubics, " +
               std::to_string(dr.relations) + " relations";
    return Outcome{got, got == expected};
  });
  if (x) {
    write_model(*x, s.out_path);
    st.x = x;
  }
  return {c};
}

std::vector<Claim> pipeline_verb(const std::string& verb, const Settings& s, State& st, cli::ClaimReport& rep) {
  if (verb == "double-cover") return stage_double_cover(s, st);
  if (verb == "sections") return stage_sections(s, st, rep);
  if (verb == "multable") return stage_multable(s, st);
  if (verb == "fix-scalings") return stage_fix(s, st);
  if (verb == "emit-z") return stage_emit(s, st);
  if (verb == "descend-x") return stage_descend(s, st);
  throw InputError("unknown pipeline verb '" + verb + "'");
}

// ----------------------------------------------------------------- verify

// "3*m + 1" and "3m+1" compare equal
std::string squeeze(std::string t) {
  std::erase_if(t, [](char c) { return c == '*' || c == ' '; });
  return t;
}

std::vector<Claim> verify_verb(const std::string& verb, const Settings& s, State& st, cli::ClaimReport& rep) {
  if (verb == "reduce") {
    if (s.model.empty()) throw InputError("verify reduce needs --model");
    auto m = read_model(s.model, s);
    alg::ModularEmbedding e;
    try {
      e = alg::ModularEmbedding::standard(s.prime, s.root);
    } catch (const std::exception& ex) {
      throw InputError(ex.what());
    }
    auto fp = cover::reduce_model(m, e);
    write_model(fp, s.out_path);
    rep.context["result"] = {{"prime", s.prime}, {"root", e.root}, {"embedding", e.describe()}, {"generators", fp.ideal.size()}};
    return {cli::evaluate("reduce", "model reduced modulo " + std::to_string(s.prime), "computed", "-", [&] {
      return Outcome{std::to_string(fp.ideal.size()) + " generators", true};
    })};
  }
  std::optional<cover::FpModel> m;
  if (!s.model.empty())
    m = read_fp_model(s.model, s);
  else if (st.x)
    m = st.x;
  if (!m) return {cli::skipped("verify-" + verb, "verification of a model", "computed", "-")};
  auto ideal = cover::ideal_or_zero(*m);
  rep.context["result"]["prime"] = m->field.p;
  rep.context["result"]["root"] = s.root;
  if (verb == "gb") {
    return {cli::evaluate("gb", "reduced Groebner basis (degrevlex)", "computed", "-", [&] {
      auto gb = verify::groebner_basis(ideal);
      rep.context["result"]["generators"] = gb.size();
      return Outcome{std::to_string(gb.size()) + " generators", true};
    })};
  }
  if (verb == "hilbert") {
    std::string expected = s.expect_hilbert.empty() ? "-" : s.expect_hilbert;
    return {cli::evaluate("hilbert", "Hilbert polynomial", s.expect_hilbert.empty() ? "computed" : "oracle", expected,
                          [&] {
                            auto h = verify::hilbert_polynomial(verify::groebner_basis(ideal), s.upto);
                            json coeffs = json::array();
                            for (const auto& c : h.polynomial) coeffs.push_back(alg::to_string(c));
                            json fn = json::array();
                            for (long k = 0; k <= static_cast<long>(s.upto); ++k)
                              fn.push_back(verify::hilbert_function_value(h, k).str());
                            rep.context["result"]["dimension"] = h.dimension();
                            rep.context["result"]["degree"] = h.degree().str();
                            rep.context["result"]["hilbert_coeffs"] = coeffs;
                            rep.context["result"]["hilbert_function"] = fn;
                            auto got = h.polynomial_string();
                            return Outcome{got, s.expect_hilbert.empty() || squeeze(got) == squeeze(s.expect_hilbert),
                                           "dimension " + std::to_string(h.dimension()) + ", degree " + h.degree().str()};
                          })};
  }
  if (verb == "smooth") {
    return {cli::evaluate("smooth", "singular locus is empty", s.expect_smooth ? "published" : "computed",
                          s.expect_smooth ? "smooth" : "-", [&] {
                            verify::SmoothnessOptions o;
                            o.seed = s.seed;
                            o.expected_dimension =
                                s.dim >= 0 ? s.dim : verify::hilbert_polynomial(verify::groebner_basis(ideal)).dimension();
                            auto r = verify::smoothness_check_mod_p(ideal, o);
                            rep.context["result"]["smooth"] = r.smooth;
                            rep.context["result"]["conclusive"] = r.conclusive;
                            rep.context["result"]["singular_dimension"] = r.singular_dimension;
                            rep.context["result"]["method"] = r.method;
                            std::string got = !r.conclusive ? "inconclusive" : (r.smooth ? "smooth" : "singular");
                            return Outcome{got, s.expect_smooth ? got == "smooth" : r.conclusive, r.method};
                          })};
  }
  if (verb == "diagonalize-c3") {
    const auto& g3 = named_action(*m, s.action);
    return {cli::evaluate("diagonalize-c3", "relations become C3 eigenvectors; monomial count ratio",
                          s.check_ratio ? "published" : "computed", s.check_ratio ? "[0.25, 0.45]" : "-", [&] {
                            auto d = verify::diagonalize_c3(m->ideal, g3);
                            cover::FpModel out;
                            out.name = m->name + " (C3 diagonalized)";
                            out.field = m->field;
                            out.coords = cover::default_coords("Y", d.coordinates.size());
                            out.ideal = d.ideal;
                            out.actions.coords = out.coords;
                            auto diag = equiv::ActionGen::identity(out.coords.size(), s.action);
                            for (std::size_t k = 0; k < d.eigen.size(); ++k)
                              diag.scalar[k] = equiv::RootOfUnity::zeta3(d.eigen[k]);
                            out.actions.gens.push_back(diag);
                            write_model(out, s.out_path);
                            rep.context["result"]["terms_before"] = d.terms_reduced;
                            rep.context["result"]["terms_after"] = d.terms_output;
                            double r = d.ratio();
                            char buf[32];
                            std::snprintf(buf, sizeof buf, "%.3f", r);
                            return Outcome{buf, !s.check_ratio || (r >= 0.25 && r <= 0.45)};
                          })};
  }
  throw InputError("unknown verify verb '" + verb + "'");
}

// -------------------------------------------------------------------- run

const std::vector<std::string>& stage_order() {
  static const std::vector<std::string> o{"group",   "rep",     "double-cover", "sections", "multable",
                                          "fix-scalings", "emit-z", "descend-x", "verify"};
  return o;
}

std::vector<Claim> run_stages(const Settings& s, cli::ClaimReport& rep) {
  std::vector<std::string> stages = s.stages;
  if (stages.empty()) stages = stage_order();
  std::size_t last = 0;
  for (const auto& st : stages) {
    auto it = std::find(stage_order().begin(), stage_order().end(), st);
    if (it == stage_order().end()) throw InputError("unknown stage '" + st + "'");
    auto pos = static_cast<std::size_t>(it - stage_order().begin()) + 1;
    if (pos <= last) throw InputError("stages must follow the order group, rep, double-cover, ..., verify");
    last = pos;
  }
  State state;
  std::vector<Claim> out;
  auto add = [&](std::vector<Claim> cs) { out.insert(out.end(), cs.begin(), cs.end()); };
  for (const auto& st : stages) {
    if (st == "group") {
      add(group_verb("all", s));
    } else if (st == "rep") {
      add(cli::rep_claims());
    } else if (st == "verify") {
      add(verify_verb("hilbert", s, state, rep));
      add(verify_verb("smooth", s, state, rep));
    } else {
      Settings local = s;
      local.out_path.clear();
      add(pipeline_verb(st, local, state, rep));
    }
    // a hard failure stops the stages that depend on it
    if (std::any_of(out.begin(), out.end(), [](const Claim& c) { return c.status == cli::Status::Error; })) break;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverforge: cover lattice, equivariant pipeline and verification claims"};
  app.set_config("--config", "", "key = value configuration file");
  app.fallthrough();
  app.require_subcommand(1);
  Settings s;
  std::string stages;
  app.add_option("--report", s.report_path, "write the JSON report here as well");
  app.add_option("--out", s.out_path, "stage output (model file or table JSON)");
  app.add_option("--seed", s.seed);
  app.add_option("--prime", s.prime, "prime for models over QQ or QQ(w)");
  app.add_option("--root", s.root, "which square root of -7 (0 or 1)");
  app.add_option("--points", s.points, "sample size override");
  app.add_option("--margin", s.margin, "points per unknown in interpolation");
  app.add_option("--fresh", s.fresh, "fresh verification points");
  app.add_flag("--fixture", s.fixture, "use the built-in cyclic-cover fixture where no data is given");
  app.add_option("--pres", s.pres, "presentation file (group verbs)");
  app.add_option("--sub", s.sub, "subgroup name in the presentation file");
  app.add_option("--y", s.y, "model of Y");
  app.add_option("--u10", s.u10, "U10 followed by the new quadric basis");
  app.add_option("--w", s.w, "model of W with actions iota and h");
  app.add_option("--base", s.base, "base model of the table");
  app.add_option("--table", s.table, "multiplication table JSON");
  app.add_option("--reps", s.reps, "orbit representatives of the table (JSON)");
  app.add_option("--zcoords", s.zcoords, "Z coordinates (JSON)");
  app.add_option("--z", s.z, "model of Z with C7 and C2 actions");
  app.add_option("--model", s.model, "model to verify");
  app.add_option("--a", s.a, "second weight a");
  app.add_option("--upto", s.upto, "Hilbert function cutoff");
  app.add_option("--action", s.action, "name of the C3 action");
  app.add_option("--iota", s.iota);
  app.add_option("--h-action", s.h, "name of the C7 action on W");
  app.add_option("--c7", s.c7);
  app.add_option("--c2", s.c2);
  app.add_option("--expect", s.expect, "expected relation count for W");
  app.add_option("--expect-quadrics", s.expect_quadrics);
  app.add_option("--expect-cubics", s.expect_cubics);
  app.add_option("--expect-relations", s.expect_relations);
  app.add_option("--expect-hilbert", s.expect_hilbert, "expected Hilbert polynomial, e.g. 18m^2 - 9m + 1");
  app.add_flag("--expect-smooth", s.expect_smooth);
  app.add_flag("--check-ratio", s.check_ratio, "require a monomial ratio in [0.25, 0.45]");
  app.add_option("--dim", s.dim, "expected projective dimension for the smoothness check");
  app.add_option("--stages", stages, "comma-separated stage list for run");

  std::string command, verb;
  struct Group {
    const char* name;
    std::vector<const char*> verbs;
  };
  const std::vector<Group> groups{
      {"group", {"index", "normal", "abelian", "quotient", "verify-quotient294", "verify-order14", "all"}},
      {"rep", {"admissible-a", "check-relations", "weights", "all"}},
      {"pipeline", {"double-cover", "sections", "multable", "fix-scalings", "emit-z", "descend-x"}},
      {"verify", {"gb", "hilbert", "smooth", "diagonalize-c3", "reduce"}},
  };
  for (const auto& g : groups) {
    auto* sub = app.add_subcommand(g.name);
    sub->require_subcommand(1);
    sub->fallthrough();
    for (const char* v : g.verbs)
      sub->add_subcommand(v)->fallthrough()->callback([&, g, v] {
        command = g.name;
        verb = v;
      });
  }
  app.add_subcommand("run", "run a list of stages")->fallthrough()->callback([&] { command = "run"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (std::size_t start = 0; !stages.empty() && start <= stages.size();) {
    auto comma = stages.find(',', start);
    auto part = stages.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    part.erase(0, part.find_first_not_of(" \t"));
    part.erase(part.find_last_not_of(" \t") + 1);
    if (!part.empty()) s.stages.push_back(part);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }

  cli::ClaimReport rep;
  rep.context = {{"command", command + (verb.empty() ? "" : " " + verb)}, {"seed", s.seed}, {"prime", s.prime}, {"root", s.root}};
  try {
    State st;
    if (command == "group") append(rep, group_verb(verb, s));
    else if (command == "rep") append(rep, rep_verb(verb, s, rep));
    else if (command == "pipeline") append(rep, pipeline_verb(verb, s, st, rep));
    else if (command == "verify") append(rep, verify_verb(verb, s, st, rep));
    else append(rep, run_stages(s, rep));
  } catch (const std::exception& e) {
    // bad files, missing actions, malformed tables
    rep.context["error"] = e.what();
    auto j = rep.to_json();
    j["pass"] = false;
    std::cout << j.dump(2) << std::endl;
    std::cerr << "coverforge: " << e.what() << "\n";
    try {
      write_json(j, s.report_path);
    } catch (const InputError&) {
    }
    return 2;
  }
  auto j = rep.to_json();
  std::cout << j.dump(2) << std::endl;
  try {
    write_json(j, s.report_path);
  } catch (const InputError& e) {
    std::cerr << "coverforge: " << e.what() << "\n";
    return 2;
  }
  return rep.exit_code();
}
