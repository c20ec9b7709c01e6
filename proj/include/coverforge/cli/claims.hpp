#pragma once

// Claims: a computed value next to the value it is supposed to have, with
// timing and pass/fail/skip status. Reports serialize to JSON.

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coverforge/equivariant/representation.hpp"
#include "coverforge/fpgroup/coset_enum.hpp"
#include "coverforge/fpgroup/lattice.hpp"
#include "coverforge/fpgroup/quotient.hpp"
#include "coverforge/fpgroup/rewrite.hpp"

namespace coverforge::cli {

enum class Status { Pass, Fail, Skipped, Error };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::Error: return "error";
  }
  return "?";
}

/// basis: "published" (stated with the construction), "elementary" (checkable
/// by hand) or "oracle" (computed independently and frozen).
struct Claim {
  std::string id;
  std::string statement;
  std::string basis;
  std::string expected;
  std::string computed;
  Status status = Status::Skipped;
  double seconds = 0;
  std::string note;
};

inline nlohmann::json to_json(const Claim& c) {
  nlohmann::json j{{"claim", c.id},          {"statement", c.statement}, {"basis", c.basis},
                   {"expected", c.expected}, {"computed", c.computed},   {"status", status_name(c.status)},
                   {"pass", c.status == Status::Pass}, {"runtime", c.seconds}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

struct ClaimReport {
  std::vector<Claim> claims;
  nlohmann::json context = nlohmann::json::object();

  void add(Claim c) { claims.push_back(std::move(c)); }
  bool any_failed() const {
    for (const auto& c : claims)
      if (c.status == Status::Fail || c.status == Status::Error) return true;
    return false;
  }
  /// 0 = every claim passed or was skipped, 1 = some claim failed.
  int exit_code() const { return any_failed() ? 1 : 0; }

  nlohmann::json to_json(bool with_runtimes = true) const {
    nlohmann::json j = context;
    j["claims"] = nlohmann::json::array();
    for (const auto& c : claims) {
      auto cj = cli::to_json(c);
      if (!with_runtimes) cj.erase("runtime");
      j["claims"].push_back(cj);
    }
    j["pass"] = !any_failed();
    return j;
  }
};

struct Outcome {
  std::string computed;
  bool pass = false;
  std::string note = {};
};

/// Run `body`, time it and turn exceptions into an error status.
inline Claim evaluate(std::string id, std::string statement, std::string basis, std::string expected,
                      const std::function<Outcome()>& body) {
  Claim c{std::move(id), std::move(statement), std::move(basis), std::move(expected), "", Status::Error, 0, ""};
  auto t0 = std::chrono::steady_clock::now();
  try {
    auto o = body();
    c.computed = o.computed;
    c.note = o.note;
    c.status = o.pass ? Status::Pass : Status::Fail;
  } catch (const std::exception& e) {
    c.computed = "error";
    c.note = e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return c;
}

inline Claim skipped(std::string id, std::string statement, std::string basis, std::string expected,
                     std::string why = "skipped: missing input") {
  return Claim{std::move(id), std::move(statement), std::move(basis), std::move(expected), "", Status::Skipped, 0,
               std::move(why)};
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

// ----------------------------------------------------------------- groups

/// Lazily computed coset tables of the lattice and its subgroups.
class LatticeContext {
 public:
  explicit LatticeContext(group::EnumerationOptions opts = {}) : opts_(opts) {}

  const group::FpPresentation& lattice() const { return group::lattice::gamma_bar(); }
  const group::CosetTable& table_x() { return cached(tx_, [&] { return enumerate(group::lattice::gamma_x()); }); }
  const group::CosetTable& table_y() { return cached(ty_, [&] { return enumerate(group::lattice::gamma_y()); }); }
  const group::SubgroupSpec& spec_z() {
    return cached(dz_, [&] { return group::derived_subgroup_spec(lattice(), group::lattice::gamma_x(), table_x()); });
  }
  const group::CosetTable& table_z() { return cached(tz_, [&] { return enumerate(spec_z()); }); }
  /// (Gamma_X)' by explicit generators, without assuming normality.
  const group::SubgroupSpec& generators_z() {
    return cached(zg_, [&] { return group::derived_subgroup_generators(lattice(), table_x()); });
  }
  const group::SubgroupSpec& spec_w() {
    return cached(w_, [&] {
      group::SubgroupSpec w;
      w.generators = {group::lattice::t_words()[1]};
      w.normal_words = spec_z().generators;
      return w;
    });
  }
  const group::CosetTable& table_w() { return cached(tw_, [&] { return enumerate(spec_w()); }); }
  const group::FiniteQuotient& quotient_z() {
    return cached(qz_, [&] { return group::coset_action_quotient(table_z(), lattice()); });
  }
  const group::SubgroupPresentation& presentation_y() {
    return cached(sy_, [&] { return group::subgroup_presentation(lattice(), table_y()); });
  }

 private:
  template <class T, class Fn>
  const T& cached(std::optional<T>& slot, Fn fn) {
    if (!slot) slot.emplace(fn());
    return *slot;
  }
  group::CosetTable enumerate(const group::SubgroupSpec& s) {
    auto t = group::coset_enumerate(lattice(), s, opts_);
    t.require_complete();
    return t;
  }

  group::EnumerationOptions opts_;
  std::optional<group::CosetTable> tx_, ty_, tz_, tw_;
  std::optional<group::SubgroupSpec> dz_, zg_, w_;
  std::optional<group::FiniteQuotient> qz_;
  std::optional<group::SubgroupPresentation> sy_;
};

inline std::vector<Claim> index_claims(LatticeContext& ctx) {
  return {
      evaluate("index-X", "index of Gamma_X in the lattice", "published", "21",
               [&] { auto i = ctx.table_x().index(); return Outcome{std::to_string(i), i == 21}; }),
      evaluate("index-Y", "index of Gamma_Y in the lattice", "published", "21",
               [&] { auto i = ctx.table_y().index(); return Outcome{std::to_string(i), i == 21}; }),
  };
}

inline std::vector<Claim> normality_claims(LatticeContext& ctx) {
  return {
      evaluate("normal-Y", "Gamma_Y is normal in the lattice", "published", "true",
               [&] { bool b = group::is_normal(ctx.table_y(), group::lattice::gamma_y()); return Outcome{yes_no(b), b}; }),
      evaluate("normal-X", "Gamma_X is not normal in the lattice", "published", "false",
               [&] { bool b = group::is_normal(ctx.table_x(), group::lattice::gamma_x()); return Outcome{yes_no(b), !b}; }),
      evaluate("normal-W", "Gamma_W is normal in the lattice", "published", "true",
               [&] { bool b = group::is_normal(ctx.table_w(), ctx.spec_w()); return Outcome{yes_no(b), b}; }),
  };
}

inline std::vector<Claim> quotient_claims(LatticeContext& ctx) {
  std::vector<Claim> out;
  out.push_back(evaluate("index-Z", "Gamma_Z = (Gamma_X)' has index 294, as explicit generators too", "published", "294",
                         [&] {
                           auto a = ctx.table_z().index();
                           auto t = group::coset_enumerate(ctx.lattice(), ctx.generators_z());
                           auto b = t.index();
                           bool normal = group::is_normal(t, ctx.generators_z());
                           return Outcome{std::to_string(a) + " / " + std::to_string(b), a == 294 && b == 294 && normal,
                                          "generator description normal: " + yes_no(normal)};
                         }));
  out.push_back(evaluate("Z-in-Y", "Gamma_Z has index 14 in Gamma_Y and is normal there", "published", "14, normal",
                         [&] {
                           for (const auto& w : ctx.generators_z().generators)
                             if (ctx.table_y().act(0, w) != 0) return Outcome{"not contained", false};
                           const auto& sy = ctx.presentation_y();
                           auto inner = group::rewrite_spec(sy, ctx.generators_z());
                           auto t = group::coset_enumerate(sy.presentation(), inner);
                           bool normal = group::is_normal(t, inner);
                           return Outcome{std::to_string(t.index()) + (normal ? ", normal" : ", not normal"),
                                          t.index() == 14 && normal};
                         }));
  out.push_back(evaluate("quotient-294", "the quotient by Gamma_Z has order 294 and t1..t4 realize (D14 x C7) : C3",
                         "published", "order 294, all relators hold, generated",
                         [&] {
                           const auto& q = ctx.quotient_z();
                           auto chk = group::verify_quotient_presentation(q, group::lattice::quotient294(),
                                                                          group::lattice::t_words());
                           std::string s = "order " + q.order.str() + ", relators " +
                                           (chk.relators_hold ? "hold" : "fail") + ", " +
                                           (chk.generates ? "generated" : "not generated") + ", presented order " +
                                           chk.target_order.str();
                           return Outcome{s, q.order == 294 && chk.passed()};
                         }));
  out.push_back(evaluate("quotient-Y", "the quotient by Gamma_Y has order 21 and is nonabelian", "published",
                         "21, nonabelian", [&] {
                           auto q = group::coset_action_quotient(ctx.table_y(), ctx.lattice());
                           bool ab = q.is_abelian();
                           return Outcome{q.order.str() + (ab ? ", abelian" : ", nonabelian"), q.order == 21 && !ab};
                         }));
  out.push_back(evaluate("W-in-Y", "Gamma_W = <Gamma_Z, t2> has index 2 in Gamma_Y", "published", "2", [&] {
    const auto& sy = ctx.presentation_y();
    auto given = ctx.generators_z();
    given.generators.push_back(group::lattice::t_words()[1]);
    auto inner = group::rewrite_spec(sy, given);
    auto i = group::coset_enumerate(sy.presentation(), inner).index();
    return Outcome{std::to_string(i), i == 2, "index in the lattice " + std::to_string(ctx.table_w().index())};
  }));
  return out;
}

inline std::vector<Claim> order14_claims(LatticeContext& ctx) {
  auto t = group::lattice::t_words();
  return {
      evaluate("t1t3", "<t1, t3> has order 14 in the quotient and is abelian", "published", "14, abelian",
               [&] {
                 auto h = ctx.quotient_z().subgroup({t[0], t[2]});
                 bool ab = h.is_abelian();
                 return Outcome{h.order().str() + (ab ? ", abelian" : ", nonabelian"), h.order() == 14 && ab};
               }),
      evaluate("t1t2", "<t1, t2> has order 14 in the quotient and is nonabelian", "published", "14, nonabelian",
               [&] {
                 auto h = ctx.quotient_z().subgroup({t[0], t[1]});
                 bool ab = h.is_abelian();
                 return Outcome{h.order().str() + (ab ? ", abelian" : ", nonabelian"), h.order() == 14 && !ab};
               }),
  };
}

inline std::vector<Claim> abelian_claims(LatticeContext& ctx) {
  return {
      evaluate("abelian-X", "Gamma_X has abelianization Z/14", "published", "[14]",
               [&] {
                 auto inv = group::abelian_invariants(group::subgroup_presentation(ctx.lattice(), ctx.table_x()).presentation());
                 auto s = group::format_invariants(inv);
                 return Outcome{s, inv.free_rank == 0 && inv.torsion == std::vector<alg::Integer>{14}};
               }),
      evaluate("abelian-Z", "Gamma_Z has finite abelianization", "published", "free rank 0",
               [&] {
                 auto inv = group::abelian_invariants(group::subgroup_presentation(ctx.lattice(), ctx.table_z()).presentation());
                 return Outcome{"free rank " + std::to_string(inv.free_rank), inv.finite(),
                                "invariants " + group::format_invariants(inv)};
               }),
  };
}

inline std::vector<Claim> group_claims(LatticeContext& ctx) {
  std::vector<Claim> out;
  for (auto* f : {&index_claims, &normality_claims, &quotient_claims, &order14_claims, &abelian_claims})
    for (auto& c : (*f)(ctx)) out.push_back(std::move(c));
  return out;
}

// --------------------------------------------------------- representations

inline Claim admissible_claim() {
  return evaluate("admissible-a", "second weights a compatible with the regular-representation constraints",
                  "published", "{3, 5, 6}", [] {
                    auto r = equiv::lefschetz_admissible_a();
                    std::string s = "{";
                    for (int a : r.values) s += (s.size() > 1 ? ", " : "") + std::to_string(a);
                    s += "}";
                    return Outcome{s, r.values == std::set<int>{3, 5, 6},
                                   std::to_string(r.candidates) + " labelings, " + std::to_string(r.c3_closed) +
                                       " closed under C3"};
                  });
}

/// The 13 symbol actions for weight a satisfy every relator of the
/// order-294 presentation as matrices over QQ(zeta_7).
inline Claim relations_claim(int a) {
  return evaluate("relations-a" + std::to_string(a),
                  "symbol actions for a=" + std::to_string(a) + " satisfy the quotient relators as matrices",
                  "published", "0 failing relators", [a] {
                    auto acts = equiv::symbol_actions(equiv::canonical_symbols(a));
                    auto bad = equiv::failing_relators_as_matrices(group::lattice::quotient294(), acts,
                                                                   alg::CyclotomicField{});
                    return Outcome{std::to_string(bad.size()) + " failing relators", bad.empty()};
                  });
}

inline std::vector<Claim> rep_claims() {
  std::vector<Claim> out{admissible_claim()};
  for (int a : {3, 5, 6}) out.push_back(relations_claim(a));
  return out;
}

}  // namespace coverforge::cli
