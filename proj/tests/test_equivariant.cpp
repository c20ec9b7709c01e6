#include <gtest/gtest.h>

#include <sstream>

#include "coverforge/equivariant/action.hpp"
#include "coverforge/equivariant/representation.hpp"
#include "coverforge/equivariant/weights.hpp"
#include "coverforge/exactalg/poly_io.hpp"
#include "coverforge/fpgroup/lattice.hpp"

using namespace coverforge;
using namespace coverforge::equiv;
using alg::MultiPoly;

namespace {

const char* kZActions = R"(coords: Z0 .. Z12
action g3: Z0 Z2 Z3 Z1 Z5 Z6 Z4 Z8 Z9 Z7 Z11 Z12 Z10
action g2: -Z0 Z4 Z5 Z6 Z1 Z2 Z3 Z10 Z11 Z12 Z7 Z8 Z9
)";

ActionSet z_actions() {
  std::istringstream in(kZActions);
  return parse_action_file(in);
}

std::vector<std::string> symbol_names(const std::vector<SectionSymbol>& s) {
  std::vector<std::string> out;
  for (const auto& x : s) out.push_back(x.name);
  return out;
}

}  // namespace

TEST(Roots, FormatParseRoundTrip) {
  for (int e = 0; e < 42; ++e) {
    auto r = RootOfUnity::from_exponent(e);
    EXPECT_EQ(parse_root(format_root(r)), r) << format_root(r);
  }
  EXPECT_EQ(parse_root("-z7^3*z3"), RootOfUnity::minus_one() * RootOfUnity::zeta7(3) * RootOfUnity::zeta3(1));
  EXPECT_THROW(parse_root("z5"), ActionError);
  EXPECT_EQ(RootOfUnity::zeta7(1).order(), 7);
  EXPECT_EQ(RootOfUnity::minus_one().order(), 2);
}

TEST(Roots, EmbeddingsAreMultiplicative) {
  alg::PrimeField f(43);
  alg::CyclotomicField k;
  for (int a = 0; a < 42; ++a)
    for (int b = 0; b < 42; ++b) {
      auto ra = RootOfUnity::from_exponent(a), rb = RootOfUnity::from_exponent(b);
      EXPECT_EQ(f.mul(*embed_root(f, ra), *embed_root(f, rb)), *embed_root(f, ra * rb));
      if (a % 3 == 0 && b % 3 == 0) {
        EXPECT_EQ(k.mul(*embed_root(k, ra), *embed_root(k, rb)), *embed_root(k, ra * rb));
      }
    }
  EXPECT_EQ(*embed_root(k, RootOfUnity::zeta7(1)), k.zeta(1));
  EXPECT_FALSE(embed_root(k, RootOfUnity::zeta3(1)));
  EXPECT_FALSE(embed_root(alg::PrimeField(37), RootOfUnity::zeta7(1)));
  EXPECT_TRUE(embed_root(alg::PrimeField(37), RootOfUnity::zeta3(1)));
}

TEST(Action, IdentityFixesForms) {
  alg::QuadraticField q;
  auto zs = z_actions();
  auto f = alg::parse_poly(q, zs.coords, "Z0^2 + w*Z1*Z7 - 3*Z12^2");
  EXPECT_EQ(act_on_form(ActionGen::identity(13), f), f);
}

TEST(Action, G3OnInvariantQuadricTerms) {
  alg::QuadraticField q;
  auto zs = z_actions();
  auto f = alg::parse_poly(q, zs.coords, "Z1*Z11 + Z4*Z8");
  EXPECT_EQ(act_on_form(zs.get("g3"), f), alg::parse_poly(q, zs.coords, "Z2*Z12 + Z5*Z9"));
}

TEST(Action, OrdersAndInvolution) {
  alg::RationalField q;
  auto zs = z_actions();
  EXPECT_EQ(zs.get("g3").order(), 3);
  EXPECT_EQ(zs.get("g2").order(), 2);
  auto f = alg::parse_poly(q, zs.coords, "Z0*Z1*Z7 + 2*Z3^2 - Z12*Z5");
  const auto& g2 = zs.get("g2");
  EXPECT_EQ(act_on_form(g2, act_on_form(g2, f)), f);
  EXPECT_EQ(act_on_form(g2, alg::parse_poly(q, zs.coords, "Z0")), alg::parse_poly(q, zs.coords, "-Z0"));
  // Composition matches successive substitution.
  auto g = g2.then(zs.get("g3"));
  EXPECT_EQ(act_on_form(g, f), act_on_form(zs.get("g3"), act_on_form(g2, f)));
  EXPECT_EQ(g.then(g.inverse()), ActionGen::identity(13));
}

TEST(Action, FormatParseRoundTripAndErrors) {
  auto zs = z_actions();
  for (const auto& g : zs.gens) {
    std::string line = format_action_line(g, zs.coords);
    auto colon = line.find(':');
    EXPECT_EQ(parse_action_line(g.name, line.substr(colon + 1), zs.coords), g);
  }
  EXPECT_THROW(parse_action_line("bad", "Z0 Z0 Z1", {"Z0", "Z1", "Z2"}), ActionError);
  EXPECT_THROW(parse_action_line("bad", "Z0 Z1", {"Z0", "Z1", "Z2"}), ActionError);
  alg::RationalField q;
  auto f = alg::parse_poly(q, {"x", "y"}, "x*y");
  EXPECT_THROW(act_on_form(zs.get("g3"), f), ActionError);
}

TEST(Action, MissingRootIsReported) {
  alg::RationalField q;
  ActionGen g{"s", {0, 1}, {RootOfUnity::zeta7(1), RootOfUnity::one()}};
  auto f = alg::parse_poly(q, {"x", "y"}, "x + y");
  EXPECT_THROW(act_on_form(g, f), ActionError);
  alg::PrimeField p(43);
  auto fp = alg::parse_poly(p, {"x", "y"}, "x + y");
  auto out = act_on_form(g, fp);
  EXPECT_EQ(out.coefficient(alg::Monomial::variable(2, 0)), *embed_root(p, RootOfUnity::zeta7(1)));
}

TEST(Symbols, CanonicalWeightsAreDistinct) {
  auto s = canonical_symbols(3);
  ASSERT_EQ(s.size(), 13u);
  EXPECT_EQ(symbol_names(s)[0], "r0_0");
  EXPECT_EQ(symbol_names(s)[1], "r1_1");
  EXPECT_EQ(symbol_names(s)[2], "rm1_1");
  EXPECT_EQ(s[3].weight, WeightPair(4, 2));
  EXPECT_EQ(s[7].weight, WeightPair(1, 3));
  EXPECT_THROW(canonical_symbols(1), ActionError);
}

TEST(Symbols, C3OrbitOfWeightOneOne) {
  auto s = canonical_symbols(3);
  auto acts = symbol_actions(s);
  const auto& t2 = acts[1];
  const auto& t3 = acts[2];
  const auto& t4 = acts[3];
  alg::CyclotomicField k;
  auto names = symbol_names(s);
  auto r11 = alg::parse_poly(k, names, "r1_1");
  auto orbit = c3_orbit(r11, t4);
  ASSERT_EQ(orbit.size(), 3u);
  std::vector<WeightPair> ws;
  for (const auto& f : orbit)
    ws.emplace_back(diagonal_weight(t2, f)->e / 6, diagonal_weight(t3, f)->e / 6);
  EXPECT_EQ(ws, (std::vector<WeightPair>{{1, 1}, {4, 2}, {2, 4}}));
  EXPECT_THROW(c3_orbit(r11, acts[0]), ActionError);
  auto inv = alg::parse_poly(k, names, "r0_0^2 + r1_1*r4_2*r2_4");
  auto o2 = c3_orbit(inv, t4);
  EXPECT_EQ(o2[0], o2[1]);
  EXPECT_EQ(o2[1], o2[2]);
}

TEST(Symbols, ActionsSatisfyQuotientRelations) {
  const auto& q = group::lattice::quotient294();
  for (int a : {3, 5, 6}) {
    auto acts = symbol_actions(canonical_symbols(a));
    EXPECT_TRUE(failing_relators(q, acts).empty()) << "a=" << a;
  }
  // With letters applied right to left the t4-conjugation relators fail.
  auto acts = symbol_actions(canonical_symbols(3));
  std::size_t bad = 0;
  for (const auto& r : q.relators) {
    ActionGen m = ActionGen::identity(13);
    for (const auto& l : r.letters()) m = acts.at(static_cast<std::size_t>(l.gen)).pow(l.exp).then(m);
    if (!(m == ActionGen::identity(13))) ++bad;
  }
  EXPECT_GT(bad, 0u);
}

TEST(Weights, CanonicalSymbolsOnePerWeight) {
  auto s = canonical_symbols(3);
  auto acts = symbol_actions(s);
  alg::CyclotomicField k;
  auto names = symbol_names(s);
  std::vector<MultiPoly<alg::CyclotomicField>> space;
  for (const auto& n : names) space.push_back(alg::parse_poly(k, names, n));
  auto dec = weight_decompose(space, acts[1], acts[2]);
  EXPECT_EQ(dec.size(), 13u);
  for (std::size_t i = 0; i < s.size(); ++i) {
    ASSERT_TRUE(dec.count(s[i].weight));
    EXPECT_EQ(dec[s[i].weight].size(), 1u);
  }
  EXPECT_EQ(dec[WeightPair(0, 0)][0], space[0]);
}

TEST(Weights, BinaryQuadraticsUnderOppositeScalings) {
  alg::PrimeField p(43);
  ActionGen g{"g", {0, 1}, {RootOfUnity::zeta7(1), RootOfUnity::zeta7(-1)}};
  auto h = ActionGen::identity(2, "h");
  std::vector<std::string> v{"x", "y"};
  std::vector<MultiPoly<alg::PrimeField>> space{alg::parse_poly(p, v, "x^2"), alg::parse_poly(p, v, "x*y"),
                                                alg::parse_poly(p, v, "y^2")};
  auto dec = weight_decompose(space, g, h);
  ASSERT_EQ(dec.size(), 3u);
  for (auto w : {WeightPair(2, 0), WeightPair(0, 0), WeightPair(-2, 0)}) EXPECT_EQ(dec[w].size(), 1u);
  // Mixed basis forces the linear-algebra route.
  std::vector<MultiPoly<alg::PrimeField>> mixed{space[0] + space[1], space[1] - space[2], space[2]};
  auto dec2 = weight_decompose(mixed, g, h);
  ASSERT_EQ(dec2.size(), 3u);
  for (auto w : {WeightPair(2, 0), WeightPair(0, 0), WeightPair(-2, 0)}) {
    ASSERT_EQ(dec2[w].size(), 1u);
    EXPECT_TRUE(diagonal_weight(g, dec2[w][0]).has_value());
  }
}

TEST(Weights, SymmetricSquareRotationInvariantPart) {
  auto s = canonical_symbols(3);
  auto acts = symbol_actions(s);
  alg::CyclotomicField k;
  std::vector<MultiPoly<alg::CyclotomicField>> sym2;
  for (const auto& m : alg::monomials_of_degree(13, 2))
    sym2.push_back(MultiPoly<alg::CyclotomicField>::monomial(k, m, k.one()));
  auto dec = weight_decompose(sym2, acts[1], acts[2]);
  std::size_t total = 0, first_zero = 0;
  for (const auto& [w, v] : dec) {
    total += v.size();
    if (w.i == 0) first_zero += v.size();
  }
  EXPECT_EQ(total, 91u);
  // Independent count: pairs of symbols whose weights cancel.
  std::size_t both = 0, first = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) {
      auto w = s[i].weight + s[j].weight;
      if (w.i == 0) ++first;
      if (w == WeightPair(0, 0)) ++both;
    }
  EXPECT_EQ(first, 13u);
  EXPECT_EQ(first_zero, first);
  EXPECT_EQ(dec[WeightPair(0, 0)].size(), both);
  EXPECT_EQ(both, 1u);  // only r0_0^2 for a = 3
}

TEST(Weights, RejectsBadInput) {
  alg::PrimeField p(43);
  std::vector<std::string> v{"x", "y"};
  ActionGen g{"g", {0, 1}, {RootOfUnity::zeta7(1), RootOfUnity::one()}};
  ActionGen swap{"s", {1, 0}, {RootOfUnity::one(), RootOfUnity::one()}};
  std::vector<MultiPoly<alg::PrimeField>> space{alg::parse_poly(p, v, "x"), alg::parse_poly(p, v, "y")};
  EXPECT_THROW(weight_decompose(space, g, swap), ActionError);
  ActionGen h{"h", {0, 1}, {RootOfUnity::one(), RootOfUnity::zeta7(2)}};
  // A 7-cycle and a diagonal scaling: both of order 7, not commuting.
  ActionGen cyc{"c", {1, 2, 3, 4, 5, 6, 0}, std::vector<RootOfUnity>(7)};
  ActionGen d = ActionGen::identity(7, "d");
  d.scalar[0] = RootOfUnity::zeta7(1);
  auto x0 = MultiPoly<alg::PrimeField>::monomial(p, alg::Monomial::variable(7, 0), p.one());
  EXPECT_THROW(weight_decompose(std::vector{x0}, cyc, d), ActionError);
  // x alone is not stable under the 7-cycle.
  EXPECT_THROW(weight_decompose(std::vector{x0}, cyc, ActionGen::identity(7)), ActionError);
  EXPECT_NO_THROW(weight_decompose(std::vector{space[0]}, g, h));
  alg::PrimeField p37(37);
  std::vector<MultiPoly<alg::PrimeField>> s37{alg::parse_poly(p37, v, "x")};
  EXPECT_THROW(weight_decompose(s37, g, h), ActionError);
  std::vector<MultiPoly<alg::PrimeField>> dep{space[0], space[0].scaled(3)};
  EXPECT_THROW(weight_decompose(dep, g, h), ActionError);
}

TEST(Representation, RegularCheckExamples) {
  EXPECT_TRUE(regular_rep_check(decomposition_for(3)));
  auto wrong = decomposition_for(3);
  wrong[0] = RepLabel::plus(0);
  EXPECT_FALSE(regular_rep_check(wrong));
  EXPECT_FALSE(regular_rep_check(decomposition_for(2)));
  EXPECT_THROW(regular_rep_check({RepLabel::plus(0)}), ActionError);
}

TEST(Representation, AdmissibleSecondWeights) {
  auto res = lefschetz_admissible_a();
  EXPECT_EQ(res.values, (std::set<int>{3, 5, 6}));
  EXPECT_GT(res.regular, res.c3_closed);
  AdmissibleOptions up_to_inverse;
  up_to_inverse.identify_inverse = true;
  EXPECT_EQ(lefschetz_admissible_a(up_to_inverse).values, (std::set<int>{3, 6}));
}

TEST(Symbols, RelatorsHoldAsCyclotomicMatrices) {
  const auto& q = group::lattice::quotient294();
  const alg::CyclotomicField k;
  for (int a : {3, 5, 6}) {
    auto acts = symbol_actions(canonical_symbols(a));
    EXPECT_TRUE(failing_relators_as_matrices(q, acts, k).empty()) << "a=" << a;
  }
  // swapping t1 and t4 breaks t1^2 = 1
  auto acts = symbol_actions(canonical_symbols(3));
  std::swap(acts[0], acts[3]);
  EXPECT_FALSE(failing_relators_as_matrices(q, acts, k).empty());
}
