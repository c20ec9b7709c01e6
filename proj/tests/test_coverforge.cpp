#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "coverforge/cover/divisor.hpp"
#include "coverforge/cover/double_cover.hpp"
#include "coverforge/cover/emit.hpp"
#include "coverforge/cover/fixtures.hpp"
#include "coverforge/cover/multable.hpp"
#include "coverforge/cover/interpolate.hpp"
#include "coverforge/cover/io.hpp"
#include "coverforge/cover/model.hpp"
#include "coverforge/cover/purity.hpp"
#include "coverforge/cover/sections.hpp"
#include "coverforge/cover/sampling.hpp"
#include "coverforge/exactalg/univariate.hpp"
#include "coverforge/verify/solve.hpp"

using namespace coverforge;
using namespace coverforge::cover;

namespace {

const PrimeField F43(43);

FpModel make_model(const PrimeField& f, std::vector<std::string> coords, const std::vector<std::string>& eqs,
                   std::string name = "fixture") {
  FpModel m;
  m.name = std::move(name);
  m.field = f;
  m.coords = std::move(coords);
  for (const auto& e : eqs) m.ideal.push_back(alg::parse_poly(f, m.coords, e));
  m.actions.coords = m.coords;
  return m;
}

// Span equality of two lists of forms of one degree.
std::size_t span_rank(const std::vector<FpPoly>& ps, std::size_t nvars, unsigned degree) {
  auto basis = alg::monomials_of_degree(nvars, degree);
  std::map<Monomial, std::size_t> idx;
  for (std::size_t k = 0; k < basis.size(); ++k) idx.emplace(basis[k], k);
  alg::Matrix<PrimeField> m(ps.front().field(), 0, basis.size());
  for (const auto& p : ps) {
    std::vector<std::uint32_t> row(basis.size(), 0);
    for (const auto& [mono, c] : p.terms()) row[idx.at(mono)] = c;
    m.append_row(row);
  }
  return alg::rank(m);
}

bool same_span(const std::vector<FpPoly>& a, const std::vector<FpPoly>& b, std::size_t nvars, unsigned degree) {
  auto both = a;
  both.insert(both.end(), b.begin(), b.end());
  auto r = span_rank(both, nvars, degree);
  return r == span_rank(a, nvars, degree) && r == span_rank(b, nvars, degree);
}

// Kernel of the evaluation matrix on all monomials of the degree, for
// points produced directly by a parametrization.
std::vector<FpPoly> brute_force_kernel(const PrimeField& f, const std::vector<Point>& pts, std::size_t nvars,
                                       unsigned degree) {
  auto basis = alg::monomials_of_degree(nvars, degree);
  alg::Matrix<PrimeField> m(f, 0, basis.size());
  for (const auto& p : pts) {
    std::vector<std::uint32_t> row;
    for (const auto& mono : basis) {
      std::uint32_t v = 1;
      for (std::size_t i = 0; i < nvars; ++i) v = f.mul(v, f.pow(p[i], mono[i]));
      row.push_back(v);
    }
    m.append_row(row);
  }
  std::vector<FpPoly> out;
  for (const auto& v : alg::kernel(m))
    out.push_back(alg::combine_monomials(f, nvars, std::span<const Monomial>(basis), v));
  return out;
}

std::vector<Point> twisted_cubic_points(const PrimeField& f) {
  std::vector<Point> out;
  for (std::uint32_t s = 0; s < f.p; ++s) {
    std::uint32_t t = 1;
    out.push_back({f.pow(s, 3), f.mul(f.pow(s, 2), t), s, 1});
  }
  out.push_back({1, 0, 0, 0});
  return out;
}

std::vector<Point> veronese_points(const PrimeField& f, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> c(0, f.p - 1);
  std::vector<Point> out;
  while (out.size() < count) {
    auto x = c(rng), y = c(rng), z = c(rng);
    if (!x && !y && !z) continue;
    out.push_back({f.mul(x, x), f.mul(y, y), f.mul(z, z), f.mul(x, y), f.mul(x, z), f.mul(y, z)});
  }
  return out;
}

FpModel twisted_cubic_model() {
  return make_model(F43, {"x0", "x1", "x2", "x3"}, {"x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"}, "twisted cubic");
}

FpModel veronese_model() {
  // coordinates x^2, y^2, z^2, xy, xz, yz
  return make_model(F43, {"a", "b", "c", "d", "e", "f"},
                    {"a*b - d^2", "a*c - e^2", "b*c - f^2", "a*f - d*e", "b*e - d*f", "c*d - e*f"}, "Veronese surface");
}

}  // namespace

// ---------------------------------------------------------------- roots, solve

TEST(Univariate, RootsMatchBruteForce) {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {43u, 97u, 7u, 2u}) {
    PrimeField f(p);
    std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
    for (int trial = 0; trial < 30; ++trial) {
      alg::UniPoly a(1 + trial % 9);
      for (auto& x : a) x = c(rng);
      a.push_back(1);
      std::vector<std::uint32_t> brute;
      for (std::uint32_t x = 0; x < p; ++x)
        if (alg::uni_eval(f, a, x) == 0) brute.push_back(x);
      EXPECT_EQ(alg::uni_roots(f, a, static_cast<std::uint64_t>(trial)), brute) << "p=" << p;
    }
  }
  EXPECT_THROW(alg::uni_roots(F43, {}), alg::ArithmeticError);
}

TEST(Solve, ZeroDimensionalSystems) {
  std::vector<std::string> v{"x", "y"};
  // circle x^2 + y^2 = 1 meets the line y = 2x in two points mod 43 iff 5 is
  // a square; it is not, so no points; over GF(41) there are two.
  auto sys = [&](const PrimeField& f) {
    return std::vector<FpPoly>{alg::parse_poly(f, v, "x^2 + y^2 - 1"), alg::parse_poly(f, v, "y - 2*x")};
  };
  EXPECT_TRUE(verify::solve_zero_dim(sys(F43)).empty());
  PrimeField f41(41);
  auto sols = verify::solve_zero_dim(sys(f41));
  ASSERT_EQ(sols.size(), 2u);
  for (const auto& s : sols)
    for (const auto& g : sys(f41)) EXPECT_EQ(g.evaluate(std::span<const std::uint32_t>(s)), 0u);
  EXPECT_THROW(verify::solve_zero_dim({alg::parse_poly(F43, v, "x*y")}), verify::VerifyError);
}

// ---------------------------------------------------------------- sampling

TEST(Sampling, ConicOverGF7HasExactlyEightPoints) {
  PrimeField f7(7);
  auto conic = make_model(f7, {"x", "y", "z"}, {"x^2 + y*z"});
  // Oracle: enumerate P^2(GF(7)).
  std::size_t brute = 0;
  for (std::uint32_t a = 0; a < 7; ++a)
    for (std::uint32_t b = 0; b < 7; ++b)
      for (std::uint32_t c = 0; c < 7; ++c) {
        Point p{a, b, c};
        if (!a && !b && !c) continue;
        if (normalize_point(f7, p) != p) continue;
        if (on_model(conic.ideal, p)) ++brute;
      }
  EXPECT_EQ(brute, 8u);
  for (auto strat : {SampleStrategy::Exhaustive, SampleStrategy::Slicing}) {
    SampleOptions o;
    o.strategy = strat;
    auto s = sample_points(conic, 8, o);
    EXPECT_EQ(s.size(), 8u) << strategy_name(strat);
    EXPECT_EQ(std::set<Point>(s.points.begin(), s.points.end()).size(), 8u);
    for (const auto& p : s.points) EXPECT_TRUE(on_model(conic.ideal, p));
  }
  SampleOptions ex;
  ex.strategy = SampleStrategy::Exhaustive;
  EXPECT_THROW(sample_points(conic, 9, ex), CoverError);
  SampleOptions sl;
  sl.budget = 300;
  EXPECT_THROW(sample_points(conic, 9, sl), CoverError);
  EXPECT_THROW(sample_points(conic, 58, sl), CoverError);  // more than |P^2(GF(7))|
}

TEST(Sampling, DeterministicDistinctAndOnModel) {
  auto m = veronese_model();
  for (auto strat : {SampleStrategy::Slicing, SampleStrategy::Substitution}) {
    SampleOptions o;
    o.strategy = strat;
    o.seed = 11;
    auto a = sample_points(m, 40, o);
    auto b = sample_points(m, 40, o);
    EXPECT_EQ(a.points, b.points);
    EXPECT_EQ(std::set<Point>(a.points.begin(), a.points.end()).size(), 40u);
    for (const auto& p : a.points) EXPECT_TRUE(on_model(m.ideal, p));
  }
  SampleOptions o;
  o.seed = 3;
  auto first = sample_points(m, 30, o);
  o.exclude = first.points;
  o.seed = 4;
  auto second = sample_points(m, 30, o);
  for (const auto& p : second.points) EXPECT_EQ(std::count(first.points.begin(), first.points.end(), p), 0);
}

TEST(Sampling, FileStrategyChecksPoints) {
  auto m = twisted_cubic_model();
  SampleOptions o;
  o.strategy = SampleStrategy::File;
  o.file_points = twisted_cubic_points(F43);
  EXPECT_EQ(sample_points(m, 10, o).size(), 10u);
  o.file_points.push_back({1, 1, 1, 2});
  EXPECT_THROW(sample_points(m, 50, o), CoverError);
}

// ---------------------------------------------------------------- interpolation

TEST(Interpolation, TwistedCubicThreeQuadrics) {
  auto m = twisted_cubic_model();
  InterpolationReport rep;
  auto rels = interpolate_model(m, 2, {}, 7, {}, 20, &rep);
  ASSERT_EQ(rels.size(), 3u);
  EXPECT_EQ(rep.monomials, 10u);
  auto oracle = brute_force_kernel(F43, twisted_cubic_points(F43), 4, 2);
  ASSERT_EQ(oracle.size(), 3u);
  EXPECT_TRUE(same_span(rels, oracle, 4, 2));
  // Cubics: h(3) = 10 so 20 - 10 = 10 relations. The curve has only 44
  // points over GF(43), so the fresh sample is kept small.
  EXPECT_EQ(interpolate_model(m, 3, {}, 8, {}, 10).size(), 10u);
}

TEST(Interpolation, VeroneseSixQuadrics) {
  auto m = veronese_model();
  auto rels = interpolate_model(m, 2, {}, 9);
  ASSERT_EQ(rels.size(), 6u);
  auto oracle = brute_force_kernel(F43, veronese_points(F43, 60, 1), 6, 2);
  ASSERT_EQ(oracle.size(), 6u);
  EXPECT_TRUE(same_span(rels, oracle, 6, 2));
  // Relations also lie in the ideal of the fixture.
  auto gb = verify::groebner_basis(m.ideal);
  for (const auto& r : rels) EXPECT_TRUE(gb.contains(r));
}

TEST(Interpolation, TooFewPointsAndFreshFailure) {
  auto m = twisted_cubic_model();
  SampleOptions o;
  auto pts = sample_points(m, 5, o);
  o.exclude = pts.points;
  o.seed = 2;
  auto fresh = sample_points(m, 10, o);
  EXPECT_THROW(interpolate_vanishing_forms(pts, 2, 4, {}, fresh), CoverError);
  // Three points of the curve that lie on the plane x1 = x2: that plane
  // shows up as a false linear relation and the fresh sample rejects it.
  PointSample special{F43, {{1, 0, 0, 0}, {0, 0, 0, 1}, {1, 1, 1, 1}}, 0, SampleStrategy::File};
  SampleOptions so;
  so.exclude = special.points;
  so.seed = 5;
  auto fresh2 = sample_points(m, 10, so);
  InterpolationOptions io;
  io.margin = 0.75;
  try {
    interpolate_vanishing_forms(special, 1, 4, {}, fresh2, io);
    ADD_FAILURE() << "special sample accepted";
  } catch (const CoverError& e) {
    EXPECT_NE(std::string(e.what()).find("fresh-sample verification failed"), std::string::npos) << e.what();
  }
  io.verify_fresh = false;
  auto bogus = interpolate_vanishing_forms(special, 1, 4, {}, fresh2, io);
  ASSERT_EQ(bogus.size(), 1u);
  EXPECT_EQ(bogus[0], alg::parse_poly(F43, m.coords, "x1 - x2"));
}

// ---------------------------------------------------------------- model files

TEST(ModelFile, PlaneRoundTripAndDimension) {
  auto m = parse_model_string("name: plane\nfield: GF(43)\nvars: x y z\nmeta source: test\n");
  validate_model(m);
  EXPECT_EQ(m.dimension, 2);
  EXPECT_EQ(m.meta.at("source"), "test");
  auto text = format_model(m);
  EXPECT_EQ(format_model(parse_model_string(text)), text);
}

TEST(ModelFile, KleinQuarticActionsValidate) {
  const std::string head =
      "name: Klein quartic\nfield: QQ\nvars: x y z\n"
      "action h: z7*x z7^4*y z7^2*z\n"
      "action c: y z x\n";
  auto good = parse_model_string(head + "x^3*y + y^3*z + z^3*x\n");
  validate_model(good);
  EXPECT_EQ(good.dimension, 1);
  auto text = format_model(good);
  EXPECT_EQ(format_model(parse_model_string(text)), text);

  auto bad = parse_model_string(head + "x^3*y + 2*y^3*z + z^3*x\n");
  try {
    validate_model(bad);
    ADD_FAILURE() << "corrupted quartic validated";
  } catch (const CoverError& e) {
    EXPECT_NE(std::string(e.what()).find("not stable under action"), std::string::npos) << e.what();
  }
}

TEST(ModelFile, ErrorsCarryLineNumbers) {
  try {
    parse_model_string("field: QQ\nvars: x y z\naction c: y z w\nx*y\n");
    ADD_FAILURE();
  } catch (const alg::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    parse_model_string("field: QQ\nvars: x y z\n\nx*y +* z\n");
    ADD_FAILURE();
  } catch (const alg::ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  auto inhom = parse_model_string("field: QQ\nvars: x y z\nx^2 + y\n");
  EXPECT_THROW(validate_model(inhom), CoverError);
  EXPECT_THROW(load_model_file("/nonexistent/model.txt"), CoverError);
}

// ---------------------------------------------------------------- divisors

namespace {

CurveCondition point_condition(const std::vector<std::string>& coords, std::vector<std::string> forms,
                               unsigned mult, std::string label) {
  CurveCondition c;
  c.label = std::move(label);
  for (const auto& f : forms) c.forms.push_back(alg::parse_poly(F43, coords, f));
  c.multiplicity = mult;
  return c;
}

}  // namespace

TEST(Divisor, LineThroughTwoPoints) {
  auto plane = make_model(F43, {"x", "y", "z"}, {});
  DivisorConstraint d;
  // (3,4,5) and (5,12,13)
  d.curves.push_back(point_condition(plane.coords, {"4*x - 3*y", "5*x - 3*z"}, 1, "p1"));
  d.curves.push_back(point_condition(plane.coords, {"12*x - 5*y", "13*x - 5*z"}, 1, "p2"));
  SectionSearchReport rep;
  auto line = find_section_with_divisor(plane, 1, d, {}, &rep);
  EXPECT_EQ(rep.candidates, 3u);
  EXPECT_EQ(rep.solution_dimension, 1u);
  // Oracle: cross product (3,4,5) x (5,12,13) = (-8, -14, 16).
  auto oracle = alg::parse_poly(F43, plane.coords, "-8*x - 14*y + 16*z");
  EXPECT_EQ(span_rank({line, oracle}, 3, 1), 1u);
  // normalized on x, the lex-first candidate
  EXPECT_EQ(line, oracle.scaled(F43.inv(F43.from_int(-8))));
}

TEST(Divisor, DoubleContactOnConicIsSquareOfLine) {
  auto conic = make_model(F43, {"x", "y", "z"}, {"x^2 + y^2 - z^2"});
  DivisorConstraint d;
  d.curves.push_back(point_condition(conic.coords, {"4*x - 3*y", "5*x - 3*z"}, 2, "p1"));
  d.curves.push_back(point_condition(conic.coords, {"12*x - 5*y", "13*x - 5*z"}, 2, "p2"));
  SectionSearchReport rep;
  auto f = find_section_with_divisor(conic, 2, d, {}, &rep);
  EXPECT_EQ(rep.candidates, 5u);
  auto l = alg::parse_poly(F43, conic.coords, "-8*x - 14*y + 16*z");
  auto gb = verify::groebner_basis(conic.ideal);
  EXPECT_EQ(span_rank({gb.normal_form(f), gb.normal_form(l * l)}, 3, 2), 1u);
  EXPECT_FALSE(gb.contains(f));

  // Simple contact at both points leaves a 3-dimensional family.
  d.curves[0].multiplicity = d.curves[1].multiplicity = 1;
  EXPECT_THROW(find_section_with_divisor(conic, 2, d), CoverError);
  d.curves[0].sign = DivisorSign::Pole;
  EXPECT_THROW(find_section_with_divisor(conic, 2, d), CoverError);
}

TEST(Divisor, EigenConditionPicksInvariantLine) {
  auto plane = make_model(F43, {"x", "y", "z"}, {});
  auto c = equiv::parse_action_line("c", "y z x", plane.coords);
  SectionSearchOptions o;
  o.eigen.push_back({c, equiv::RootOfUnity{}});
  auto f = find_section_with_divisor(plane, 1, {}, o);
  EXPECT_EQ(f, alg::parse_poly(F43, plane.coords, "x + y + z"));
  // Degree 2 invariants span x^2+y^2+z^2 and xy+yz+zx.
  EXPECT_THROW(find_section_with_divisor(plane, 2, {}, o), CoverError);
}

// ---------------------------------------------------------------- double cover

namespace {

// Dimension of the kernel of a linear map given by the images of a basis,
// computed on normal forms modulo gb.
std::size_t kernel_dim_mod(const verify::GroebnerBasis& gb, const std::vector<FpPoly>& images) {
  std::vector<FpPoly> nfs;
  std::set<Monomial> mons;
  for (const auto& g : images) {
    nfs.push_back(gb.normal_form(g));
    for (const auto& [m, c] : nfs.back().terms()) mons.insert(m);
  }
  std::vector<Monomial> ml(mons.begin(), mons.end());
  std::map<Monomial, std::size_t> idx;
  for (std::size_t k = 0; k < ml.size(); ++k) idx.emplace(ml[k], k);
  const auto& f = gb.field();
  alg::Matrix<PrimeField> m(f, 0, images.size());
  std::vector<std::vector<std::uint32_t>> cols(ml.size(), std::vector<std::uint32_t>(images.size(), 0));
  for (std::size_t j = 0; j < nfs.size(); ++j)
    for (const auto& [mono, c] : nfs[j].terms()) cols[idx.at(mono)][j] = c;
  for (const auto& r : cols) m.append_row(r);
  return images.size() - alg::rank(m);
}

}  // namespace

TEST(DoubleCover, ConicWithTwoExtraCoordinates) {
  const PrimeField f(127);
  auto y = make_model(f, {"U0", "U1", "U2"}, {"U0*U2 - U1^2"}, "conic");
  auto u10 = alg::parse_poly(f, y.coords, "U0^2 + U0*U1 + 3*U1*U2 + 5*U2^2");
  auto q1 = alg::parse_poly(f, y.coords, "U0*U1 + 2*U2^2");
  DoubleCoverReport rep;
  auto w = build_double_cover(y, u10, {q1}, {}, &rep);
  ASSERT_EQ(w.nvars(), 5u);

  // Oracle, on Y: P3 = U10/r, P4 = Q1/r with r^2 = U10. An even relation
  // A(U) + b33 P3^2 + b34 P3 P4 + b44 P4^2 holds iff
  // A U10 + b33 U10^2 + b34 U10 Q1 + b44 Q1^2 lies in I(Y); an odd one
  // sum C_ik U_i P_{3+k} iff sum C_ik U_i Q_k lies in I(Y).
  auto gb = verify::groebner_basis(y.ideal);
  std::vector<FpPoly> even, odd;
  for (const auto& m : alg::monomials_of_degree(3, 2)) even.push_back(FpPoly::monomial(f, m, 1) * u10);
  even.push_back(u10 * u10);
  even.push_back(u10 * q1);
  even.push_back(q1 * q1);
  for (std::size_t i = 0; i < 3; ++i)
    for (const auto& q : {u10, q1}) odd.push_back(FpPoly::variable(f, 3, i) * q);
  EXPECT_EQ(rep.even, kernel_dim_mod(gb, even));
  EXPECT_EQ(rep.odd, kernel_dim_mod(gb, odd));
  EXPECT_EQ(w.ideal.size(), rep.even + rep.odd);
  // frozen from the oracle above
  EXPECT_EQ(rep.even, 3u);
  EXPECT_EQ(rep.odd, 0u);
  for (const auto& r : w.ideal) EXPECT_TRUE(equiv::diagonal_weight(w.actions.gens[0], r).has_value());
  // P3 P4 - Q1(U) is a relation.
  auto ident = alg::parse_poly(f, w.coords, "P3*P4 - P0*P1 - 2*P2^2");
  auto wgb = verify::groebner_basis(w.ideal);
  EXPECT_TRUE(wgb.contains(ident));
}

TEST(DoubleCover, RejectsBadInput) {
  const PrimeField f(127);
  auto y = make_model(f, {"U0", "U1", "U2"}, {"U0*U2 - U1^2"});
  EXPECT_THROW(build_double_cover(y, alg::parse_poly(f, y.coords, "U0*U2 - U1^2"), {}), CoverError);
  EXPECT_THROW(build_double_cover(y, alg::parse_poly(f, y.coords, "U0"), {}), CoverError);
}

// ---------------------------------------------------------------- weighted sections

namespace {

// P^5 with iota = (+,-,+,+,-,+) and C7 weights (4,4,2,6,1,5).
FpModel sections_fixture(const std::vector<std::string>& eqs) {
  auto m = make_model(F43, default_coords("P", 6), eqs, "sections fixture");
  return m;
}

equiv::ActionGen weights_action(const std::vector<int>& w, const std::string& name) {
  auto g = equiv::ActionGen::identity(w.size(), name);
  for (std::size_t i = 0; i < w.size(); ++i) g.scalar[i] = equiv::RootOfUnity::zeta7(w[i]);
  return g;
}

}  // namespace

TEST(WeightedSections, ThreeSolvesSixDoesNot) {
  auto w = sections_fixture({"P0^2 - 6*P1^2 - 5*P2*P3", "P4^2 - P0*P5"});
  auto iota = equiv::ActionGen::identity(6, "iota");
  iota.scalar[1] = iota.scalar[4] = equiv::RootOfUnity::minus_one();
  auto h = weights_action({4, 4, 2, 6, 1, 5}, "h");
  SectionsReport rep;
  auto sols = find_weighted_sections(w, iota, h, 3, {}, &rep);
  ASSERT_EQ(sols.size(), 1u);
  EXPECT_EQ(rep.raw_solutions, 2u);  // s1 and s2 = iota(s1)
  // sqrt(6) mod 43: 7^2 = 49 = 6
  auto s1a = alg::parse_poly(F43, w.coords, "P0 + 7*P1");
  auto s1b = alg::parse_poly(F43, w.coords, "P0 - 7*P1");
  EXPECT_TRUE(sols[0].s1 == s1a || sols[0].s1 == s1b);
  EXPECT_EQ(sols[0].s2, equiv::act_on_form(iota, sols[0].s1));
  EXPECT_EQ(sols[0].s3, alg::parse_poly(F43, w.coords, "P2"));
  EXPECT_EQ(sols[0].s4, alg::parse_poly(F43, w.coords, "5*P3"));
  EXPECT_TRUE(find_weighted_sections(w, iota, h, 6).empty());
  EXPECT_TRUE(find_weighted_sections(w, iota, h, 5).empty());

  // With P2 P3 in the ideal any s4 works: a family, not a finite set.
  auto deg = sections_fixture({"P0^2 - 6*P1^2", "P2*P3", "P4^2 - P0*P5"});
  EXPECT_THROW(find_weighted_sections(deg, iota, h, 3), CoverError);
}

// ---------------------------------------------------------------- multiplication table

TEST(MulTable, TrueTableIsAssociativeAndEquivariant) {
  auto truth = fixtures::cyclic_true_table();
  EXPECT_TRUE(weight_additive(truth));
  EXPECT_TRUE(c3_equivariant(truth));
  auto pts = table_points(truth, fixtures::plane_model(), 30, 3);
  EXPECT_EQ(associativity_failures(truth, pts), 0u);
  // Product weights add: e_4 e_2 lands on e_6 = r_{-1,1}/r_{0,0}, e_2^2 on e_4.
  EXPECT_EQ(truth.labels[static_cast<std::size_t>(truth.at(4, 2).target)], "rm1_1/r0_0");
  EXPECT_EQ(truth.labels[static_cast<std::size_t>(truth.at(2, 2).target)], "r4_2/r0_0");
}

TEST(MulTable, RawTableFixesToTheTrueOneUpToGauge) {
  auto base = fixtures::plane_model();
  auto truth = fixtures::cyclic_true_table();
  auto raw = fixtures::cyclic_raw_table(11);
  EXPECT_TRUE(c3_equivariant(raw));
  auto pts = table_points(raw, base, 30, 5);
  EXPECT_GT(associativity_failures(raw, pts), 0u);
  FixReport rep;
  auto fixed = fix_scalings_by_associativity(raw, base, {}, &rep);
  EXPECT_EQ(fixed.state, ScalingState::AssociativityFixed);
  EXPECT_EQ(rep.unknowns, 12u);
  EXPECT_EQ(rep.failures_after, 0u);
  EXPECT_EQ(associativity_failures(fixed, table_points(fixed, base, 30, 99)), 0u);
  EXPECT_TRUE(c3_equivariant(fixed));
  EXPECT_EQ(fixed.at(1, 1).scale, 1u);
  EXPECT_EQ(fixed.at(3, 3).scale, 1u);
  const auto& f = fixed.field;
  auto alpha = f.div(fixed.at(1, 1).scale, truth.at(1, 1).scale);
  auto beta = f.div(fixed.at(3, 3).scale, truth.at(3, 3).scale);
  EXPECT_EQ(fixed.products, fixtures::rescale_basis(truth, alpha, beta).products) << "solutions: " << rep.solutions;
  EXPECT_EQ(fix_scalings_by_associativity(truth, base).products, fixed.products);
}

TEST(MulTable, GaugeInvariance) {
  auto base = fixtures::plane_model();
  auto raw = fixtures::cyclic_raw_table(3);
  auto fixed = fix_scalings_by_associativity(raw, base);
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::uint32_t> c(1, 42);
  for (int trial = 0; trial < 3; ++trial) {
    auto moved = fixtures::rescale_basis(raw, c(rng), c(rng));
    EXPECT_EQ(fix_scalings_by_associativity(moved, base).products, fixed.products);
  }
}

TEST(MulTable, CorruptedEntryIsDetected) {
  auto base = fixtures::plane_model();
  auto raw = fixtures::cyclic_raw_table(3);
  raw.products.at({1, 2}).scale = raw.field.mul(raw.products.at({1, 2}).scale, 5);
  EXPECT_FALSE(c3_equivariant(raw));
  try {
    fix_scalings_by_associativity(raw, base);
    ADD_FAILURE() << "corrupted table was fixed";
  } catch (const CoverError& e) {
    EXPECT_NE(std::string(e.what()).find("inconsistent"), std::string::npos) << e.what();
  }
  // A wrong divisor (not a scalar) makes some associativity ratio non-constant.
  auto bad = fixtures::cyclic_raw_table(3);
  auto& e = bad.products.at({1, 2});
  e.num = e.num * FpPoly::variable(bad.field, 3, 0);
  e.den = e.den * FpPoly::variable(bad.field, 3, 1);
  EXPECT_THROW(fix_scalings_by_associativity(bad, base), CoverError);
}

TEST(MulTable, DivisorPlans) {
  auto p = product_divisor_plan(4, 2);
  EXPECT_EQ(p.target, 6);
  EXPECT_EQ(p.format(), "C4 + C2 + C1 + C0");
  EXPECT_EQ(p.aux, (std::vector<std::string>{"P10", "s3"}));
  EXPECT_EQ(p.degree(), 2u);
  auto q = product_divisor_plan(2, 2);
  EXPECT_EQ(q.format(), "2C2 + C-4 + C0");
  EXPECT_EQ(q.aux, (std::vector<std::string>{"P10", "sigma(s3)"}));
  auto r = product_divisor_plan(1, 6);
  EXPECT_EQ(r.target, 0);
  EXPECT_EQ(r.format(), "C1 + C-1");
  EXPECT_EQ(r.degree(), 1u);
  EXPECT_THROW(product_divisor_plan(0, 3), CoverError);
}

namespace {

std::uint32_t eval_factored(const PrimeField& f, const fixtures::Factored& g, const Point& b) {
  std::uint32_t v[4] = {b[0], b[1], b[2], f.add(f.add(b[0], b[1]), b[2])};
  std::uint32_t out = 1;
  for (int k = 0; k < 4; ++k) {
    auto base = g.e[k] >= 0 ? v[k] : f.inv(v[k]);
    out = f.mul(out, f.pow(base, static_cast<std::uint64_t>(std::abs(g.e[k]))));
  }
  return out;
}

// Points of the cyclic cover straight from u^7 = phi, W = (x, y, z, s k1 u, s k4 u^4, s k2 u^2).
std::vector<Point> cyclic_cover_points_direct(std::size_t count) {
  const auto& f = fixtures::cyclic_field();
  auto kappa = fixtures::cyclic_kappa();
  std::set<Point> seen;
  std::vector<Point> out;
  for (std::uint32_t x = 1; x < f.p && out.size() < count; ++x)
    for (std::uint32_t y = 1; y < f.p && out.size() < count; ++y) {
      Point b{x, y, 1};
      auto s = f.add(f.add(x, y), 1);
      if (s == 0) continue;
      auto phi = eval_factored(f, fixtures::fixture_phi(), b);
      for (std::uint32_t u = 1; u < f.p; ++u) {
        if (f.pow(u, 7) != phi) continue;
        Point w{x, y, 1};
        for (int lab : {1, 4, 2})
          w.push_back(f.mul(f.mul(s, eval_factored(f, kappa[static_cast<std::size_t>(lab)], b)),
                            f.pow(u, static_cast<std::uint64_t>(lab))));
        w = normalize_point(f, w);
        if (seen.insert(w).second) out.push_back(w);
      }
    }
  return out;
}

std::size_t vanishing_dimension(const PrimeField& f, const std::vector<Point>& pts, std::size_t n, unsigned d) {
  auto monos = alg::monomials_of_degree(n, d);
  alg::Matrix<PrimeField> m(f, 0, monos.size());
  for (const auto& p : pts) m.append_row(evaluate_monomials(f, monos, p, d));
  return alg::kernel(m).size();
}

MulTable fixed_cyclic_table() {
  auto truth = fixtures::cyclic_true_table();
  truth.state = ScalingState::AssociativityFixed;
  return truth;
}

}  // namespace

TEST(EmitZ, RelationCountsMatchDirectParametrization) {
  auto z_true = emit_model_Z(fixed_cyclic_table(), fixtures::plane_model(), fixtures::cyclic_z_coordinates());
  EmitReport rep;
  auto base = fixtures::plane_model();
  auto fixed = fix_scalings_by_associativity(fixtures::cyclic_raw_table(11), base);
  auto z = emit_model_Z(fixed, base, fixtures::cyclic_z_coordinates(), {}, &rep);
  auto direct = cyclic_cover_points_direct(400);
  ASSERT_GE(direct.size(), 300u);
  for (unsigned d : {2u, 3u, 4u}) EXPECT_EQ(rep.relations[d], vanishing_dimension(F43, direct, 6, d)) << "degree " << d;
  EXPECT_EQ(z.ideal.size(), z_true.ideal.size());
  ASSERT_EQ(z.actions.gens.size(), 2u);
  EXPECT_EQ(z.actions.gens[1].name, "sigma");
  for (const auto& p : direct)
    for (const auto& r : z_true.ideal) ASSERT_EQ(r.evaluate(std::span<const std::uint32_t>(p)), 0u);
}

TEST(EmitZ, ContainsTheQuarticRelationsInTheTrueGauge) {
  auto z = emit_model_Z(fixed_cyclic_table(), fixtures::plane_model(), fixtures::cyclic_z_coordinates());
  auto gb = verify::groebner_basis(z.ideal);
  auto v = [&](std::size_t i) { return FpPoly::variable(F43, 6, i); };
  // x y^2 W4 = W3^4 and its sigma images
  auto r = v(0) * v(1) * v(1) * v(4) - v(3) * v(3) * v(3) * v(3);
  EXPECT_TRUE(gb.contains(r));
  auto s = z.actions.gens[1];
  EXPECT_TRUE(gb.contains(equiv::act_on_form(s, r)));
  EXPECT_TRUE(gb.contains(equiv::act_on_form(s, equiv::act_on_form(s, r))));
}

TEST(EmitZ, RejectsRawTablesAndUnstableActions) {
  auto base = fixtures::plane_model();
  EXPECT_THROW(emit_model_Z(fixtures::cyclic_raw_table(3), base, fixtures::cyclic_z_coordinates()), CoverError);
  EmitOptions opts;
  opts.degrees = {2, 3};
  // swapping W0 and W3 does not preserve the cover
  opts.extra_actions.push_back({"swap", {3, 1, 2, 0, 4, 5}, std::vector<equiv::RootOfUnity>(6)});
  try {
    emit_model_Z(fixed_cyclic_table(), base, fixtures::cyclic_z_coordinates(), opts);
    FAIL() << "expected an instability error";
  } catch (const CoverError& e) {
    EXPECT_NE(std::string(e.what()).find("not stable"), std::string::npos) << e.what();
  }
}

TEST(DescendX, FreeSymbolSpaceGivesTheSevenListedQuadrics) {
  auto acts = fixtures::z_symbol_actions();
  FpModel z;
  z.name = "Z";
  z.field = F43;
  z.coords = acts.coords;
  z.actions = acts;
  const auto& g2 = acts.gens[1];
  const auto& h = acts.gens[2];
  DescendOptions opts;
  opts.expected_quadrics = 7;
  opts.expected_cubics = 0;
  DescendReport rep;
  auto x = descend_to_X(z, h, g2, opts, &rep);
  EXPECT_EQ(rep.group_order, 14u);
  EXPECT_EQ(rep.relations, 0u);
  EXPECT_EQ(x.nvars(), 7u);
  std::vector<FpPoly> listed;
  for (const char* q : {"Z0^2", "Z12*Z5+Z2*Z9", "Z10*Z6+Z3*Z7", "Z11*Z4+Z1*Z8", "Z10*Z3+Z6*Z7", "Z1*Z11+Z4*Z8",
                        "Z12*Z2+Z5*Z9"})
    listed.push_back(alg::parse_poly(F43, z.coords, q));
  auto both = listed;
  both.insert(both.end(), rep.quadrics.begin(), rep.quadrics.end());
  EXPECT_EQ(verify::detail::echelon_span(listed).size(), 7u);
  EXPECT_EQ(verify::detail::echelon_span(both).size(), 7u);
}

TEST(DescendX, ConeFixtureHasTwoExtraCubics) {
  // Z: (A - B)^2 = Z0 C, c2: Z0 -> -Z0, A <-> B, C -> -C.
  // Anti-invariant cubics vanishing on {Z0 = 0, A = B} are Z0 Inv_2 + (A - B) Inv_2.
  // Modulo Z0 Inv_2 + I(Z), (A - B) Inv_2 leaves (A - B)(A^2 + B^2), (A - B) A B,
  // (A - B) C^2, and (A - B)^3 = (A - B) Z0 C is trivial: two extra cubics.
  auto z = make_model(F43, {"Z0", "A", "B", "C"}, {"(A-B)^2 - Z0*C"}, "cone");
  auto c7 = equiv::ActionGen::identity(4, "c7");
  auto c2 = equiv::parse_action_line("c2", "-Z0 B A -C", z.coords);
  DescendOptions opts;
  opts.expected_quadrics = 6;
  opts.expected_cubics = 2;
  opts.relation_degree = 2;
  DescendReport rep;
  auto x = descend_to_X(z, c7, c2, opts, &rep);
  EXPECT_EQ(rep.group_order, 2u);
  EXPECT_EQ(x.nvars(), 8u);
  for (const auto& c : rep.coordinates) {
    EXPECT_EQ(equiv::act_on_form(c2, c), -c);
    EXPECT_EQ(equiv::act_on_form(c7, c), c);
  }
  for (const auto& c : rep.cubics) {
    // each extra cubic vanishes on Z0 = 0, A = B
    for (std::uint32_t a = 0; a < 5; ++a)
      for (std::uint32_t cc = 0; cc < 5; ++cc) {
        Point p{0, a, a, cc};
        EXPECT_EQ(c.evaluate(std::span<const std::uint32_t>(p)), 0u);
      }
  }
  EXPECT_THROW(descend_to_X(z, c7, c7, opts), CoverError);
}

TEST(Purity, StageOutputsAreEigenvectorsOfDeclaredActions) {
  PurityReport rep;
  for (std::uint64_t seed = 1; rep.relations < 100; ++seed)
    for (const auto& m : fixtures::purity_corpus(seed)) rep = check_purity(m, rep);
  EXPECT_GE(rep.relations, 100u);
  EXPECT_TRUE(rep.pure()) << rep.violations.front();
}

TEST(Purity, MixedRelationIsCaught) {
  auto corpus = fixtures::purity_corpus(1);
  auto m = corpus.front();
  // add two relations of different torus weight
  std::optional<FpPoly> mixed;
  for (std::size_t i = 0; i < m.ideal.size() && !mixed; ++i)
    for (std::size_t j = i + 1; j < m.ideal.size() && !mixed; ++j)
      if (m.ideal[i].degree() == m.ideal[j].degree() &&
          !(equiv::diagonal_weight(m.actions.gens[0], m.ideal[i]) == equiv::diagonal_weight(m.actions.gens[0], m.ideal[j])))
        mixed = m.ideal[i] + m.ideal[j];
  ASSERT_TRUE(mixed.has_value());
  m.ideal.push_back(*mixed);
  EXPECT_FALSE(check_purity(m).pure());
  // a non-diagonal action that does not preserve the span
  auto v = corpus[1];
  v.actions.gens.push_back({"swap", {1, 0, 2, 3, 4, 5}, std::vector<equiv::RootOfUnity>(6)});
  EXPECT_FALSE(check_purity(v).pure());
}
