#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "coverforge/exactalg/matrix.hpp"
#include "coverforge/exactalg/modular.hpp"
#include "coverforge/exactalg/poly_io.hpp"
#include "coverforge/exactalg/snf.hpp"

using namespace coverforge::alg;

TEST(Fields, QuadraticGeneratorSquaresToMinusSeven) {
  QuadraticField k;
  auto w = k.gen();
  EXPECT_EQ(k.mul(w, w), k.from_int(-7));
  auto x = QuadElement{Rational(1, 2), Rational(3)};
  EXPECT_EQ(k.mul(x, k.inv(x)), k.one());
  EXPECT_EQ(k.norm(x), Rational(1, 4) + 63);
  EXPECT_THROW(k.inv(k.zero()), ArithmeticError);
}

TEST(Fields, CyclotomicZetaHasOrderSeven) {
  CyclotomicField k;
  auto z = k.zeta(1);
  EXPECT_EQ(power(k, z, 7), k.one());
  EXPECT_NE(power(k, z, 1), k.one());
  // 1 + z + ... + z^6 = 0
  auto s = k.zero();
  for (int i = 0; i < 7; ++i) s = k.add(s, k.zeta(i));
  EXPECT_TRUE(k.is_zero(s));
  auto x = k.add(k.from_int(2), k.zeta(3));
  EXPECT_EQ(k.mul(x, k.inv(x)), k.one());
}

TEST(Fields, PrimeFieldInverse) {
  PrimeField f(43);
  for (std::uint32_t a = 1; a < 43; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_EQ(f.from_rational(Rational(1, 2)), 22u);
  EXPECT_THROW(f.from_rational(Rational(1, 43)), ArithmeticError);
}

TEST(Modular, RootsAndReductions) {
  PrimeField f(43);
  auto roots = sqrt_minus7(f);
  ASSERT_EQ(roots.size(), 2u);
  for (auto r : roots) EXPECT_EQ(f.mul(r, r), f.from_int(-7));
  auto z = root_of_unity(f, 7);
  EXPECT_EQ(f.pow(z, 7), 1u);
  EXPECT_NE(z, 1u);
  EXPECT_EQ(next_prime_congruent_one(40, 21), 43u);
  QuadReduction red(f, roots[0]);
  QuadraticField k;
  auto a = QuadElement{2, 5}, b = QuadElement{-1, Rational(1, 3)};
  EXPECT_EQ(red(k.mul(a, b)), f.mul(red(a), red(b)));
  EXPECT_THROW(QuadReduction(f, 5), ArithmeticError);
}

TEST(Modular, QuadraticReconstruction) {
  QuadElement target{Rational(-3, 7), Rational(5, 2)};
  std::vector<QuadImage> images;
  for (std::uint32_t p : {43u, 71u, 107u, 113u, 127u}) {
    PrimeField f(p);
    auto roots = sqrt_minus7(f);
    if (roots.size() != 2) continue;
    for (auto r : roots) images.push_back({p, r, QuadReduction(f, r)(target)});
  }
  auto got = reconstruct_quadratic(images);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(*got, target);
}

TEST(Poly, ArithmeticAndDerivative) {
  RationalField q;
  std::vector<std::string> vars{"x", "y", "z"};
  auto f = parse_poly(q, vars, "x^2*y - 3*y*z + 1/2*z^3");
  auto g = parse_poly(q, vars, "(x - y)*(x + y)");
  EXPECT_EQ(g, parse_poly(q, vars, "x^2 - y^2"));
  EXPECT_EQ(f.derivative(0), parse_poly(q, vars, "2*x*y"));
  EXPECT_TRUE(f.is_homogeneous() == false);
  EXPECT_TRUE(g.is_homogeneous());
  std::vector<Rational> pt{1, 2, 3};
  EXPECT_EQ(f.evaluate(pt), Rational(2) - 18 + Rational(27, 2));
  EXPECT_EQ(parse_poly(q, vars, format_poly(f, vars)), f);
}

TEST(Poly, ParserErrorsCarryPosition) {
  RationalField q;
  std::vector<std::string> vars{"x", "y"};
  try {
    parse_poly(q, vars, "x + * y", 4);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(parse_poly(q, vars, "x + t", 1), ParseError);
}

TEST(Poly, SystemFileRoundTrip) {
  std::istringstream in("field: QQ(w)\nvars: U0 .. U3\n# quadrics\nU0*U1 - w*U2^2\nU3^2 + (1+w)*U0*U2\n");
  auto sys = std::get<PolySystem<QuadraticField>>(parse_system(in));
  EXPECT_EQ(sys.vars.size(), 4u);
  ASSERT_EQ(sys.polys.size(), 2u);
  std::istringstream again(format_system(sys));
  auto sys2 = std::get<PolySystem<QuadraticField>>(parse_system(again));
  EXPECT_EQ(sys2.polys, sys.polys);
  EXPECT_EQ(sys2.vars, sys.vars);
}

TEST(Poly, MonomialCount) {
  EXPECT_EQ(monomials_of_degree(10, 3).size(), 220u);
  EXPECT_EQ(monomials_of_degree(13, 2).size(), 91u);
}

TEST(Matrix, KernelOverRationalsAndPrimeField) {
  RationalField q;
  Matrix<RationalField> m(q, 2, 4);
  int vals[2][4] = {{1, 2, 3, 4}, {2, 4, 7, 9}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = vals[i][j];
  auto ker = kernel(m);
  ASSERT_EQ(ker.size(), 2u);
  for (const auto& v : ker) {
    auto r = m.apply(v);
    for (const auto& x : r) EXPECT_EQ(x, 0);
  }
  PrimeField f(7);
  Matrix<PrimeField> mp(f, 3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mp(i, j) = f.from_int(i + j);
  EXPECT_EQ(rank(mp), 2u);
}

TEST(Smith, KnownDiagonal) {
  IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
  auto s = smith_normal_form(a, true);
  EXPECT_EQ(s.diagonal, (std::vector<Integer>{2, 6, 12}));
  auto d = int_matmul(int_matmul(s.left, a), s.right);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(d[i][j], i == j ? s.diagonal[i] : Integer(0));
  EXPECT_EQ(abs(int_determinant(a)), 144);
}

TEST(Smith, DivisibilityChainOnRandomMatrices) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> v(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix a(5, std::vector<Integer>(4));
    for (auto& row : a)
      for (auto& x : row) x = v(rng);
    auto s = smith_normal_form(a, true);
    for (std::size_t i = 0; i + 1 < s.diagonal.size(); ++i) {
      if (s.diagonal[i + 1] == 0) continue;
      EXPECT_NE(s.diagonal[i], 0);
      EXPECT_EQ(s.diagonal[i + 1] % s.diagonal[i], 0);
    }
    auto d = int_matmul(int_matmul(s.left, a), s.right);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(d[i][j], i == j ? s.diagonal[i] : Integer(0));
  }
}

TEST(Smith, OverflowFallsBackToBigIntegers) {
  Integer big = Integer(1) << 80;
  IntMatrix a{{big, 0}, {0, big * 3}};
  auto s = smith_normal_form(a);
  EXPECT_EQ(s.diagonal[0], big);
  EXPECT_EQ(s.diagonal[1], big * 3);
}
