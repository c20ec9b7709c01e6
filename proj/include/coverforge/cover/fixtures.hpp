#pragma once

// Small built-in fixtures for the pipeline stages.
//
// Cyclic fixture: the mu_7-cover u^7 = phi of P^2 over GF(43) with
// phi = x^2 y^4 z / s^7, s = x + y + z. The substitution sigma: x->y->z->x
// lifts by sigma(u) = u^4 A, A = s^3/(x y^2), and sigma^3(u) = u. With
// e_i = kappa_i u^i and kappa_{4i} = A^i sigma(kappa_i) phi^floor(4i/7),
// kappa_1 = kappa_3 = 1, sigma(e_i) = e_{4i}.

#include <array>
#include <random>

#include "coverforge/cover/double_cover.hpp"
#include "coverforge/cover/emit.hpp"
#include "coverforge/cover/model.hpp"
#include "coverforge/cover/multable.hpp"
#include "coverforge/verify/diagonalize.hpp"

namespace coverforge::cover::fixtures {

/// c * x^a y^b z^c s^d, exponents possibly negative.
struct Factored {
  std::array<int, 4> e{0, 0, 0, 0};

  Factored operator*(const Factored& o) const {
    Factored r;
    for (int k = 0; k < 4; ++k) r.e[k] = e[k] + o.e[k];
    return r;
  }
  Factored pow(int n) const {
    Factored r;
    for (int k = 0; k < 4; ++k) r.e[k] = e[k] * n;
    return r;
  }
  Factored inverse() const { return pow(-1); }
  /// x -> y -> z -> x, s fixed.
  Factored sigma() const { return Factored{{e[2], e[0], e[1], e[3]}}; }
  int degree() const { return e[0] + e[1] + e[2] + e[3]; }
  bool operator==(const Factored&) const = default;
};

inline const PrimeField& cyclic_field() {
  static const PrimeField f(43);
  return f;
}

inline std::vector<std::string> plane_coords() { return {"x", "y", "z"}; }

inline equiv::ActionGen plane_sigma() { return {"sigma", {1, 2, 0}, std::vector<equiv::RootOfUnity>(3)}; }

inline FpModel plane_model() {
  FpModel m;
  m.name = "P2";
  m.field = cyclic_field();
  m.coords = plane_coords();
  m.actions.coords = m.coords;
  m.actions.gens.push_back(plane_sigma());
  return m;
}

inline Factored fixture_A() { return Factored{{-1, -2, 0, 3}}; }
inline Factored fixture_phi() { return Factored{{2, 4, 1, -7}}; }

inline RatFunc expand(const Factored& g) {
  const auto& f = cyclic_field();
  std::array<FpPoly, 4> base{FpPoly::variable(f, 3, 0), FpPoly::variable(f, 3, 1), FpPoly::variable(f, 3, 2),
                             FpPoly::variable(f, 3, 0) + FpPoly::variable(f, 3, 1) + FpPoly::variable(f, 3, 2)};
  RatFunc r = RatFunc::one(f, 3);
  for (int k = 0; k < 4; ++k)
    for (int n = 0; n < std::abs(g.e[k]); ++n) (g.e[k] > 0 ? r.num : r.den) = (g.e[k] > 0 ? r.num : r.den) * base[k];
  return r;
}

/// kappa_0..kappa_6.
inline std::array<Factored, 7> cyclic_kappa() {
  std::array<Factored, 7> k{};
  auto A = fixture_A(), phi = fixture_phi();
  for (int start : {1, 3}) {
    int i = start;
    for (int step = 0; step < 2; ++step) {
      int j = (4 * i) % 7;
      k[static_cast<std::size_t>(j)] = A.pow(i) * k[static_cast<std::size_t>(i)].sigma() * phi.pow(4 * i / 7);
      i = j;
    }
    // closing the orbit must give back kappa_start = 1
    if (!(A.pow(i) * k[static_cast<std::size_t>(i)].sigma() * phi.pow(4 * i / 7) == Factored{}))
      throw CoverError("cyclic fixture: sigma does not have order 3 on the cover");
  }
  return k;
}

/// F_ij = kappa_i kappa_j phi^[i+j >= 7] / kappa_{i+j mod 7}.
inline Factored cyclic_product(int i, int j) {
  auto k = cyclic_kappa();
  int t = (i + j) % 7;
  return k[static_cast<std::size_t>(i)] * k[static_cast<std::size_t>(j)] * fixture_phi().pow(i + j >= 7 ? 1 : 0) *
         k[static_cast<std::size_t>(t)].inverse();
}

/// The exact table (every entry populated directly, not through sigma).
inline MulTable cyclic_true_table() {
  MulTable t;
  t.field = cyclic_field();
  t.coords = plane_coords();
  t.sigma = plane_sigma();
  t.labels = default_labels();
  for (int i = 1; i < 7; ++i)
    for (int j = 1; j < 7; ++j) t.products[{i, j}] = make_entry(expand(cyclic_product(i, j)), (i + j) % 7);
  return t;
}

/// Raw table: each orbit representative known only up to a random scalar,
/// the rest populated by sigma.
inline MulTable cyclic_raw_table(std::uint64_t seed) {
  const auto& f = cyclic_field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> c(1, f.p - 1);
  MulTable probe;
  probe.order = 7;
  probe.multiplier = 4;
  std::map<std::pair<int, int>, RatFunc> reps;
  for (int i = 1; i < 7; ++i)
    for (int j = 1; j < 7; ++j)
      if (pair_representative(probe, i, j) == std::pair<int, int>{i, j}) {
        auto r = expand(cyclic_product(i, j));
        r.num = r.num.scaled(c(rng));
        reps.emplace(std::pair<int, int>{i, j}, r);
      }
  return build_multiplication_table(f, plane_coords(), plane_sigma(), reps);
}

/// Multiply e_k by c_k (c constant on C3 orbits of labels):
/// F_ij -> F_ij c_i c_j / c_{i+j}.
inline MulTable rescale_basis(const MulTable& t, std::uint32_t alpha, std::uint32_t beta) {
  const auto& f = t.field;
  auto c = [&](int i) -> std::uint32_t {
    if (i == 0) return 1;
    for (const auto& orb : label_orbits(t.order, t.multiplier))
      if (std::find(orb.begin(), orb.end(), i) != orb.end()) return orb.front() == 1 ? alpha : beta;
    return 1;
  };
  MulTable out = t;
  for (auto& [ij, e] : out.products)
    e.scale = f.mul(e.scale, f.div(f.mul(c(ij.first), c(ij.second)), c(e.target)));
  return out;
}

/// Z fixture coordinates: x, y, z, s e_1, s e_4, s e_2.
inline std::vector<ZCoordinate> cyclic_z_coordinates() {
  const auto& f = cyclic_field();
  auto v = [&](std::size_t i) { return FpPoly::variable(f, 3, i); };
  auto s = v(0) + v(1) + v(2);
  return {{"W0", v(0), 0}, {"W1", v(1), 0}, {"W2", v(2), 0}, {"W3", s, 1}, {"W4", s, 4}, {"W5", s, 2}};
}

/// The symbol coordinates Z0..Z12 = (r00, r11, r42, r24, r-1,1, r-4,2,
/// r-2,4, r13, r46, r25, r-1,3, r-4,6, r-2,5) with g3, g2 and the {1}xC7
/// action h (weight = second index).
inline equiv::ActionSet z_symbol_actions() {
  equiv::ActionSet s;
  s.coords = default_coords("Z", 13);
  s.gens.push_back(equiv::parse_action_line("g3", "Z0 Z2 Z3 Z1 Z5 Z6 Z4 Z8 Z9 Z7 Z11 Z12 Z10", s.coords));
  s.gens.push_back(equiv::parse_action_line("g2", "-Z0 Z4 Z5 Z6 Z1 Z2 Z3 Z10 Z11 Z12 Z7 Z8 Z9", s.coords));
  const int w[13] = {0, 1, 2, 4, 1, 2, 4, 3, 6, 5, 3, 6, 5};
  auto h = equiv::ActionGen::identity(13, "h");
  for (int i = 0; i < 13; ++i) h.scalar[static_cast<std::size_t>(i)] = equiv::RootOfUnity::zeta7(w[i]);
  s.gens.push_back(h);
  return s;
}

/// Veronese image of P^2 in P^5 (coordinates: degree-2 monomials of x, y, z
/// in graded order) at random points.
inline PointSample veronese_points(const PrimeField& f, std::size_t count, std::uint64_t seed,
                                   const std::vector<Point>& exclude = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> c(0, f.p - 1);
  auto monos = alg::monomials_of_degree(3, 2);
  std::set<Point> seen(exclude.begin(), exclude.end());
  PointSample out{f, {}, seed, SampleStrategy::Slicing};
  for (std::size_t guard = 0; out.size() < count && guard < 100 * count + 1000; ++guard) {
    Point b{c(rng), c(rng), c(rng)};
    if (b == Point{0, 0, 0}) continue;
    Point u;
    for (const auto& m : monos) u.push_back(FpPoly::monomial(f, m, 1).evaluate(std::span<const std::uint32_t>(b)));
    u = normalize_point(f, u);
    if (seen.insert(u).second) out.points.push_back(u);
  }
  if (out.size() < count) throw CoverError("veronese fixture: not enough points");
  return out;
}

/// The action on the Veronese coordinates induced by an action on x, y, z.
inline equiv::ActionGen veronese_action(const equiv::ActionGen& g) {
  auto monos = alg::monomials_of_degree(3, 2);
  equiv::ActionGen out{g.name, std::vector<std::size_t>(monos.size()), std::vector<equiv::RootOfUnity>(monos.size())};
  for (std::size_t k = 0; k < monos.size(); ++k) {
    auto [root, img] = g.apply(monos[k]);
    out.target[k] = static_cast<std::size_t>(std::find(monos.begin(), monos.end(), img) - monos.begin());
    out.scalar[k] = root;
  }
  return out;
}

/// Stage outputs on small fixtures, each carrying its declared actions.
inline std::vector<FpModel> purity_corpus(std::uint64_t seed) {
  std::vector<FpModel> out;
  const auto& f = cyclic_field();
  auto relations_on = [&](const std::string& name, std::size_t n, const std::vector<equiv::ActionGen>& acts,
                          std::vector<unsigned> degrees) {
    FpModel m;
    m.name = name;
    m.field = f;
    m.coords = default_coords("u", n);
    m.actions.coords = m.coords;
    m.actions.gens = acts;
    std::vector<equiv::ActionGen> diag;
    for (const auto& g : acts)
      if (g.is_diagonal()) diag.push_back(g);
    for (unsigned d : degrees) {
      auto pts = veronese_points(f, points_required(alg::monomials_of_degree(n, d).size(), 1.25), seed + d);
      auto fresh = veronese_points(f, 20, seed + 1000 + d, pts.points);
      auto rels = interpolate_vanishing_forms(pts, d, n, {diag, std::nullopt}, fresh);
      m.ideal.insert(m.ideal.end(), rels.begin(), rels.end());
    }
    return m;
  };
  auto torus = equiv::ActionGen::identity(3, "t");
  torus.scalar = {equiv::RootOfUnity::zeta7(1), equiv::RootOfUnity::zeta7(2), equiv::RootOfUnity::zeta7(4)};
  auto sign = equiv::ActionGen::identity(3, "sign");
  sign.scalar[0] = equiv::RootOfUnity::minus_one();
  out.push_back(relations_on("veronese (torus, sign)", 6, {veronese_action(torus), veronese_action(sign)}, {2, 3}));

  auto rot = veronese_action(plane_sigma());
  auto permuted = relations_on("veronese (C3)", 6, {rot}, {2});
  out.push_back(permuted);
  auto dc = verify::diagonalize_c3(permuted.ideal, rot);
  FpModel diag;
  diag.name = "veronese (C3 diagonalized)";
  diag.field = f;
  diag.coords = default_coords("v", 6);
  diag.ideal = dc.ideal;
  diag.actions.coords = diag.coords;
  auto d3 = equiv::ActionGen::identity(6, "g3");
  for (std::size_t k = 0; k < 6; ++k) d3.scalar[k] = equiv::RootOfUnity::zeta3(dc.eigen[k]);
  diag.actions.gens.push_back(d3);
  out.push_back(diag);

  {
    const PrimeField f127(127);
    FpModel y;
    y.name = "conic";
    y.field = f127;
    y.coords = {"U0", "U1", "U2"};
    y.ideal = {alg::parse_poly(f127, y.coords, "U0*U2 - U1^2")};
    DoubleCoverOptions o;
    o.seed = seed;
    out.push_back(build_double_cover(y, alg::parse_poly(f127, y.coords, "U0^2 + U0*U1 + 3*U1*U2 + 5*U2^2"),
                                     {alg::parse_poly(f127, y.coords, "U0*U1 + 2*U2^2")}, o));
  }
  {
    auto t = cyclic_true_table();
    t.state = ScalingState::AssociativityFixed;
    EmitOptions o;
    o.seed = seed;
    out.push_back(emit_model_Z(t, plane_model(), cyclic_z_coordinates(), o));
  }
  return out;
}

}  // namespace coverforge::cover::fixtures
