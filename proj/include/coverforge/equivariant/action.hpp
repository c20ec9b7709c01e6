#pragma once

// Monomial (generalized permutation) actions on coordinates and the induced
// substitution action on forms.
//
// A generator g sends coordinate X_i to c_i * X_{t_i}, where c_i is a root
// of unity of order dividing 42. On forms, g acts by substituting
// X_i -> c_i X_{t_i}. Composition follows the right-action convention of
// the coset tables: a word g1 g2 ... gk acts by applying g1 first.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "coverforge/exactalg/fields.hpp"
#include "coverforge/exactalg/matrix.hpp"
#include "coverforge/exactalg/modular.hpp"
#include "coverforge/exactalg/poly.hpp"
#include "coverforge/exactalg/poly_io.hpp"

namespace coverforge::equiv {

using alg::Field;
using alg::Monomial;
using alg::MultiPoly;

class ActionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// zeta_42^e. Covers +-1, zeta_3 = zeta_42^14 and zeta_7 = zeta_42^6.
struct RootOfUnity {
  int e = 0;

  static RootOfUnity from_exponent(long e) { return {static_cast<int>(((e % 42) + 42) % 42)}; }
  static RootOfUnity one() { return {0}; }
  static RootOfUnity minus_one() { return {21}; }
  static RootOfUnity zeta7(long k) { return from_exponent(6 * k); }
  static RootOfUnity zeta3(long k) { return from_exponent(14 * k); }

  RootOfUnity operator*(RootOfUnity o) const { return from_exponent(e + o.e); }
  RootOfUnity inverse() const { return from_exponent(-e); }
  RootOfUnity pow(long k) const { return from_exponent(static_cast<long>(e) * k); }
  int order() const { return 42 / std::gcd(e, 42); }
  bool operator==(const RootOfUnity&) const = default;
};

/// Printed as a product of -1, z3^k and z7^k (the exponent splits uniquely
/// by the Chinese remainder theorem).
inline std::string format_root(RootOfUnity r) {
  int sign = r.e % 2;
  int k3 = ((r.e % 3) * 2) % 3;   // 14 = 2 mod 3
  int k7 = ((r.e % 7) * 6) % 7;   // 6^-1 = 6 mod 7
  std::string out = sign ? "-" : "";
  std::string body;
  if (k7) body += k7 == 1 ? "z7" : "z7^" + std::to_string(k7);
  if (k3) body += (body.empty() ? "" : "*") + std::string(k3 == 1 ? "z3" : "z3^2");
  if (body.empty()) body = "1";
  return out + body;
}

inline RootOfUnity parse_root(const std::string& text) {
  RootOfUnity r;
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ActionError("empty scalar");
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto star = s.find('*', pos);
    std::string tok = s.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
    while (!tok.empty() && tok[0] == '-') {
      r = r * RootOfUnity::minus_one();
      tok.erase(0, 1);
    }
    if (tok == "1" || tok.empty()) {
      // a bare sign or an explicit 1
    } else if (tok.rfind("z7", 0) == 0 || tok.rfind("z3", 0) == 0) {
      long k = 1;
      if (tok.size() > 2) {
        if (tok[2] != '^') throw ActionError("malformed scalar '" + text + "'");
        std::string ex = tok.substr(3);
        if (!ex.empty() && ex.front() == '{' && ex.back() == '}') ex = ex.substr(1, ex.size() - 2);
        try {
          std::size_t used = 0;
          k = std::stol(ex, &used);
          if (used != ex.size()) throw ActionError("");
        } catch (const std::exception&) {
          throw ActionError("malformed exponent in scalar '" + text + "'");
        }
      }
      r = r * (tok[1] == '7' ? RootOfUnity::zeta7(k) : RootOfUnity::zeta3(k));
    } else {
      throw ActionError("unknown scalar '" + tok + "'");
    }
    if (star == std::string::npos) break;
    pos = star + 1;
  }
  return r;
}

/// The field element zeta_42^e, or nullopt if the field does not contain it.
/// GF(p) uses g^((p-1)e/42) for the smallest primitive root g, which is a
/// consistent embedding of all the roots of unity present.
template <Field F>
std::optional<typename F::Element> embed_root(const F& f, RootOfUnity r) {
  if constexpr (alg::is_prime_field_v<F>) {
    std::uint64_t num = static_cast<std::uint64_t>(f.p - 1) * static_cast<std::uint64_t>(r.e);
    if (num % 42 != 0) return std::nullopt;
    return f.pow(alg::primitive_root(f), num / 42);
  } else if constexpr (std::is_same_v<F, alg::CyclotomicField>) {
    // zeta_14 = -zeta_7^4 lies in QQ(zeta_7); zeta_3 does not.
    if (r.e % 3 != 0) return std::nullopt;
    int k14 = r.e / 3;
    auto z = f.zeta(((4 * k14) % 7 + 7) % 7);
    return k14 % 2 ? f.neg(z) : z;
  } else {
    if (r.e == 0) return f.one();
    if (r.e == 21) return f.neg(f.one());
    return std::nullopt;
  }
}

template <Field F>
typename F::Element require_root(const F& f, RootOfUnity r) {
  auto v = embed_root(f, r);
  if (!v) throw ActionError("field " + f.name() + " lacks the root of unity " + format_root(r));
  return *v;
}

/// g: X_i -> scalar[i] * X_{target[i]}.
struct ActionGen {
  std::string name;
  std::vector<std::size_t> target;
  std::vector<RootOfUnity> scalar;

  std::size_t size() const { return target.size(); }

  static ActionGen identity(std::size_t n, std::string name = "id") {
    ActionGen g{std::move(name), std::vector<std::size_t>(n), std::vector<RootOfUnity>(n)};
    std::iota(g.target.begin(), g.target.end(), 0);
    return g;
  }

  void validate() const {
    if (scalar.size() != target.size()) throw ActionError("action '" + name + "': scalar count mismatch");
    std::vector<bool> hit(target.size(), false);
    for (auto t : target) {
      if (t >= target.size() || hit[t]) throw ActionError("action '" + name + "' is not a permutation of coordinates");
      hit[t] = true;
    }
  }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < target.size(); ++i)
      if (target[i] != i) return false;
    return true;
  }

  bool operator==(const ActionGen& o) const { return target == o.target && scalar == o.scalar; }

  /// this first, then o (right-action convention).
  ActionGen then(const ActionGen& o) const {
    if (o.size() != size()) throw ActionError("composing actions of different sizes");
    ActionGen r{name + "*" + o.name, std::vector<std::size_t>(size()), std::vector<RootOfUnity>(size())};
    // Substituting X_i -> c_i X_{t_i}, then X_j -> d_j X_{s_j}:
    // X_i -> c_i d_{t_i} X_{s_{t_i}}.
    for (std::size_t i = 0; i < size(); ++i) {
      r.target[i] = o.target[target[i]];
      r.scalar[i] = scalar[i] * o.scalar[target[i]];
    }
    return r;
  }

  ActionGen inverse() const {
    ActionGen r{name + "^-1", std::vector<std::size_t>(size()), std::vector<RootOfUnity>(size())};
    for (std::size_t i = 0; i < size(); ++i) {
      r.target[target[i]] = i;
      r.scalar[target[i]] = scalar[i].inverse();
    }
    return r;
  }

  ActionGen pow(long k) const {
    ActionGen base = k < 0 ? inverse() : *this;
    ActionGen r = identity(size(), name + "^" + std::to_string(k));
    for (long i = 0; i < (k < 0 ? -k : k); ++i) r = r.then(base);
    r.name = name + "^" + std::to_string(k);
    return r;
  }

  /// Smallest n > 0 with g^n = 1.
  int order() const {
    ActionGen id = identity(size());
    ActionGen cur = *this;
    for (int n = 1; n <= 10000; ++n) {
      if (cur == id) return n;
      cur = cur.then(*this);
    }
    throw ActionError("action '" + name + "' has no finite order below 10000");
  }

  /// Image of a monomial: coefficient root and target monomial.
  std::pair<RootOfUnity, Monomial> apply(const Monomial& m) const {
    Monomial out(m.size());
    RootOfUnity c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      out[target[i]] += m[i];
      c = c * scalar[i].pow(m[i]);
    }
    return {c, out};
  }
};

/// Substitution action of g on a form.
template <Field F>
MultiPoly<F> act_on_form(const ActionGen& g, const MultiPoly<F>& f) {
  if (f.nvars() != g.size())
    throw ActionError("action '" + g.name + "' acts on " + std::to_string(g.size()) + " coordinates, form has " +
                      std::to_string(f.nvars()));
  std::vector<typename MultiPoly<F>::Term> out;
  out.reserve(f.size());
  std::map<int, typename F::Element> cache;
  for (const auto& [m, c] : f.terms()) {
    auto [root, img] = g.apply(m);
    auto it = cache.find(root.e);
    if (it == cache.end()) it = cache.emplace(root.e, require_root(f.field(), root)).first;
    out.emplace_back(std::move(img), f.field().mul(c, it->second));
  }
  return MultiPoly<F>::from_terms(f.field(), f.nvars(), std::move(out));
}

/// If g.f = lambda f, return lambda (f must be nonzero).
template <Field F>
std::optional<typename F::Element> eigenvalue(const ActionGen& g, const MultiPoly<F>& f) {
  if (f.is_zero()) throw ActionError("eigenvalue of the zero form");
  auto gf = act_on_form(g, f);
  const auto& fld = f.field();
  auto lambda = fld.div(gf.leading_coefficient(), f.leading_coefficient());
  if (!(gf == f.scaled(lambda))) return std::nullopt;
  return lambda;
}

/// For diagonal g: the exponent e with g.f = zeta_42^e f, computed from
/// monomials alone (no field roots needed); nullopt if f is not pure.
template <Field F>
std::optional<RootOfUnity> diagonal_weight(const ActionGen& g, const MultiPoly<F>& f) {
  if (!g.is_diagonal()) throw ActionError("action '" + g.name + "' is not diagonal");
  std::optional<RootOfUnity> w;
  for (const auto& [m, c] : f.terms()) {
    auto r = g.apply(m).first;
    if (w && !(*w == r)) return std::nullopt;
    w = r;
  }
  if (!w) return RootOfUnity::one();
  return w;
}

/// [f, g.f, g^2.f] for g of order 3.
template <Field F>
std::vector<MultiPoly<F>> c3_orbit(const MultiPoly<F>& f, const ActionGen& g3) {
  if (g3.order() != 3) throw ActionError("c3_orbit needs an action of order 3, '" + g3.name + "' has order " +
                                         std::to_string(g3.order()));
  auto f1 = act_on_form(g3, f);
  auto f2 = act_on_form(g3, f1);
  return {f, f1, f2};
}

/// Coordinates plus named generators.
struct ActionSet {
  std::vector<std::string> coords;
  std::vector<ActionGen> gens;

  const ActionGen& get(const std::string& name) const {
    for (const auto& g : gens)
      if (g.name == name) return g;
    throw ActionError("no action named '" + name + "'");
  }
  bool has(const std::string& name) const {
    return std::any_of(gens.begin(), gens.end(), [&](const ActionGen& g) { return g.name == name; });
  }
};

/// One action line: "action g3: Z0 Z2 Z3 Z1 ..." listing, for each
/// coordinate in order, its image as `[scalar*]target` (e.g. `-Z4`,
/// `z7^3*Z1`, `z3^2*Z5`).
inline ActionGen parse_action_line(const std::string& name, const std::string& body,
                                   const std::vector<std::string>& coords) {
  ActionGen g;
  g.name = name;
  std::istringstream ss(body);
  for (std::string tok; ss >> tok;) {
    // Split off the trailing target name.
    std::size_t split = tok.rfind('*');
    std::string scal = split == std::string::npos ? "" : tok.substr(0, split);
    std::string tgt = split == std::string::npos ? tok : tok.substr(split + 1);
    RootOfUnity r;
    while (!tgt.empty() && tgt[0] == '-') {
      r = r * RootOfUnity::minus_one();
      tgt.erase(0, 1);
    }
    if (!scal.empty()) r = r * parse_root(scal);
    auto it = std::find(coords.begin(), coords.end(), tgt);
    if (it == coords.end()) throw ActionError("action '" + name + "': unknown coordinate '" + tgt + "'");
    g.target.push_back(static_cast<std::size_t>(it - coords.begin()));
    g.scalar.push_back(r);
  }
  if (g.target.size() != coords.size())
    throw ActionError("action '" + name + "' lists " + std::to_string(g.target.size()) + " images for " +
                      std::to_string(coords.size()) + " coordinates");
  g.validate();
  return g;
}

inline std::string format_action_line(const ActionGen& g, const std::vector<std::string>& coords) {
  std::string out = "action " + g.name + ":";
  for (std::size_t i = 0; i < g.size(); ++i) {
    out += " ";
    RootOfUnity r = g.scalar[i];
    if (r.e == 21) {
      out += "-";
    } else if (r.e != 0) {
      out += format_root(r) + "*";
    }
    out += coords[g.target[i]];
  }
  return out;
}

/// File with "coords: ..." (ranges allowed) and "action <name>: ..." lines.
inline ActionSet parse_action_file(std::istream& in) {
  ActionSet out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = alg::trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    try {
      if (t.rfind("coords:", 0) == 0) {
        out.coords = alg::parse_variable_list(t.substr(7));
      } else if (t.rfind("action ", 0) == 0) {
        auto colon = t.find(':');
        if (colon == std::string::npos) throw ActionError("expected 'action <name>: ...'");
        if (out.coords.empty()) throw ActionError("'coords:' must precede actions");
        out.gens.push_back(parse_action_line(alg::trim(t.substr(7, colon - 7)), t.substr(colon + 1), out.coords));
      } else {
        throw ActionError("unrecognized line");
      }
    } catch (const ActionError& e) {
      throw ActionError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace coverforge::equiv
