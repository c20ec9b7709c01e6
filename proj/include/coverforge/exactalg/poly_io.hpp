#pragma once

// Plain-text polynomial format.
//
//   field: QQ | QQ(w) | GF(p)
//   vars: U0 .. U9            (or an explicit list: vars: x y z)
//   <one polynomial per line, using + - * / ^ ( ) and rational literals>
//
// `w` denotes sqrt(-7) and is only legal over QQ(w). Division is allowed by
// constants only. Printing is canonical: parse(print(f)) == f and printing
// twice is byte-identical.

#include <cctype>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "coverforge/exactalg/fields.hpp"
#include "coverforge/exactalg/poly.hpp"

namespace coverforge::alg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ", column " +
                                      std::to_string(column) + ": " + msg
                                : msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

using AnyField = std::variant<RationalField, QuadraticField, PrimeField>;

inline AnyField parse_field_name(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "QQ") return RationalField{};
  if (s == "QQ(w)") return QuadraticField{};
  if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')') {
    std::uint64_t p = std::stoull(s.substr(3, s.size() - 4));
    return PrimeField(static_cast<std::uint32_t>(p));
  }
  throw ParseError("unknown field '" + raw + "'");
}

/// Expand "U0 .. U9" ranges and whitespace-separated names.
inline std::vector<std::string> parse_variable_list(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  std::vector<std::string> out;
  auto split = [](const std::string& name, std::string& prefix, long& num) {
    std::size_t k = name.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(name[k - 1]))) --k;
    if (k == name.size() || k == 0) return false;
    prefix = name.substr(0, k);
    num = std::stol(name.substr(k));
    return true;
  };
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i] == ".." && !out.empty() && i + 1 < toks.size()) {
      std::string p1, p2;
      long a = 0, b = 0;
      if (!split(out.back(), p1, a) || !split(toks[i + 1], p2, b) || p1 != p2 || b < a)
        throw ParseError("bad variable range '" + out.back() + " .. " + toks[i + 1] + "'");
      for (long k = a + 1; k <= b; ++k) out.push_back(p1 + std::to_string(k));
      ++i;
    } else {
      out.push_back(toks[i]);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (out[i] == out[j]) throw ParseError("duplicate variable '" + out[i] + "'");
  return out;
}

/// Recursive-descent evaluator producing a MultiPoly.
template <Field F>
class PolyParser {
 public:
  PolyParser(const F& field, const std::vector<std::string>& vars, std::string text,
             std::size_t line = 0)
      : field_(field), vars_(vars), text_(std::move(text)), line_(line) {}

  MultiPoly<F> parse() {
    pos_ = 0;
    skip();
    if (pos_ == text_.size()) fail("empty polynomial");
    MultiPoly<F> r = expr();
    skip();
    if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return r;
  }

 private:
  using P = MultiPoly<F>;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  P constant(const typename F::Element& c) const { return P::constant(field_, vars_.size(), c); }

  P expr() {
    P acc = [&] {
      if (accept('-')) return -term();
      accept('+');
      return term();
    }();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  P term() {
    P acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        std::size_t at = pos_;
        P d = factor();
        if (d.is_zero() || d.degree() != 0) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        acc = acc.scaled(field_.inv(d.leading_coefficient()));
      } else {
        return acc;
      }
    }
  }

  P factor() {
    P base = primary();
    if (accept('^')) {
      skip();
      bool braced = accept('{');
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("malformed exponent");
      unsigned e = static_cast<unsigned>(std::stoul(text_.substr(start, pos_ - start)));
      if (braced && !accept('}')) fail("missing '}'");
      base = base.pow(e);
    }
    return base;
  }

  P primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      P r = expr();
      if (!accept(')')) fail("missing ')'");
      return r;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      Integer n(text_.substr(start, pos_ - start));
      return constant(field_.from_rational(Rational(n)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return P::variable(field_, vars_.size(), i);
      if (name == "w") {
        if constexpr (std::is_same_v<F, QuadraticField>) {
          return constant(field_.gen());
        } else {
          pos_ = start;
          fail("'w' is only defined over QQ(w)");
        }
      }
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const F& field_;
  const std::vector<std::string>& vars_;
  std::string text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

template <Field F>
MultiPoly<F> parse_poly(const F& field, const std::vector<std::string>& vars, const std::string& text,
                        std::size_t line = 0) {
  return PolyParser<F>(field, vars, text, line).parse();
}

inline std::string format_monomial(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

template <Field F>
std::string format_poly(const MultiPoly<F>& f, const std::vector<std::string>& vars) {
  if (f.is_zero()) return "0";
  const F& field = f.field();
  const auto minus_one = field.neg(field.one());
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::string piece;
    std::string mono = format_monomial(m, vars);
    if (mono.empty()) {
      piece = field.format(c);
    } else if (field.equal(c, field.one())) {
      piece = mono;
    } else if (field.equal(c, minus_one)) {
      piece = "-" + mono;
    } else {
      piece = field.format(c) + "*" + mono;
    }
    if (first) {
      out = piece;
      first = false;
    } else if (piece[0] == '-') {
      out += " - " + piece.substr(1);
    } else {
      out += " + " + piece;
    }
  }
  return out;
}

/// A list of polynomials with their field and variable names.
template <Field F>
struct PolySystem {
  F field;
  std::vector<std::string> vars;
  std::vector<MultiPoly<F>> polys;
};

using AnyPolySystem =
    std::variant<PolySystem<RationalField>, PolySystem<QuadraticField>, PolySystem<PrimeField>>;

inline std::string format_field_header(const AnyField& f) {
  return std::visit([](const auto& x) { return x.name(); }, f);
}

/// Compact variable list: collapses consecutive prefix+index runs to ranges.
inline std::string format_variable_list(const std::vector<std::string>& vars) {
  std::string out;
  std::size_t i = 0;
  auto split = [](const std::string& name, std::string& prefix, long& num) {
    std::size_t k = name.size();
    while (k > 0 && std::isdigit(static_cast<unsigned char>(name[k - 1]))) --k;
    if (k == name.size() || k == 0) return false;
    prefix = name.substr(0, k);
    num = std::stol(name.substr(k));
    return name.substr(k) == std::to_string(num);
  };
  while (i < vars.size()) {
    std::string prefix;
    long start = 0;
    std::size_t j = i;
    if (split(vars[i], prefix, start)) {
      while (j + 1 < vars.size()) {
        std::string p2;
        long n2 = 0;
        if (split(vars[j + 1], p2, n2) && p2 == prefix && n2 == start + long(j + 1 - i)) {
          ++j;
        } else {
          break;
        }
      }
    }
    if (!out.empty()) out += " ";
    if (j >= i + 2) {
      out += vars[i] + " .. " + vars[j];
    } else {
      for (std::size_t k = i; k <= j; ++k) out += (k > i ? " " : "") + vars[k];
    }
    i = j + 1;
  }
  return out;
}

template <Field F>
std::string format_system(const PolySystem<F>& sys) {
  std::string out = "field: " + sys.field.name() + "\n";
  out += "vars: " + format_variable_list(sys.vars) + "\n";
  for (const auto& p : sys.polys) out += format_poly(p, sys.vars) + "\n";
  return out;
}

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

/// Parse a whole polynomial file. Blank lines and '#' comments are ignored.
inline AnyPolySystem parse_system(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<AnyField> field;
  std::optional<std::vector<std::string>> vars;
  std::vector<std::pair<std::size_t, std::string>> bodies;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    if (t.rfind("field:", 0) == 0) {
      try {
        field = parse_field_name(t.substr(6));
      } catch (const std::exception& e) {
        throw ParseError(e.what(), lineno, 1);
      }
    } else if (t.rfind("vars:", 0) == 0) {
      vars = parse_variable_list(t.substr(5));
    } else {
      bodies.emplace_back(lineno, t);
    }
  }
  if (!field) throw ParseError("missing 'field:' header");
  if (!vars) throw ParseError("missing 'vars:' header");
  return std::visit(
      [&](const auto& f) -> AnyPolySystem {
        using Fd = std::decay_t<decltype(f)>;
        PolySystem<Fd> sys{f, *vars, {}};
        for (const auto& [ln, body] : bodies) sys.polys.push_back(parse_poly(f, *vars, body, ln));
        return sys;
      },
      *field);
}

}  // namespace coverforge::alg
