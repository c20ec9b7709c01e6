#pragma once

// Words, finitely presented groups and subgroup descriptions.

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace coverforge::group {

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Letter {
  int gen = 0;
  long exp = 0;
  bool operator==(const Letter&) const = default;
};

/// A freely reduced word: adjacent letters never share a generator and no
/// exponent is zero. The empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) { append(letters); }
  static Word generator(int g, long e = 1) { return Word({{g, e}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t syllables() const { return letters_.size(); }
  long length() const {
    long n = 0;
    for (const auto& l : letters_) n += l.exp < 0 ? -l.exp : l.exp;
    return n;
  }

  Word operator*(const Word& o) const {
    Word r(*this);
    r.append(o.letters_);
    return r;
  }
  Word inverse() const {
    Word r;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back({it->gen, -it->exp});
    return r;
  }
  Word pow(long n) const {
    Word base = n < 0 ? inverse() : *this;
    Word r;
    for (long k = 0; k < (n < 0 ? -n : n); ++k) r = r * base;
    return r;
  }

  /// Expanded as +-(g+1) per unit letter: positive for g, negative for g^-1.
  std::vector<int> expanded() const {
    std::vector<int> out;
    for (const auto& l : letters_) {
      long n = l.exp < 0 ? -l.exp : l.exp;
      for (long k = 0; k < n; ++k) out.push_back(l.exp > 0 ? l.gen + 1 : -(l.gen + 1));
    }
    return out;
  }

  bool operator==(const Word&) const = default;

 private:
  void append(const std::vector<Letter>& more) {
    for (const auto& l : more) {
      if (l.exp == 0) continue;
      if (!letters_.empty() && letters_.back().gen == l.gen) {
        letters_.back().exp += l.exp;
        if (letters_.back().exp == 0) letters_.pop_back();
      } else {
        letters_.push_back(l);
      }
    }
  }

  std::vector<Letter> letters_;
};

inline Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

struct FpPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t rank() const { return generators.size(); }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == name) return static_cast<int>(i);
    return -1;
  }

  void validate() const {
    for (std::size_t i = 0; i < generators.size(); ++i) {
      if (generators[i].empty()) throw GroupError("empty generator name");
      for (std::size_t j = 0; j < i; ++j)
        if (generators[i] == generators[j]) throw GroupError("duplicate generator '" + generators[i] + "'");
    }
    for (const auto& r : relators)
      for (const auto& l : r.letters())
        if (l.gen < 0 || l.gen >= static_cast<int>(generators.size()))
          throw GroupError("relator uses an undeclared generator");
  }
};

enum class ClosureMode { AsGiven, NormalClosure };

/// A subgroup described by generator words. In NormalClosure mode the
/// subgroup is the normal closure of the words; `normal_words` always
/// contributes its normal closure, so mixed specs describe <gens> * N.
struct SubgroupSpec {
  std::vector<Word> generators;
  ClosureMode mode = ClosureMode::AsGiven;
  std::vector<Word> normal_words;

  std::vector<Word> as_given_words() const {
    return mode == ClosureMode::AsGiven ? generators : std::vector<Word>{};
  }
  std::vector<Word> normal_closure_words() const {
    std::vector<Word> out = normal_words;
    if (mode == ClosureMode::NormalClosure) out.insert(out.end(), generators.begin(), generators.end());
    return out;
  }
};

std::string format_word(const Word& w, const FpPresentation& pres);

namespace detail {

class WordParser {
 public:
  WordParser(const std::string& text, const FpPresentation& pres) : s_(text), pres_(pres) {}

  Word parse() {
    Word w = sequence();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw GroupError("word '" + s_ + "' at column " + std::to_string(pos_ + 1) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*'))
      ++pos_;
  }

  Word sequence() {
    Word w;
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')' || s_[pos_] == ']' || s_[pos_] == ',') return w;
      w = w * item();
    }
  }

  Word item() {
    Word base = atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      base = base.pow(exponent());
    }
    return base;
  }

  long exponent() {
    skip();
    bool braced = false;
    if (pos_ < s_.size() && s_[pos_] == '{') {
      braced = true;
      ++pos_;
    }
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("malformed exponent");
    long e = std::stol(s_.substr(start, pos_ - start));
    if (braced) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '}') fail("missing '}' in exponent");
      ++pos_;
    }
    return neg ? -e : e;
  }

  Word atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of word");
    if (s_[pos_] == '(') {
      ++pos_;
      Word w = sequence();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return w;
    }
    if (s_[pos_] == '[') {
      ++pos_;
      Word a = sequence();
      if (pos_ >= s_.size() || s_[pos_] != ',') fail("commutator needs ','");
      ++pos_;
      Word b = sequence();
      if (pos_ >= s_.size() || s_[pos_] != ']') fail("missing ']'");
      ++pos_;
      return commutator(a, b);
    }
    if (s_[pos_] == '1') {
      ++pos_;
      return {};
    }
    // Longest declared generator name at this position.
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t g = 0; g < pres_.generators.size(); ++g) {
      const auto& name = pres_.generators[g];
      if (name.size() > best_len && s_.compare(pos_, name.size(), name) == 0) {
        best = static_cast<int>(g);
        best_len = name.size();
      }
    }
    if (best < 0) fail("unknown symbol");
    pos_ += best_len;
    return Word::generator(best);
  }

  const std::string& s_;
  const FpPresentation& pres_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parse a word such as "b^3z^{-2}(zbz^-1)^3" over the presentation's
/// generators. Empty input is the identity.
inline Word parse_word(const std::string& text, const FpPresentation& pres) {
  return detail::WordParser(text, pres).parse();
}

inline std::string format_word(const Word& w, const FpPresentation& pres) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    out += pres.generators.at(static_cast<std::size_t>(l.gen));
    if (l.exp != 1) out += l.exp < 0 ? "^{" + std::to_string(l.exp) + "}" : "^" + std::to_string(l.exp);
  }
  return out;
}

/// Contents of a presentation file.
struct PresentationFile {
  FpPresentation presentation;
  std::map<std::string, SubgroupSpec> subgroups;
  std::map<std::string, Word> words;
};

/// Format:
///   gens: z b
///   rel: <word>                       (one per line)
///   sub <name>: <word>; <word>; ...   (append "normal" after the name for
///                                      normal-closure mode)
///   word <name>: <word>
inline PresentationFile parse_presentation_file(std::istream& in) {
  PresentationFile out;
  std::string line;
  std::size_t lineno = 0;
  bool have_gens = false;
  auto trim = [](std::string s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  auto err = [&](const std::string& m) { return GroupError("line " + std::to_string(lineno) + ": " + m); };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw err("expected 'key: value'");
    std::string key = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    try {
      if (key == "gens") {
        std::istringstream ss(value);
        for (std::string g; ss >> g;) out.presentation.generators.push_back(g);
        out.presentation.validate();
        have_gens = true;
      } else if (!have_gens) {
        throw err("'gens:' must come first");
      } else if (key == "rel") {
        out.presentation.relators.push_back(parse_word(value, out.presentation));
      } else if (key.rfind("sub ", 0) == 0) {
        std::istringstream ss(key.substr(4));
        std::string name, flag;
        ss >> name >> flag;
        SubgroupSpec spec;
        if (flag == "normal") spec.mode = ClosureMode::NormalClosure;
        else if (!flag.empty()) throw err("unknown subgroup flag '" + flag + "'");
        std::size_t start = 0;
        while (start <= value.size()) {
          auto semi = value.find(';', start);
          std::string part = trim(value.substr(start, semi == std::string::npos ? std::string::npos : semi - start));
          if (!part.empty()) spec.generators.push_back(parse_word(part, out.presentation));
          if (semi == std::string::npos) break;
          start = semi + 1;
        }
        out.subgroups[name] = spec;
      } else if (key.rfind("word ", 0) == 0) {
        out.words[trim(key.substr(5))] = parse_word(value, out.presentation);
      } else {
        throw err("unknown key '" + key + "'");
      }
    } catch (const GroupError& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      throw err(msg);
    }
  }
  if (!have_gens) throw GroupError("presentation file has no 'gens:' line");
  return out;
}

}  // namespace coverforge::group
