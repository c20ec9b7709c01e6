#pragma once

// Todd-Coxeter coset enumeration.
//
// Two strategies share one table implementation: HLT (relator-based, with a
// lookahead pass when the coset budget is reached) and Felsch (definitions
// in row order, deductions processed against every cyclic conjugate of
// every relator). Normal-closure words are enumerated as extra relators,
// which forces every conjugate of them into the subgroup.
//
// Cosets are 0-based; coset 0 is the subgroup itself.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "coverforge/fpgroup/word.hpp"

namespace coverforge::group {

enum class Strategy { HLT, Felsch };

struct EnumerationOptions {
  Strategy strategy = Strategy::HLT;
  std::size_t max_cosets = 1'000'000;
};

enum class TableStatus { Complete, Overflow };

/// Column 2g is generator g, column 2g+1 its inverse.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(std::size_t ngens, std::vector<std::vector<int>> rows, TableStatus status,
             std::size_t total_defined)
      : ngens_(ngens), rows_(std::move(rows)), status_(status), total_defined_(total_defined) {}

  std::size_t generators() const { return ngens_; }
  std::size_t index() const { return rows_.size(); }
  TableStatus status() const { return status_; }
  bool complete() const { return status_ == TableStatus::Complete; }
  /// Cosets defined over the whole run, including ones later merged away.
  std::size_t total_defined() const { return total_defined_; }

  int operator()(std::size_t coset, std::size_t col) const { return rows_[coset][col]; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }

  /// Image of a coset under a unit letter (+-(g+1) encoding).
  int step(int coset, int letter) const {
    std::size_t col = letter > 0 ? 2 * static_cast<std::size_t>(letter - 1)
                                 : 2 * static_cast<std::size_t>(-letter - 1) + 1;
    return rows_[static_cast<std::size_t>(coset)][col];
  }

  /// Right action of a word on a coset.
  int act(int coset, const Word& w) const {
    require_complete();
    for (int letter : w.expanded()) coset = step(coset, letter);
    return coset;
  }

  void require_complete() const {
    if (!complete()) throw GroupError("coset table is incomplete (enumeration overflowed)");
  }

 private:
  std::size_t ngens_ = 0;
  std::vector<std::vector<int>> rows_;
  TableStatus status_ = TableStatus::Overflow;
  std::size_t total_defined_ = 0;
};

namespace detail {

struct CapacityExhausted {};

class Enumerator {
 public:
  Enumerator(const FpPresentation& pres, const SubgroupSpec& sub, const EnumerationOptions& opts)
      : ncols_(2 * pres.rank()), opts_(opts) {
    pres.validate();
    if (opts.max_cosets == 0) throw GroupError("coset budget must be positive");
    auto add_rel = [&](const Word& w) {
      auto cols = to_columns(cyclically_reduce(w));
      if (!cols.empty()) relators_.push_back(std::move(cols));
    };
    for (const auto& r : pres.relators) add_rel(r);
    for (const auto& w : sub.normal_closure_words()) add_rel(w);
    for (const auto& w : sub.as_given_words()) {
      auto cols = to_columns(w);
      if (!cols.empty()) subgens_.push_back(std::move(cols));
    }
    for (const auto& w : sub.normal_closure_words())
      for (const auto& l : w.letters())
        if (l.gen < 0 || l.gen >= static_cast<int>(pres.rank())) throw GroupError("subgroup word uses an undeclared generator");
    for (const auto& w : sub.as_given_words())
      for (const auto& l : w.letters())
        if (l.gen < 0 || l.gen >= static_cast<int>(pres.rank())) throw GroupError("subgroup word uses an undeclared generator");
    new_coset();
  }

  CosetTable run() {
    bool ok = opts_.strategy == Strategy::HLT ? run_hlt() : run_felsch();
    if (!ok) return CosetTable(ncols_ / 2, {}, TableStatus::Overflow, total_defined_);
    return finish();
  }

 private:
  static Word cyclically_reduce(Word w) {
    for (;;) {
      const auto& ls = w.letters();
      if (ls.size() < 2 || ls.front().gen != ls.back().gen) return w;
      // Conjugate by the first syllable to merge the ends.
      Word head = Word::generator(ls.front().gen, ls.front().exp);
      w = head.inverse() * w * head;
    }
  }

  static std::vector<int> to_columns(const Word& w) {
    std::vector<int> out;
    for (int l : w.expanded()) out.push_back(l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1);
    return out;
  }

  int& T(int c, int x) { return table_[static_cast<std::size_t>(c) * ncols_ + static_cast<std::size_t>(x)]; }
  bool alive(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

  int new_coset() {
    if (parent_.size() >= opts_.max_cosets) throw CapacityExhausted{};
    int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + ncols_, -1);
    ++alive_count_;
    ++total_defined_;
    return c;
  }

  void define(int c, int x) {
    int d = new_coset();
    T(c, x) = d;
    T(d, x ^ 1) = c;
    if (record_) deductions_.push_back({c, x});
  }

  int rep(int k) {
    int l = k;
    while (parent_[static_cast<std::size_t>(l)] != l) l = parent_[static_cast<std::size_t>(l)];
    while (parent_[static_cast<std::size_t>(k)] != k) {
      int next = parent_[static_cast<std::size_t>(k)];
      parent_[static_cast<std::size_t>(k)] = l;
      k = next;
    }
    return l;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    int a = rep(k), b = rep(l);
    if (a == b) return;
    int lo = std::min(a, b), hi = std::max(a, b);
    parent_[static_cast<std::size_t>(hi)] = lo;
    --alive_count_;
    queue.push_back(hi);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int g = queue[i];
      for (int x = 0; x < static_cast<int>(ncols_); ++x) {
        int d = T(g, x);
        if (d < 0) continue;
        T(d, x ^ 1) = -1;
        int mu = rep(g), nu = rep(d);
        if (T(mu, x) >= 0) {
          merge(nu, T(mu, x), queue);
        } else if (T(nu, x ^ 1) >= 0) {
          merge(mu, T(nu, x ^ 1), queue);
        } else {
          T(mu, x) = nu;
          T(nu, x ^ 1) = mu;
          if (record_) deductions_.push_back({mu, x});
        }
      }
    }
  }

  // Scan w from coset a, filling holes when `fill` is set. Returns false if
  // the scan stopped incomplete.
  bool scan(int a, const std::vector<int>& w, bool fill) {
    int f = a, b = a;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    const int r = static_cast<int>(w.size());
    for (;;) {
      while (i < r && T(f, w[static_cast<std::size_t>(i)]) >= 0) {
        f = T(f, w[static_cast<std::size_t>(i)]);
        ++i;
      }
      if (i >= r) {
        if (f != a) coincidence(f, a);
        return true;
      }
      while (j >= i && T(b, w[static_cast<std::size_t>(j)] ^ 1) >= 0) {
        b = T(b, w[static_cast<std::size_t>(j)] ^ 1);
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        int x = w[static_cast<std::size_t>(i)];
        T(f, x) = b;
        T(b, x ^ 1) = f;
        if (record_) deductions_.push_back({f, x});
        return true;
      }
      if (!fill) return false;
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  // Scan every relator at every live coset without defining; then drop
  // dead cosets. Returns true if any space was recovered.
  bool lookahead_and_compact() {
    bool saved = record_;
    record_ = false;
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      for (const auto& rel : relators_) {
        if (!alive(c)) break;
        scan(c, rel, false);
      }
    }
    record_ = saved;
    std::size_t before = parent_.size();
    compact();
    return parent_.size() < before;
  }

  // Renumber live cosets consecutively, preserving order. Updates hlt_pos_.
  void compact() {
    std::vector<int> remap(parent_.size(), -1);
    int next = 0;
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c)
      if (alive(c)) remap[static_cast<std::size_t>(c)] = next++;
    std::vector<int> table(static_cast<std::size_t>(next) * ncols_, -1);
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      if (!alive(c)) continue;
      for (int x = 0; x < static_cast<int>(ncols_); ++x) {
        int d = T(c, x);
        if (d >= 0) d = remap[static_cast<std::size_t>(rep(d))];
        table[static_cast<std::size_t>(remap[static_cast<std::size_t>(c)]) * ncols_ + static_cast<std::size_t>(x)] = d;
      }
    }
    int new_pos = 0;
    for (int c = 0; c < hlt_pos_ && c < static_cast<int>(parent_.size()); ++c)
      if (remap[static_cast<std::size_t>(c)] >= 0) new_pos = remap[static_cast<std::size_t>(c)] + 1;
    hlt_pos_ = new_pos;
    table_ = std::move(table);
    parent_.resize(static_cast<std::size_t>(next));
    for (int c = 0; c < next; ++c) parent_[static_cast<std::size_t>(c)] = c;
    alive_count_ = static_cast<std::size_t>(next);
    deductions_.clear();
  }

  bool run_hlt() {
    for (;;) {
      try {
        for (const auto& w : subgens_) scan(0, w, true);
        break;
      } catch (const CapacityExhausted&) {
        if (!lookahead_and_compact()) return false;
      }
    }
    hlt_pos_ = 0;
    while (hlt_pos_ < static_cast<int>(parent_.size())) {
      int c = hlt_pos_;
      try {
        if (alive(c)) {
          for (const auto& rel : relators_) {
            if (!alive(c)) break;
            scan(c, rel, true);
          }
          if (alive(c)) {
            for (int x = 0; x < static_cast<int>(ncols_); ++x)
              if (T(c, x) < 0) define(c, x);
          }
        }
        ++hlt_pos_;
      } catch (const CapacityExhausted&) {
        // hlt_pos_ still points at the coset being processed; compaction
        // keeps it pointing there (or at its successor if it died).
        if (!lookahead_and_compact()) return false;
      }
    }
    return true;
  }

  bool run_felsch() {
    // Cyclic conjugates of relators and their inverses, by first column.
    conjugates_.assign(ncols_, {});
    for (const auto& rel : relators_) {
      std::vector<int> inv(rel.rbegin(), rel.rend());
      for (auto& x : inv) x ^= 1;
      for (const std::vector<int>* w : {&rel, static_cast<const std::vector<int>*>(&inv)}) {
        for (std::size_t s = 0; s < w->size(); ++s) {
          std::vector<int> rot(w->begin() + static_cast<long>(s), w->end());
          rot.insert(rot.end(), w->begin(), w->begin() + static_cast<long>(s));
          auto& bucket = conjugates_[static_cast<std::size_t>(rot[0])];
          if (std::find(bucket.begin(), bucket.end(), rot) == bucket.end()) bucket.push_back(std::move(rot));
        }
      }
    }
    record_ = true;
    try {
      for (const auto& w : subgens_) scan(0, w, true);
      process_deductions();
      int c = 0;
      for (;;) {
        while (c < static_cast<int>(parent_.size()) && (!alive(c) || first_hole(c) < 0)) ++c;
        if (c >= static_cast<int>(parent_.size())) break;
        define(c, first_hole(c));
        process_deductions();
      }
    } catch (const CapacityExhausted&) {
      // Felsch does not recover from exhaustion; retry with HLT on the
      // current partial table, which is still a valid partial enumeration.
      record_ = false;
      if (!lookahead_and_compact()) return false;
      return run_hlt_from_partial();
    }
    record_ = false;
    return close_with_hlt_sweep();
  }

  int first_hole(int c) {
    for (int x = 0; x < static_cast<int>(ncols_); ++x)
      if (T(c, x) < 0) return x;
    return -1;
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!alive(c)) continue;
      for (const auto& w : conjugates_[static_cast<std::size_t>(x)]) {
        if (!alive(c)) break;
        scan(c, w, false);
      }
      if (!alive(c)) continue;
      int d = T(c, x);
      if (d < 0) continue;
      d = rep(d);
      for (const auto& w : conjugates_[static_cast<std::size_t>(x ^ 1)]) {
        if (!alive(d)) break;
        scan(d, w, false);
      }
    }
  }

  bool run_hlt_from_partial() {
    hlt_pos_ = 0;
    return run_hlt();
  }

  // Felsch leaves a table with no holes; one full relator sweep confirms it
  // closes (and repairs it through HLT if it does not).
  bool close_with_hlt_sweep() {
    try {
      for (;;) {
        std::size_t defined = total_defined_;
        std::size_t live = alive_count_;
        for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
          if (!alive(c)) continue;
          for (const auto& rel : relators_) {
            if (!alive(c)) break;
            scan(c, rel, true);
          }
          if (alive(c))
            for (int x = 0; x < static_cast<int>(ncols_); ++x)
              if (T(c, x) < 0) define(c, x);
        }
        for (const auto& w : subgens_) scan(0, w, true);
        if (defined == total_defined_ && live == alive_count_) return true;
      }
    } catch (const CapacityExhausted&) {
      if (!lookahead_and_compact()) return false;
      return run_hlt();
    }
  }

  CosetTable finish() {
    compact();
    // Standardize: breadth-first numbering from coset 0.
    std::size_t n = parent_.size();
    std::vector<int> order{0};
    std::vector<int> label(n, -1);
    label[0] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (int x = 0; x < static_cast<int>(ncols_); ++x) {
        int d = T(order[i], x);
        if (d < 0) throw GroupError("internal: incomplete table after enumeration");
        if (label[static_cast<std::size_t>(d)] < 0) {
          label[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    }
    if (order.size() != n) throw GroupError("internal: disconnected coset table");
    std::vector<std::vector<int>> rows(n, std::vector<int>(ncols_, -1));
    for (std::size_t c = 0; c < n; ++c)
      for (int x = 0; x < static_cast<int>(ncols_); ++x)
        rows[static_cast<std::size_t>(label[c])][static_cast<std::size_t>(x)] = label[static_cast<std::size_t>(T(static_cast<int>(c), x))];
    CosetTable table(ncols_ / 2, std::move(rows), TableStatus::Complete, total_defined_);
    validate(table);
    return table;
  }

  void validate(const CosetTable& t) const {
    auto trace = [&](int c, const std::vector<int>& w) {
      for (int x : w) c = t(static_cast<std::size_t>(c), static_cast<std::size_t>(x));
      return c;
    };
    for (std::size_t c = 0; c < t.index(); ++c)
      for (std::size_t x = 0; x < ncols_; ++x)
        if (t(static_cast<std::size_t>(t(c, x)), x ^ 1) != static_cast<int>(c))
          throw GroupError("internal: coset table is not a bijection");
    for (std::size_t c = 0; c < t.index(); ++c)
      for (const auto& rel : relators_)
        if (trace(static_cast<int>(c), rel) != static_cast<int>(c))
          throw GroupError("internal: relator does not close in the coset table");
    for (const auto& w : subgens_)
      if (trace(0, w) != 0) throw GroupError("internal: subgroup generator moves coset 0");
  }

  std::size_t ncols_;
  EnumerationOptions opts_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> subgens_;
  std::vector<std::vector<std::vector<int>>> conjugates_;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::size_t alive_count_ = 0;
  std::size_t total_defined_ = 0;
  int hlt_pos_ = 0;
  bool record_ = false;
  struct Deduction {
    int coset;
    int col;
  };
  std::vector<Deduction> deductions_;
};

}  // namespace detail

/// Enumerate the cosets of `sub` in the group presented by `pres`. An
/// exhausted budget yields a table with status Overflow, never a wrong one.
inline CosetTable coset_enumerate(const FpPresentation& pres, const SubgroupSpec& sub,
                                  const EnumerationOptions& opts = {}) {
  return detail::Enumerator(pres, sub, opts).run();
}

/// True iff every subgroup generator fixes every coset, i.e. the subgroup
/// lies in its own core. Throws if the enumeration overflows.
inline bool is_normal(const CosetTable& table, const SubgroupSpec& sub) {
  table.require_complete();
  for (const auto& w : sub.as_given_words())
    for (std::size_t c = 0; c < table.index(); ++c)
      if (table.act(static_cast<int>(c), w) != static_cast<int>(c)) return false;
  // Normal-closure words were enumerated as relators and fix every coset.
  return true;
}

inline bool is_normal(const FpPresentation& pres, const SubgroupSpec& sub, const EnumerationOptions& opts = {}) {
  auto table = coset_enumerate(pres, sub, opts);
  if (!table.complete()) throw GroupError("coset enumeration overflowed while testing normality");
  return is_normal(table, sub);
}

}  // namespace coverforge::group
