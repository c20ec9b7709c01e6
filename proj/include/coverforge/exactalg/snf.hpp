#pragma once

// Smith normal form of integer matrices.
//
// Pivoting always picks an entry of minimal absolute value, which keeps the
// intermediate entries small on the sparse relator matrices produced by
// Reidemeister-Schreier rewriting. The elimination first runs on checked
// 64-bit integers and restarts on arbitrary precision if anything overflows.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "coverforge/exactalg/fields.hpp"

namespace coverforge::alg {

using IntMatrix = std::vector<std::vector<Integer>>;

struct SNFResult {
  /// min(rows, cols) diagonal entries d_1 | d_2 | ... (zeros last).
  std::vector<Integer> diagonal;
  /// Unimodular transforms with left * A * right = diag; empty unless requested.
  IntMatrix left;
  IntMatrix right;
};

namespace detail {

struct Overflow {};

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
  return r;
}
inline std::int64_t checked_neg(std::int64_t a) {
  if (a == INT64_MIN) throw Overflow{};
  return -a;
}
inline Integer checked_mul(const Integer& a, const Integer& b) { return a * b; }
inline Integer checked_sub(const Integer& a, const Integer& b) { return a - b; }
inline Integer checked_add(const Integer& a, const Integer& b) { return a + b; }
inline Integer checked_neg(const Integer& a) { return -a; }

template <class Int>
Int abs_of(const Int& a) {
  return a < 0 ? checked_neg(a) : a;
}

template <class Int>
class SmithEliminator {
 public:
  using Mat = std::vector<std::vector<Int>>;

  SmithEliminator(Mat a, bool transforms) : a_(std::move(a)), transforms_(transforms) {
    m_ = a_.size();
    n_ = m_ ? a_[0].size() : 0;
    if (transforms_) {
      left_.assign(m_, std::vector<Int>(m_, Int(0)));
      right_.assign(n_, std::vector<Int>(n_, Int(0)));
      for (std::size_t i = 0; i < m_; ++i) left_[i][i] = 1;
      for (std::size_t i = 0; i < n_; ++i) right_[i][i] = 1;
    }
  }

  void run() {
    std::size_t limit = std::min(m_, n_);
    for (std::size_t t = 0; t < limit; ++t) {
      if (!place_min_pivot(t, t)) break;
      for (;;) {
        if (!clear_column(t)) continue;
        if (!clear_row(t)) continue;
        if (fix_divisibility(t)) continue;
        break;
      }
      if (a_[t][t] < 0) {
        negate_row(t);
      }
    }
  }

  Mat& matrix() { return a_; }
  Mat& left() { return left_; }
  Mat& right() { return right_; }

 private:
  // Row ops act on A and on `left`; column ops on A and on `right`.
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    if (transforms_) std::swap(left_[i], left_[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (transforms_)
      for (auto& row : right_) std::swap(row[i], row[j]);
  }
  void negate_row(std::size_t i) {
    for (auto& x : a_[i]) x = checked_neg(x);
    if (transforms_)
      for (auto& x : left_[i]) x = checked_neg(x);
  }
  // row_i -= q * row_j
  void row_axpy(std::size_t i, std::size_t j, const Int& q, std::size_t from) {
    for (std::size_t c = from; c < n_; ++c)
      if (a_[j][c] != 0) a_[i][c] = checked_sub(a_[i][c], checked_mul(q, a_[j][c]));
    if (transforms_)
      for (std::size_t c = 0; c < m_; ++c)
        if (left_[j][c] != 0) left_[i][c] = checked_sub(left_[i][c], checked_mul(q, left_[j][c]));
  }
  // col_i -= q * col_j
  void col_axpy(std::size_t i, std::size_t j, const Int& q, std::size_t from) {
    for (std::size_t r = from; r < m_; ++r)
      if (a_[r][j] != 0) a_[r][i] = checked_sub(a_[r][i], checked_mul(q, a_[r][j]));
    if (transforms_)
      for (std::size_t r = 0; r < n_; ++r)
        if (right_[r][j] != 0) right_[r][i] = checked_sub(right_[r][i], checked_mul(q, right_[r][j]));
  }

  bool place_min_pivot(std::size_t r0, std::size_t c0) {
    std::optional<Int> best;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = r0; i < m_; ++i) {
      for (std::size_t j = c0; j < n_; ++j) {
        if (a_[i][j] == 0) continue;
        Int v = abs_of(a_[i][j]);
        if (!best || v < *best) {
          best = v;
          bi = i;
          bj = j;
          if (v == 1) goto found;
        }
      }
    }
    if (!best) return false;
  found:
    swap_rows(r0, bi);
    swap_cols(c0, bj);
    return true;
  }

  // Returns true once every entry below the pivot is zero.
  bool clear_column(std::size_t t) {
    bool clean = true;
    for (std::size_t i = t + 1; i < m_; ++i) {
      if (a_[i][t] == 0) continue;
      Int q = a_[i][t] / a_[t][t];
      if (q != 0) row_axpy(i, t, q, t);
      if (a_[i][t] != 0) clean = false;
    }
    if (clean) return true;
    // Move the smallest remainder up as the new pivot.
    std::size_t bi = t;
    Int best = abs_of(a_[t][t]);
    for (std::size_t i = t + 1; i < m_; ++i) {
      if (a_[i][t] != 0 && abs_of(a_[i][t]) < best) {
        best = abs_of(a_[i][t]);
        bi = i;
      }
    }
    swap_rows(t, bi);
    return false;
  }

  bool clear_row(std::size_t t) {
    bool clean = true;
    for (std::size_t j = t + 1; j < n_; ++j) {
      if (a_[t][j] == 0) continue;
      Int q = a_[t][j] / a_[t][t];
      if (q != 0) col_axpy(j, t, q, t);
      if (a_[t][j] != 0) clean = false;
    }
    if (clean) return true;
    std::size_t bj = t;
    Int best = abs_of(a_[t][t]);
    for (std::size_t j = t + 1; j < n_; ++j) {
      if (a_[t][j] != 0 && abs_of(a_[t][j]) < best) {
        best = abs_of(a_[t][j]);
        bj = j;
      }
    }
    swap_cols(t, bj);
    return false;
  }

  // If the pivot fails to divide some remaining entry, fold that row into
  // the pivot row and ask for another round.
  bool fix_divisibility(std::size_t t) {
    Int p = abs_of(a_[t][t]);
    if (p == 1) return false;
    for (std::size_t i = t + 1; i < m_; ++i) {
      for (std::size_t j = t + 1; j < n_; ++j) {
        if (a_[i][j] % p != 0) {
          row_axpy(t, i, Int(-1), t);
          return true;
        }
      }
    }
    return false;
  }

  Mat a_;
  bool transforms_;
  std::size_t m_ = 0, n_ = 0;
  Mat left_, right_;
};

template <class Int>
SNFResult smith_with(const IntMatrix& input, bool transforms) {
  std::vector<std::vector<Int>> a(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    a[i].reserve(input[i].size());
    for (const auto& x : input[i]) {
      if constexpr (std::is_same_v<Int, std::int64_t>) {
        if (x > INT64_MAX / 2 || x < INT64_MIN / 2) throw Overflow{};
        a[i].push_back(static_cast<std::int64_t>(x));
      } else {
        a[i].push_back(x);
      }
    }
  }
  SmithEliminator<Int> e(std::move(a), transforms);
  e.run();
  SNFResult out;
  std::size_t m = input.size(), n = m ? input[0].size() : 0;
  for (std::size_t t = 0; t < std::min(m, n); ++t) out.diagonal.emplace_back(e.matrix()[t][t]);
  if (transforms) {
    auto convert = [](const std::vector<std::vector<Int>>& src) {
      IntMatrix dst(src.size());
      for (std::size_t i = 0; i < src.size(); ++i)
        for (const auto& x : src[i]) dst[i].emplace_back(x);
      return dst;
    };
    out.left = convert(e.left());
    out.right = convert(e.right());
  }
  return out;
}

}  // namespace detail

/// Smith normal form. Transforms are optional because the left transform of
/// a tall relator matrix is large.
inline SNFResult smith_normal_form(const IntMatrix& a, bool with_transforms = false) {
  if (!a.empty()) {
    for (const auto& row : a)
      if (row.size() != a[0].size()) throw std::invalid_argument("smith_normal_form: ragged matrix");
  }
  try {
    return detail::smith_with<std::int64_t>(a, with_transforms);
  } catch (const detail::Overflow&) {
    return detail::smith_with<Integer>(a, with_transforms);
  }
}

inline IntMatrix int_matmul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t m = a.size(), k = b.size(), n = k ? b[0].size() : 0;
  IntMatrix r(m, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

/// Exact determinant by fraction-free elimination.
inline Integer int_determinant(IntMatrix a) {
  std::size_t n = a.size();
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * (n ? a[n - 1][n - 1] : Integer(1));
}

}  // namespace coverforge::alg
