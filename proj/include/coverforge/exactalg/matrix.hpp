#pragma once

// Dense matrices over an exact field and the elimination routines built on
// them: reduced row echelon form, rank and right kernels.
//
// Over GF(p) elimination is plain Gauss-Jordan. Over the characteristic-zero
// fields the forward pass is fraction-free (Bareiss) and only the final
// back-substitution divides by pivots.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "coverforge/exactalg/fields.hpp"

namespace coverforge::alg {

template <Field F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Element> values) {
    if (values.size() != cols_) throw std::invalid_argument("append_row: wrong width");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  /// Drop trailing rows so that rows() == n.
  void truncate_rows(std::size_t n) {
    rows_ = n;
    data_.resize(n * cols_);
  }

  std::vector<Element> apply(std::span<const Element> v) const {
    if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<Element> out(rows_, field_.zero());
    for (std::size_t r = 0; r < rows_; ++r) {
      Element acc = field_.zero();
      for (std::size_t c = 0; c < cols_; ++c) {
        const Element& a = (*this)(r, c);
        if (!field_.is_zero(a) && !field_.is_zero(v[c])) acc = field_.add(acc, field_.mul(a, v[c]));
      }
      out[r] = acc;
    }
    return out;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Element& a = (*this)(i, k);
        if (field_.is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          r(i, j) = field_.add(r(i, j), field_.mul(a, o(k, j)));
      }
    return r;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (std::size_t i = 0; i < data_.size(); ++i)
      if (!field_.equal(data_[i], o.data_[i])) return false;
    return true;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

namespace detail {

template <Field F>
std::vector<std::size_t> gauss_jordan(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!f.is_zero(m(r, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <Field F>
std::vector<std::size_t> bareiss_rref(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  auto prev = f.one();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const auto piv = m(r, c);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const auto lead = m(i, c);
      if (f.is_zero(lead)) {
        // Keep the fraction-free invariant: row_i <- piv * row_i / prev.
        for (std::size_t j = c + 1; j < m.cols(); ++j)
          if (!f.is_zero(m(i, j))) m(i, j) = f.div(f.mul(piv, m(i, j)), prev);
        continue;
      }
      for (std::size_t j = c + 1; j < m.cols(); ++j)
        m(i, j) = f.div(f.sub(f.mul(piv, m(i, j)), f.mul(lead, m(r, j))), prev);
      m(i, c) = f.zero();
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  // Back substitution to the reduced form.
  for (std::size_t k = pivots.size(); k-- > 0;) {
    std::size_t c = pivots[k];
    auto inv = f.inv(m(k, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(k, j) = f.mul(m(k, j), inv);
    for (std::size_t i = 0; i < k; ++i) {
      if (f.is_zero(m(i, c))) continue;
      auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!f.is_zero(m(k, j))) m(i, j) = f.sub(m(i, j), f.mul(factor, m(k, j)));
    }
  }
  return pivots;
}

}  // namespace detail

/// In-place reduced row echelon form; returns the pivot columns. Zero rows
/// end up at the bottom. The result is canonical for the row space.
template <Field F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  if constexpr (is_prime_field_v<F>) {
    return detail::gauss_jordan(m);
  } else {
    return detail::bareiss_rref(m);
  }
}

template <Field F>
std::size_t rank(Matrix<F> m) {
  return rref(m).size();
}

/// Basis of the right null space {v : M v = 0}, one vector per free column,
/// each with a 1 in its free column (the standard RREF kernel basis).
template <Field F>
std::vector<std::vector<typename F::Element>> kernel(Matrix<F> m) {
  const F& f = m.field();
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename F::Element>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename F::Element> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = f.neg(m(k, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Canonical basis (RREF rows) of the span of the given vectors.
template <Field F>
std::vector<std::vector<typename F::Element>> row_space_basis(
    const F& f, std::size_t width, const std::vector<std::vector<typename F::Element>>& vectors) {
  Matrix<F> m(f, 0, width);
  for (const auto& v : vectors) m.append_row(v);
  auto pivots = rref(m);
  std::vector<std::vector<typename F::Element>> out;
  for (std::size_t k = 0; k < pivots.size(); ++k) out.emplace_back(m.row(k).begin(), m.row(k).end());
  return out;
}

}  // namespace coverforge::alg
