#pragma once

// Dense exact matrices and elimination.

#include "wg/numeric.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace wg {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = r + 1; c < cols_; ++c)
        if ((*this)(r, c) != (*this)(c, r)) return false;
    return true;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t m = 0; m < a.cols_; ++m) {
        const T& x = a(r, m);
        if (x == 0) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += x * b(m, c);
      }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalEntries = Matrix<Rational>;

inline RationalEntries to_rational(const IntegerMatrix& m) {
  RationalEntries out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Rational(m(r, c));
  return out;
}

namespace detail {

inline Integer exact_quotient(const Integer& num, const Integer& den) {
  Integer q, rem;
  boost::multiprecision::divide_qr(num, den, q, rem);
  if (rem != 0) throw std::logic_error("fraction-free elimination: inexact division");
  return q;
}

}  // namespace detail

/// Fraction-free (Bareiss) row echelon form; returns the pivot columns in
/// increasing order. The rank is the number of pivots.
inline std::vector<std::size_t> bareiss_pivot_columns(IntegerMatrix m) {
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      for (std::size_t c = col + 1; c < m.cols(); ++c)
        m(r, c) = detail::exact_quotient(m(row, col) * m(r, c) - m(r, col) * m(row, c), prev);
      m(r, col) = 0;
    }
    prev = m(row, col);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline std::size_t exact_rank(const IntegerMatrix& m) { return bareiss_pivot_columns(m).size(); }

/// Fraction-free Gauss-Jordan inverse. Returns nullopt when singular.
inline std::optional<RationalEntries> bareiss_inverse(const IntegerMatrix& a) {
  if (!a.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  IntegerMatrix m(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = a(r, c);
    m(r, n + r) = 1;
  }
  Integer prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != k)
      for (std::size_t c = 0; c < 2 * n; ++c) std::swap(m(p, c), m(k, c));
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      for (std::size_t c = 0; c < 2 * n; ++c) {
        if (c == k) continue;
        m(r, c) = detail::exact_quotient(m(k, k) * m(r, c) - m(r, k) * m(k, c), prev);
      }
      m(r, k) = 0;
    }
    prev = m(k, k);
  }
  // Left block is now det * I up to the common pivot; right block is det * A^{-1}.
  RationalEntries inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = Rational(m(r, n + c), m(r, r));
  return inv;
}

/// Rank over the rationals by plain Gaussian elimination.
inline std::size_t exact_rank(RationalEntries a) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t p = row;
    while (p < a.rows() && a(p, col) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(p, c), a(row, c));
    for (std::size_t r = row + 1; r < a.rows(); ++r) {
      if (a(r, col) == 0) continue;
      const Rational f = a(r, col) / a(row, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
    }
    ++row;
  }
  return row;
}

enum class PivotRule { first_nonzero, last_nonzero };

/// Gauss-Jordan over the rationals with a selectable pivot row rule.
inline std::optional<RationalEntries> gauss_jordan_inverse(RationalEntries a, PivotRule rule) {
  if (!a.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RationalEntries inv = RationalEntries::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    for (std::size_t r = k; r < n; ++r) {
      if (a(r, k) == 0) continue;
      p = r;
      if (rule == PivotRule::first_nonzero) break;
    }
    if (p == n) return std::nullopt;
    if (p != k)
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(p, c), a(k, c));
        std::swap(inv(p, c), inv(k, c));
      }
    const Rational piv = a(k, k);
    for (std::size_t c = 0; c < n; ++c) {
      a(k, c) /= piv;
      inv(k, c) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k || a(r, k) == 0) continue;
      const Rational f = a(r, k);
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(k, c);
        inv(r, c) -= f * inv(k, c);
      }
    }
  }
  return inv;
}

}  // namespace wg
