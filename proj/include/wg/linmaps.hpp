#pragma once

// Diagrams acting on tensor powers of C^N as exact integer matrices.
// Tuples are indexed row-major: (j_1..j_l) -> sum (j_t - 1) N^(l-t).

#include "wg/numeric.hpp"
#include "wg/partition.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wg {

inline constexpr std::int64_t default_max_entries = 10'000'000;

class BoundExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Dense N^l x N^k integer matrix of a map (C^N)^{⊗k} -> (C^N)^{⊗l}.
class TensorMatrix {
 public:
  TensorMatrix() = default;
  TensorMatrix(int N, int k, int l)
      : N_(N), k_(k), l_(l), rows_(ipow64(N, l)), cols_(ipow64(N, k)),
        data_(static_cast<std::size_t>(rows_ * cols_), 0) {}

  int dimension() const { return N_; }
  int upper_count() const { return k_; }
  int lower_count() const { return l_; }
  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }

  std::int64_t& operator()(std::int64_t r, std::int64_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::int64_t r, std::int64_t c) const { return data_[r * cols_ + c]; }
  const std::vector<std::int64_t>& data() const { return data_; }

  friend bool operator==(const TensorMatrix&, const TensorMatrix&) = default;

 private:
  int N_ = 1;
  int k_ = 0;
  int l_ = 0;
  std::int64_t rows_ = 1;
  std::int64_t cols_ = 1;
  std::vector<std::int64_t> data_ = std::vector<std::int64_t>(1, 0);
};

namespace detail {

inline void check_bound(int N, int legs, std::int64_t max_entries) {
  if (N < 1) throw std::invalid_argument("dimension N must be positive");
  std::int64_t total = 1;
  for (int i = 0; i < legs; ++i) {
    total *= N;
    if (total > max_entries)
      throw BoundExceeded("N^(k+l) exceeds the configured entry bound of " + std::to_string(max_entries));
  }
}

/// Calls f(tuple, row, col) for every assignment of 1..N to the legs of p.
template <class F>
void for_each_assignment(const Partition& p, int N, F&& f) {
  const int k = p.upper_count();
  const int n = p.size();
  std::vector<int> tuple(n, 1);
  while (true) {
    std::int64_t col = 0;
    std::int64_t row = 0;
    for (int t = 0; t < k; ++t) col = col * N + (tuple[t] - 1);
    for (int t = k; t < n; ++t) row = row * N + (tuple[t] - 1);
    f(tuple, row, col);
    int pos = n - 1;
    while (pos >= 0 && tuple[pos] == N) tuple[pos--] = 1;
    if (pos < 0) break;
    ++tuple[pos];
  }
}

}  // namespace detail

/// T_π: entry (j, i) = δ_π(i ⌢ j).
inline TensorMatrix t_map(const Partition& p, int N, std::int64_t max_entries = default_max_entries) {
  detail::check_bound(N, p.size(), max_entries);
  TensorMatrix m(N, p.upper_count(), p.lower_count());
  detail::for_each_assignment(p, N, [&](const std::vector<int>& t, std::int64_t r, std::int64_t c) {
    m(r, c) = delta(p, t);
  });
  return m;
}

/// Twisted map: entry (j, i) = ε(ker(i ⌢ j)) when ker(i ⌢ j) coarsens π, else 0.
inline TensorMatrix t_bar_map(const Partition& p, int N, std::int64_t max_entries = default_max_entries) {
  if (!p.is_even()) throw std::invalid_argument("t_bar_map requires an even partition");
  detail::check_bound(N, p.size(), max_entries);
  TensorMatrix m(N, p.upper_count(), p.lower_count());
  detail::for_each_assignment(p, N, [&](const std::vector<int>& t, std::int64_t r, std::int64_t c) {
    m(r, c) = delta_bar(p, t);
  });
  return m;
}

inline TensorMatrix multiply(const TensorMatrix& a, const TensorMatrix& b) {
  if (a.dimension() != b.dimension() || a.upper_count() != b.lower_count())
    throw std::invalid_argument("multiply: incompatible maps");
  TensorMatrix out(a.dimension(), b.upper_count(), a.lower_count());
  for (std::int64_t r = 0; r < a.rows(); ++r)
    for (std::int64_t m = 0; m < a.cols(); ++m) {
      const auto x = a(r, m);
      if (x == 0) continue;
      for (std::int64_t c = 0; c < b.cols(); ++c) out(r, c) += x * b(m, c);
    }
  return out;
}

inline TensorMatrix kronecker(const TensorMatrix& a, const TensorMatrix& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("kronecker: dimension mismatch");
  TensorMatrix out(a.dimension(), a.upper_count() + b.upper_count(), a.lower_count() + b.lower_count());
  for (std::int64_t r1 = 0; r1 < a.rows(); ++r1)
    for (std::int64_t c1 = 0; c1 < a.cols(); ++c1) {
      const auto x = a(r1, c1);
      if (x == 0) continue;
      for (std::int64_t r2 = 0; r2 < b.rows(); ++r2)
        for (std::int64_t c2 = 0; c2 < b.cols(); ++c2)
          out(r1 * b.rows() + r2, c1 * b.cols() + c2) = x * b(r2, c2);
    }
  return out;
}

/// Adjoint; entries are real so this is the transpose.
inline TensorMatrix adjoint(const TensorMatrix& a) {
  TensorMatrix out(a.dimension(), a.lower_count(), a.upper_count());
  for (std::int64_t r = 0; r < a.rows(); ++r)
    for (std::int64_t c = 0; c < a.cols(); ++c) out(c, r) = a(r, c);
  return out;
}

inline TensorMatrix scaled(TensorMatrix a, std::int64_t factor) {
  TensorMatrix out(a.dimension(), a.upper_count(), a.lower_count());
  for (std::int64_t r = 0; r < a.rows(); ++r)
    for (std::int64_t c = 0; c < a.cols(); ++c) out(r, c) = factor * a(r, c);
  return out;
}

/// Coordinates of ξ_π (or its twisted version) over all tuples of the legs of π.
struct FixedVector {
  int dimension = 1;
  std::vector<std::int64_t> coords;
};

inline FixedVector xi_vector(const Partition& p, int N, bool twisted,
                             std::int64_t max_entries = default_max_entries) {
  if (twisted && !p.is_even()) throw std::invalid_argument("twisted fixed vector requires an even partition");
  detail::check_bound(N, p.size(), max_entries);
  FixedVector v{N, std::vector<std::int64_t>(static_cast<std::size_t>(ipow64(N, p.size())), 0)};
  const Partition flat(0, p.size(), p.labels());  // index all legs as one row
  detail::for_each_assignment(flat, N, [&](const std::vector<int>& t, std::int64_t r, std::int64_t) {
    v.coords[r] = twisted ? delta_bar(p, t) : delta(p, t);
  });
  return v;
}

inline std::int64_t inner_product(const FixedVector& a, const FixedVector& b) {
  if (a.coords.size() != b.coords.size()) throw std::invalid_argument("inner_product: length mismatch");
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.coords.size(); ++i) s += a.coords[i] * b.coords[i];
  return s;
}

}  // namespace wg
