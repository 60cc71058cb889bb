#pragma once

// Gram and Weingarten matrices over the canonical pairing bases.

#include "wg/linmaps.hpp"
#include "wg/matrix.hpp"
#include "wg/numeric.hpp"
#include "wg/pairings.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wg {

inline constexpr int default_max_k = 10;

struct RationalMatrix {
  PairingFamily family = PairingFamily::classical;
  int k = 0;
  int N = 1;
  std::vector<Partition> basis;
  RationalEntries entries;

  std::size_t order() const { return basis.size(); }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries(r, c); }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

class GramSingular : public std::runtime_error {
 public:
  GramSingular(PairingFamily family, int k, int N, std::size_t rank, std::size_t order)
      : std::runtime_error("Gram matrix is singular for family=" + std::string(family_name(family)) +
                           " k=" + std::to_string(k) + " N=" + std::to_string(N) + " (exact rank " +
                           std::to_string(rank) + " of " + std::to_string(order) + ")"),
        family_(family), k_(k), N_(N), rank_(rank), order_(order) {}

  PairingFamily family() const { return family_; }
  int k() const { return k_; }
  int N() const { return N_; }
  std::size_t rank() const { return rank_; }
  std::size_t order() const { return order_; }

 private:
  PairingFamily family_;
  int k_;
  int N_;
  std::size_t rank_;
  std::size_t order_;
};

namespace detail {

inline void check_gram_args(int k, int N, int max_k) {
  if (k < 0 || k % 2) throw std::invalid_argument("k must be a nonnegative even integer");
  if (N < 1) throw std::invalid_argument("dimension N must be positive");
  if (k > max_k)
    throw BoundExceeded("k=" + std::to_string(k) + " exceeds the configured bound " + std::to_string(max_k));
}

}  // namespace detail

/// Integer Gram matrix N^{|π∨σ|} over the given basis.
inline IntegerMatrix gram_entries(const std::vector<Partition>& basis, int N) {
  const std::size_t n = basis.size();
  IntegerMatrix g(n, n);
  const Integer base(N);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      g(r, c) = ipow(base, static_cast<unsigned>(join_block_count(basis[r], basis[c])));
      g(c, r) = g(r, c);
    }
  return g;
}

inline IntegerMatrix gram_integer(PairingFamily family, int k, int N, int max_k = default_max_k) {
  detail::check_gram_args(k, N, max_k);
  return gram_entries(enumerate_pairings(k, family), N);
}

inline RationalMatrix gram_matrix(PairingFamily family, int k, int N, int max_k = default_max_k) {
  detail::check_gram_args(k, N, max_k);
  RationalMatrix m{family, k, N, enumerate_pairings(k, family), {}};
  m.entries = to_rational(gram_entries(m.basis, N));
  return m;
}

/// Exact inverse of the Gram matrix; GramSingular when the fixed vectors are dependent.
inline RationalMatrix weingarten_matrix(PairingFamily family, int k, int N, int max_k = default_max_k) {
  detail::check_gram_args(k, N, max_k);
  RationalMatrix w{family, k, N, enumerate_pairings(k, family), {}};
  const IntegerMatrix g = gram_entries(w.basis, N);
  auto inv = bareiss_inverse(g);
  if (!inv) throw GramSingular(family, k, N, exact_rank(g), g.rows());
  w.entries = std::move(*inv);
  return w;
}

/// How moment evaluation treats a singular Gram matrix.
enum class SingularPolicy {
  strict,         // raise GramSingular
  reduced_basis,  // invert on a maximal independent subset of the fixed vectors
};

/// Generalized inverse W with G W G = G: the inverse of the principal block on
/// the pivot columns of G, padded with zeros. For a Gram matrix of vectors ξ_π
/// the sum Σ ξ_π W(π,σ) ξ_σ* is then the orthogonal projection onto their span,
/// which is all the integration formulas need. Equals the inverse when G is
/// invertible.
inline RationalMatrix reduced_weingarten_matrix(PairingFamily family, int k, int N, int max_k = default_max_k) {
  detail::check_gram_args(k, N, max_k);
  RationalMatrix w{family, k, N, enumerate_pairings(k, family), {}};
  const IntegerMatrix g = gram_entries(w.basis, N);
  const auto pivots = bareiss_pivot_columns(g);
  const std::size_t n = g.rows();
  if (pivots.size() == n) {
    w.entries = *bareiss_inverse(g);
    return w;
  }
  IntegerMatrix sub(pivots.size(), pivots.size());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < pivots.size(); ++c) sub(r, c) = g(pivots[r], pivots[c]);
  auto inv = bareiss_inverse(sub);
  if (!inv) throw std::logic_error("principal block on pivot columns is singular");
  w.entries = RationalEntries(n, n);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < pivots.size(); ++c) w.entries(pivots[r], pivots[c]) = (*inv)(r, c);
  return w;
}

}  // namespace wg
