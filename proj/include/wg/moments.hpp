#pragma once

// Haar integrals of coordinates u_ij and of sphere coordinates x_i = u_1i.

#include "wg/cache.hpp"
#include "wg/combinatorics.hpp"
#include "wg/matrix.hpp"
#include "wg/pairings.hpp"
#include "wg/weingarten.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wg {

struct MomentOptions {
  WeingartenCache* cache = nullptr;  // null: process-wide memory cache
  SingularPolicy policy = SingularPolicy::reduced_basis;
};

namespace detail {

inline void check_indices(const std::vector<int>& t, int N, const char* what) {
  if (N < 1) throw std::invalid_argument("dimension N must be positive");
  for (int v : t)
    if (v < 1 || v > N)
      throw std::invalid_argument(std::string(what) + ": index " + std::to_string(v) + " outside 1.." +
                                  std::to_string(N));
}

inline std::vector<int> kronecker_column(const std::vector<Partition>& basis, const std::vector<int>& t,
                                         bool twisted) {
  std::vector<int> out(basis.size());
  for (std::size_t r = 0; r < basis.size(); ++r) out[r] = twisted ? delta_bar(basis[r], t) : delta(basis[r], t);
  return out;
}

}  // namespace detail

/// ∫ u_{i1 j1} ... u_{ik jk} = Σ_{π,σ} δ_π(i) δ_σ(j) W(π,σ), with signed
/// symbols in the twisted case.
inline Rational haar_integral(PairingFamily family, bool twisted, int N, const std::vector<int>& i,
                              const std::vector<int>& j, const MomentOptions& opt = {}) {
  if (i.size() != j.size()) throw std::invalid_argument("i and j tuples differ in length");
  detail::check_indices(i, N, "i");
  detail::check_indices(j, N, "j");
  const int k = static_cast<int>(i.size());
  if (k % 2) return 0;
  WeingartenCache& cache = opt.cache ? *opt.cache : memory_cache();
  const auto w = cache.weights(family, k, N, opt.policy);
  const auto di = detail::kronecker_column(w->basis, i, twisted);
  const auto dj = detail::kronecker_column(w->basis, j, twisted);
  Rational sum = 0;
  for (std::size_t r = 0; r < w->order(); ++r) {
    if (!di[r]) continue;
    for (std::size_t c = 0; c < w->order(); ++c)
      if (dj[c]) sum += (*w)(r, c) * (di[r] * dj[c]);
  }
  return sum;
}

/// ∫ x_{i1} ... x_{ik} over the sphere of the family, x_i = u_{1i}.
inline Rational sphere_moment(PairingFamily family, bool twisted, const std::vector<int>& i, int N,
                              const MomentOptions& opt = {}) {
  return haar_integral(family, twisted, N, std::vector<int>(i.size(), 1), i, opt);
}

/// m_2, m_4, ..., m_{2 lmax} of √N x_1: m_{2l} = N^l ∫ x_1^{2l}.
inline std::vector<Rational> law_moments(PairingFamily family, bool twisted, int N, int lmax,
                                         const MomentOptions& opt = {}) {
  if (lmax < 0) throw std::invalid_argument("lmax must be nonnegative");
  std::vector<Rational> out;
  for (int l = 1; l <= lmax; ++l)
    out.push_back(Rational(ipow(Integer(N), l)) * sphere_moment(family, twisted, std::vector<int>(2 * l, 1), N, opt));
  return out;
}

/// Limit of m_{2l} as N grows: the number of pairings of 2l points in the family.
inline Integer asymptotic_reference(PairingFamily family, int l) { return reference_counts(family, l); }

/// Matrix of ⟨x_a x_b, x_i x_j⟩ = ∫ x_a x_b x_j x_i over index pairs a ≤ b,
/// i ≤ j in lexicographic order.
inline RationalEntries quadratic_scalar_products(PairingFamily family, bool twisted, int N,
                                                 const MomentOptions& opt = {}) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= N; ++a)
    for (int b = a; b <= N; ++b) pairs.emplace_back(a, b);
  RationalEntries m(pairs.size(), pairs.size());
  for (std::size_t r = 0; r < pairs.size(); ++r)
    for (std::size_t c = 0; c < pairs.size(); ++c) {
      const auto [a, b] = pairs[r];
      const auto [i, j] = pairs[c];
      m(r, c) = sphere_moment(family, twisted, {a, b, j, i}, N, opt);
    }
  return m;
}

}  // namespace wg
