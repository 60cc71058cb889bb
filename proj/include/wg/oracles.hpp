#pragma once

// Closed-form and numeric reference values for sphere integrals, independent
// of the Weingarten route.

#include "wg/combinatorics.hpp"
#include "wg/numeric.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace wg {

/// Exponent of each coordinate in a monomial; entry a is the power of x_{a+1}.
using ExponentProfile = std::vector<int>;

inline ExponentProfile profile_of(const std::vector<int>& indices, int N) {
  ExponentProfile p(N, 0);
  for (int v : indices) {
    if (v < 1 || v > N) throw std::invalid_argument("index outside 1..N");
    ++p[v - 1];
  }
  return p;
}

namespace detail {

inline void check_profile(const ExponentProfile& p, int N) {
  if (N < 1) throw std::invalid_argument("dimension N must be positive");
  if (static_cast<int>(p.size()) > N) throw std::invalid_argument("profile longer than N");
  for (int v : p)
    if (v < 0) throw std::invalid_argument("negative exponent");
}

}  // namespace detail

/// ∫ x_1^{l_1} ... x_N^{l_N} over the real sphere S^{N-1}:
/// (N-1)!! l_1!! ... l_N!! / (N + Σ l - 1)!!, zero unless every l_a is even.
inline Rational classical_sphere_integral(const ExponentProfile& profile, int N) {
  detail::check_profile(profile, N);
  int total = 0;
  Integer num = double_factorial(N - 1);
  for (int v : profile) {
    if (v % 2) return 0;
    num *= double_factorial(v);
    total += v;
  }
  return Rational(num, double_factorial(N + total - 1));
}

/// Half-liberated sphere integral from the binomial expansion of
/// |z_1|^{2l_1} ... |z_N|^{2l_N} over the real sphere of dimension 2N-1.
/// `common` holds the common odd/even occurrence count of each index.
inline Rational half_liberated_integral_sum(const ExponentProfile& common, int N) {
  detail::check_profile(common, N);
  ExponentProfile l = common;
  l.resize(N, 0);
  Rational sum = 0;
  std::vector<int> r(N, 0);
  std::function<void(int, Integer)> rec = [&](int a, Integer weight) {
    if (a == N) {
      ExponentProfile big(2 * N);
      for (int b = 0; b < N; ++b) {
        big[2 * b] = 2 * (l[b] - r[b]);
        big[2 * b + 1] = 2 * r[b];
      }
      sum += Rational(weight) * classical_sphere_integral(big, 2 * N);
      return;
    }
    for (r[a] = 0; r[a] <= l[a]; ++r[a]) rec(a + 1, weight * binomial(l[a], r[a]));
  };
  rec(0, 1);
  return sum;
}

/// Literal closed form 4^{Σl} (2N-1)! l_1! ... l_N! / (2N + Σl - 1)!; kept to
/// report its disagreement with the binomial sum, never used as a reference.
inline Rational half_liberated_integral_stated(const ExponentProfile& common, int N) {
  detail::check_profile(common, N);
  int total = 0;
  Integer num = factorial(2 * N - 1);
  for (int v : common) {
    num *= factorial(v);
    total += v;
  }
  num *= ipow(Integer(4), static_cast<unsigned>(total));
  return Rational(num, factorial(2 * N + total - 1));
}

/// q in [-1, 0) with q + 1/q = -N.
inline Real q_parameter(int N) {
  if (N < 3) throw std::invalid_argument("q parameter needs N >= 3");
  const Real n(N);
  return (-n + boost::multiprecision::sqrt(n * n - 4)) / 2;
}

namespace detail {

inline Real free_moment_sum(int l, int N, int prefactor_shift) {
  if (l < 1) throw std::invalid_argument("l must be positive");
  const Real q = q_parameter(N);
  Real sum = 0;
  for (int r = -l - 1; r <= l + 1; ++r) {
    if (r == 0) continue;
    const Real term = Real(binomial(2 * l + 2, l + r + 1)) * r / (1 + boost::multiprecision::pow(q, r));
    sum += (r % 2 ? -term : term);
  }
  const Real pre = boost::multiprecision::pow(Real(N + prefactor_shift), l);
  return (q + 1) / (q - 1) / (l + 1) * sum / pre;
}

}  // namespace detail

/// ∫ x_1^{2l} over the free sphere via the q-sum, working precision `digits`.
/// The prefactor is (N+2)^{-l}; free_moment_stated uses (N+1)^{-l}.
inline Real free_moment(int l, int N, unsigned digits = 50) {
  with_digits scope(digits);
  return detail::free_moment_sum(l, N, 2);
}

/// Same sum with an (N+1)^{-l} prefactor; does not reproduce the exact values.
inline Real free_moment_stated(int l, int N, unsigned digits = 50) {
  with_digits scope(digits);
  return detail::free_moment_sum(l, N, 1);
}

/// ∫_0^{π/2} cos^p t sin^q t dt = (π/2)^{ε(p)ε(q)} p!! q!! / (p+q+1)!!, ε = "is even".
inline double quarter_circle_closed_form(int p, int q) {
  const double half_pi = boost::math::constants::half_pi<double>();
  const double ratio = (double_factorial(p) * double_factorial(q)).convert_to<double>() /
                       double_factorial(p + q + 1).convert_to<double>();
  return (p % 2 == 0 && q % 2 == 0) ? half_pi * ratio : ratio;
}

inline double quarter_circle_numeric(int p, int q) {
  auto f = [p, q](double t) { return std::pow(std::cos(t), p) * std::pow(std::sin(t), q); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, boost::math::constants::half_pi<double>(), 15, 1e-14);
}

/// Average of x^a y^b over the unit circle by adaptive quadrature.
inline double circle_average_numeric(int a, int b) {
  auto f = [a, b](double t) { return std::pow(std::cos(t), a) * std::pow(std::sin(t), b); };
  const double two_pi = boost::math::constants::two_pi<double>();
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, two_pi, 15, 1e-14) / two_pi;
}

}  // namespace wg
