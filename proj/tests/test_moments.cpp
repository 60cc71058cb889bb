#include "oracles_support.hpp"
#include "wg/wg.hpp"

#include <gtest/gtest.h>

using namespace wg;

TEST(Haar, Examples) {
  for (int N = 1; N <= 5; ++N) {
    EXPECT_EQ(haar_integral(PairingFamily::classical, false, N, {1, 1}, {1, 1}), Rational(1, N));
    if (N >= 2) EXPECT_EQ(haar_integral(PairingFamily::classical, false, N, {1, 1}, {1, 2}), 0);
  }
  for (int N = 2; N <= 5; ++N)
    EXPECT_EQ(haar_integral(PairingFamily::free, false, N, {1, 1, 1, 1}, {1, 1, 1, 1}), Rational(2, N * (N + 1)));
  EXPECT_EQ(haar_integral(PairingFamily::classical, false, 5, {1, 2}, {1, 2}), 0);
  EXPECT_EQ(haar_integral(PairingFamily::classical, false, 5, {1, 1}, {2, 2}), Rational(1, 5));
  EXPECT_EQ(haar_integral(PairingFamily::half, false, 3, {1, 2, 3}, {1, 2, 3}), 0);
}

TEST(Haar, Validation) {
  EXPECT_THROW(haar_integral(PairingFamily::classical, false, 3, {1, 2}, {1}), std::invalid_argument);
  EXPECT_THROW(haar_integral(PairingFamily::classical, false, 3, {1, 4}, {1, 1}), std::invalid_argument);
  EXPECT_THROW(haar_integral(PairingFamily::classical, false, 0, {}, {}), std::invalid_argument);
}

TEST(Haar, OrthogonalityRelations) {
  // Σ_k u_ik u_jk = δ_ij, integrated against another entry pair.
  const int N = 3;
  for (PairingFamily f : all_families)
    for (bool tw : {false, true}) {
      Rational s = 0;
      for (int k = 1; k <= N; ++k) s += haar_integral(f, tw, N, {1, 1, 2, 2}, {k, k, 1, 1});
      EXPECT_EQ(s, haar_integral(f, tw, N, {2, 2}, {1, 1}));
    }
}

TEST(Sphere, Examples) {
  for (int N = 2; N <= 6; ++N) {
    EXPECT_EQ(sphere_moment(PairingFamily::classical, false, {1, 1, 2, 2}, N), Rational(1, N * (N + 2)));
    EXPECT_EQ(sphere_moment(PairingFamily::free, false, {1, 1, 1, 1}, N), Rational(2, N * (N + 1)));
    EXPECT_EQ(sphere_moment(PairingFamily::classical, true, {1, 1, 1, 1}, N),
              sphere_moment(PairingFamily::classical, false, {1, 1, 1, 1}, N));
  }
  EXPECT_EQ(sphere_moment(PairingFamily::classical, false, {1, 1, 1, 2}, 3), 0);
  EXPECT_EQ(sphere_moment(PairingFamily::classical, false, {1, 1, 2, 2}, 2), Rational(1, 8));
  EXPECT_EQ(sphere_moment(PairingFamily::half, false, {1, 1, 1, 1}, 2), Rational(1, 3));
}

TEST(Sphere, TwistedSignsOnTwoCoordinates) {
  // x1 x2 = -x2 x1 on the twisted classical sphere.
  for (int N = 2; N <= 4; ++N)
    EXPECT_EQ(sphere_moment(PairingFamily::classical, true, {1, 2, 1, 2}, N),
              -sphere_moment(PairingFamily::classical, true, {1, 1, 2, 2}, N));
}

TEST(Sphere, ClassicalAgreesWithGammaOracleInFourCoordinates) {
  for (int N = 4; N <= 5; ++N)
    for (int deg = 0; deg <= 6; ++deg)
      for (const auto& t : ref::tuples(deg, 4))
        EXPECT_EQ(sphere_moment(PairingFamily::classical, false, t, N), Rational(ref::sphere_gamma(ref::counts(t, N), N)));
}

TEST(Sphere, SingularGramStrictPolicy) {
  WeingartenCache cache;
  const MomentOptions strict{&cache, SingularPolicy::strict};
  EXPECT_THROW(sphere_moment(PairingFamily::classical, false, {1, 1, 1, 1, 1, 1}, 2, strict), GramSingular);
  EXPECT_EQ(sphere_moment(PairingFamily::classical, false, {1, 1, 1, 1, 1, 1}, 2), Rational(5, 16));
}

TEST(Law, Examples) {
  for (int N = 1; N <= 6; ++N) EXPECT_EQ(law_moments(PairingFamily::classical, false, N, 1)[0], 1);
  EXPECT_EQ(asymptotic_reference(PairingFamily::classical, 3), 15);
  EXPECT_EQ(asymptotic_reference(PairingFamily::half, 2), 2);
  EXPECT_EQ(asymptotic_reference(PairingFamily::free, 3), 5);
  const auto f = law_moments(PairingFamily::free, false, 60, 2);
  EXPECT_LT(abs(f[1] - 2), Rational(1, 10));
  const auto h = law_moments(PairingFamily::half, false, 60, 3);
  EXPECT_LT(abs(h[2] - 6), Rational(1, 2));
}

TEST(Law, QuadraticScalarProducts) {
  const auto m = quadratic_scalar_products(PairingFamily::classical, false, 3);
  EXPECT_TRUE(m.symmetric());
  EXPECT_GT(m.rows(), 0u);
}

TEST(Combinatorics, Counts) {
  EXPECT_EQ(double_factorial(6), 15);
  EXPECT_EQ(double_factorial(0), 1);
  EXPECT_EQ(catalan(4), 14);
  for (int l = 0; l <= 5; ++l) {
    EXPECT_EQ(reference_counts(PairingFamily::classical, l), enumerate_pairings(2 * l, PairingFamily::classical).size());
    EXPECT_EQ(reference_counts(PairingFamily::half, l), enumerate_pairings(2 * l, PairingFamily::half).size());
    EXPECT_EQ(reference_counts(PairingFamily::free, l), enumerate_pairings(2 * l, PairingFamily::free).size());
  }
}
