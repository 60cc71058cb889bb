#include "oracles_support.hpp"
#include "wg/wg.hpp"

#include <gtest/gtest.h>

using namespace wg;

TEST(TMap, Semicircle) {
  for (int N = 1; N <= 4; ++N) {
    const auto t = t_map(semicircle(), N);
    ASSERT_EQ(t.rows(), N * N);
    ASSERT_EQ(t.cols(), 1);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) EXPECT_EQ(t(a * N + b, 0), a == b ? 1 : 0);
  }
}

TEST(TMap, IdentityAndSwap) {
  for (int N = 1; N <= 3; ++N) {
    const auto id = t_map(Partition::identity(2), N);
    const auto sw = t_map(basic_crossing(), N);
    for (int r = 0; r < N * N; ++r)
      for (int c = 0; c < N * N; ++c) {
        EXPECT_EQ(id(r, c), r == c);
        EXPECT_EQ(sw(r, c), r == (c % N) * N + c / N);
      }
  }
}

TEST(TBarMap, Crossings) {
  const int N = 3;
  const auto sw = t_bar_map(basic_crossing(), N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) EXPECT_EQ(sw(j * N + i, i * N + j), i == j ? 1 : -1);
  const auto h = t_bar_map(half_liberated_crossing(), N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        const bool distinct = i != j && j != k && i != k;
        EXPECT_EQ(h(k * N * N + j * N + i, i * N * N + j * N + k), distinct ? -1 : 1);
      }
}

TEST(TBarMap, EqualsTMapOnNoncrossing) {
  for (int n = 0; n <= 6; n += 2)
    for (int k = 0; k <= n; ++k)
      for (const auto& p : enumerate_pairings(k, n - k, PairingFamily::free))
        EXPECT_EQ(t_bar_map(p, 2), t_map(p, 2)) << p.to_string();
}

TEST(TMap, BoundIsEnforced) {
  EXPECT_THROW(t_map(Partition::identity(6), 10), BoundExceeded);
  EXPECT_THROW(t_map(semicircle(), 3, 8), BoundExceeded);
  EXPECT_NO_THROW(t_map(semicircle(), 3, 9));
}

TEST(Fixed, XiCount) {
  const auto v = xi_vector(Partition::from_blocks(0, 4, {{1, 2}, {3, 4}}), 2, false);
  EXPECT_EQ(std::count(v.coords.begin(), v.coords.end(), 1), 4);
}

TEST(Fixed, GramOfFixedVectors) {
  for (int k = 0; k <= 6; k += 2)
    for (int N = 1; N <= 3; ++N) {
      const auto basis = enumerate_pairings(k, PairingFamily::classical);
      for (const auto& p : basis)
        for (const auto& q : basis) {
          const auto want = ref::qpow(N, ref::join_blocks(p.partners(), q.partners()));
          EXPECT_EQ(ref::Q(inner_product(xi_vector(p, N, false), xi_vector(q, N, false))), want);
          EXPECT_EQ(ref::Q(inner_product(xi_vector(p, N, true), xi_vector(q, N, true))), want);
        }
    }
}

TEST(Algebra, CompositionLoops) {
  const Partition cup = involution(semicircle());
  for (int N = 1; N <= 5; ++N) {
    const auto prod = multiply(t_map(cup, N), t_map(semicircle(), N));
    EXPECT_EQ(prod(0, 0), N);
  }
}

TEST(Algebra, KroneckerMatchesTensor) {
  const auto ps = enumerate_pairings(1, 1, PairingFamily::classical);
  const auto qs = enumerate_pairings(0, 2, PairingFamily::classical);
  for (const auto& p : ps)
    for (const auto& q : qs) EXPECT_EQ(kronecker(t_map(p, 3), t_map(q, 3)), t_map(tensor(p, q), 3));
}
