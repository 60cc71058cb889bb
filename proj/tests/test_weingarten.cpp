#include "oracles_support.hpp"
#include "wg/wg.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <thread>

#include <unistd.h>

using namespace wg;
namespace fs = std::filesystem;

TEST(Gram, Examples) {
  for (int N = 1; N <= 5; ++N) {
    const auto g = gram_matrix(PairingFamily::classical, 4, N);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(g(r, c), r == c ? N * N : N);
    const auto f = gram_matrix(PairingFamily::free, 4, N);
    EXPECT_EQ(f(0, 1), N);
    EXPECT_EQ(f(1, 1), N * N);
  }
  const auto g6 = gram_matrix(PairingFamily::classical, 6, 3);
  for (std::size_t r = 0; r < g6.order(); ++r) EXPECT_EQ(g6(r, r), 27);
}

TEST(Gram, ArgumentChecks) {
  EXPECT_THROW(gram_matrix(PairingFamily::classical, 3, 2), std::invalid_argument);
  EXPECT_THROW(gram_matrix(PairingFamily::classical, 12, 2), BoundExceeded);
  EXPECT_NO_THROW(gram_matrix(PairingFamily::free, 12, 2, 12));
}

TEST(Weingarten, SmallCases) {
  for (int N = 1; N <= 6; ++N)
    for (PairingFamily f : all_families) {
      const auto w = weingarten_matrix(f, 2, N);
      ASSERT_EQ(w.order(), 1u);
      EXPECT_EQ(w(0, 0), Rational(1, N));
    }
  for (int N = 2; N <= 6; ++N) {
    const auto w = weingarten_matrix(PairingFamily::free, 4, N);
    const Rational s(1, N * N * (N * N - 1));
    EXPECT_EQ(w(0, 0), s * (N * N));
    EXPECT_EQ(w(0, 1), s * (-N));
  }
}

TEST(Weingarten, InverseAndSymmetry) {
  for (PairingFamily f : all_families)
    for (int k = 2; k <= 8; k += 2)
      for (int N = k / 2 + 1; N <= k / 2 + 3; ++N) {
        const auto w = weingarten_matrix(f, k, N);
        const auto g = gram_matrix(f, k, N);
        const auto id = RationalEntries::identity(w.order());
        EXPECT_EQ(g.entries * w.entries, id);
        EXPECT_EQ(w.entries * g.entries, id);
        EXPECT_TRUE(w.entries.symmetric());
      }
}

TEST(Weingarten, AgreesWithReferenceInverse) {
  for (int N = 3; N <= 5; ++N) {
    const auto basis = enumerate_pairings(6, PairingFamily::classical);
    std::vector<std::vector<ref::Q>> g(basis.size(), std::vector<ref::Q>(basis.size()));
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t c = 0; c < basis.size(); ++c)
        g[r][c] = ref::qpow(N, ref::join_blocks(basis[r].partners(), basis[c].partners()));
    const auto inv = ref::invert(g);
    ASSERT_TRUE(inv);
    const auto w = weingarten_matrix(PairingFamily::classical, 6, N);
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t c = 0; c < basis.size(); ++c) EXPECT_EQ(w(r, c), (*inv)[r][c]);
  }
}

TEST(Weingarten, HalfSixIsStochastic) {
  for (int N = 3; N <= 6; ++N) {
    const auto w = weingarten_matrix(PairingFamily::half, 6, N);
    const Rational want(1, N * N * N + 3 * N * N + 2 * N);
    for (std::size_t r = 0; r < w.order(); ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < w.order(); ++c) s += w(r, c);
      EXPECT_EQ(s, want);
    }
  }
}

TEST(Weingarten, PivotIndependence) {
  for (PairingFamily f : all_families)
    for (int N = 3; N <= 4; ++N) {
      const auto g = gram_matrix(f, 6, N);
      auto a = gauss_jordan_inverse(g.entries, PivotRule::first_nonzero);
      auto b = gauss_jordan_inverse(g.entries, PivotRule::last_nonzero);
      ASSERT_TRUE(a && b);
      EXPECT_EQ(*a, *b);
      EXPECT_EQ(*a, weingarten_matrix(f, 6, N).entries);
    }
}

// Where the Gram matrix is singular, recorded exactly.
TEST(Weingarten, SingularCases) {
  try {
    weingarten_matrix(PairingFamily::classical, 4, 1);
    FAIL() << "expected GramSingular";
  } catch (const GramSingular& e) {
    EXPECT_EQ(e.rank(), 1u);
    EXPECT_EQ(e.order(), 3u);
    EXPECT_NE(std::string(e.what()).find("rank 1 of 3"), std::string::npos);
  }
  EXPECT_THROW(weingarten_matrix(PairingFamily::classical, 6, 2), GramSingular);
  EXPECT_THROW(weingarten_matrix(PairingFamily::half, 6, 2), GramSingular);
  for (PairingFamily f : all_families)
    for (int k = 2; k <= 8; k += 2)
      for (int N = 1; N <= 4; ++N) {
        const auto g = gram_integer(f, k, N);
        const std::size_t rank = exact_rank(g);
        std::size_t dim = 0;
        if (k <= 6) {
          // Rank equals the dimension of the span of the fixed vectors.
          const auto basis = enumerate_pairings(k, f);
          RationalEntries m(basis.size(), static_cast<std::size_t>(ipow64(N, k)));
          for (std::size_t r = 0; r < basis.size(); ++r) {
            const auto v = xi_vector(basis[r], N, false);
            for (std::size_t c = 0; c < v.coords.size(); ++c) m(r, c) = v.coords[c];
          }
          dim = exact_rank(m);
          EXPECT_EQ(rank, dim) << family_name(f) << " k=" << k << " N=" << N;
        }
        if (rank < g.rows())
          std::cout << "[gram survey] singular: " << family_name(f) << " k=" << k << " N=" << N << " rank " << rank
                    << " of " << g.rows() << '\n';
      }
}

TEST(Weingarten, ReducedInverseIsGeneralized) {
  for (auto [f, k, N] : {std::tuple{PairingFamily::classical, 6, 2}, {PairingFamily::classical, 8, 3},
                         {PairingFamily::half, 6, 2}, {PairingFamily::classical, 4, 1}}) {
    const auto g = gram_matrix(f, k, N);
    const auto w = reduced_weingarten_matrix(f, k, N);
    EXPECT_EQ(g.entries * w.entries * g.entries, g.entries);
  }
  const auto w = reduced_weingarten_matrix(PairingFamily::classical, 4, 3);
  EXPECT_EQ(w, weingarten_matrix(PairingFamily::classical, 4, 3));
}

namespace {

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("wg_test_" + std::to_string(::getpid()) + "_" +
                                                std::to_string(reinterpret_cast<std::uintptr_t>(this)))) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST(Cache, PutThenGet) {
  TempDir d;
  WeingartenCache c(d.path);
  const auto w = weingarten_matrix(PairingFamily::half, 6, 4);
  c.put(w);
  EXPECT_EQ(*c.get(PairingFamily::half, 6, 4), w);
  WeingartenCache fresh(d.path);
  EXPECT_EQ(*fresh.get(PairingFamily::half, 6, 4), w);
  EXPECT_EQ(fresh.disk_hits(), 1u);
  EXPECT_EQ(fresh.computed(), 0u);
}

TEST(Cache, MissComputesAndPersists) {
  TempDir d;
  WeingartenCache c(d.path);
  const auto w = c.get(PairingFamily::classical, 4, 3);
  EXPECT_EQ(c.computed(), 1u);
  EXPECT_TRUE(fs::exists(d.path / "classical" / "k4_N3.json"));
  c.get(PairingFamily::classical, 4, 3);
  EXPECT_EQ(c.memory_hits(), 1u);
  const auto j = nlohmann::json::parse(std::ifstream(c.path_for(PairingFamily::classical, 4, 3)));
  EXPECT_EQ(j.at("entries")[0][0].at("num"), "2");
  EXPECT_EQ(j.at("entries")[0][0].at("den"), "15");
  EXPECT_EQ(j.at("basis")[0], "0,4:[1,2|3,4]");
  EXPECT_EQ(matrix_from_json(j), *w);
}

TEST(Cache, CorruptFileIsRecomputed) {
  TempDir d;
  WeingartenCache seed(d.path);
  const auto w = *seed.get(PairingFamily::free, 6, 3);
  const auto path = seed.path_for(PairingFamily::free, 6, 3);
  for (const std::string junk : {"{not json", "{\"family\":\"free\",\"k\":6,\"N\":3,\"basis\":[],\"entries\":[]}"}) {
    std::ofstream(path) << junk;
    WeingartenCache c(d.path);
    std::vector<std::string> warnings;
    c.set_warning_sink([&](const std::string& m) { warnings.push_back(m); });
    EXPECT_EQ(*c.get(PairingFamily::free, 6, 3), w);
    EXPECT_EQ(warnings.size(), 1u);
    EXPECT_EQ(c.computed(), 1u);
    WeingartenCache after(d.path);
    EXPECT_TRUE(after.load(PairingFamily::free, 6, 3).has_value());
  }
}

TEST(Cache, ConcurrentReaders) {
  TempDir d;
  {
    WeingartenCache c(d.path);
    c.get(PairingFamily::classical, 8, 5);
  }
  const auto want = weingarten_matrix(PairingFamily::classical, 8, 5);
  std::vector<std::thread> threads;
  std::atomic<int> good{0};
  for (int t = 0; t < 6; ++t)
    threads.emplace_back([&] {
      WeingartenCache c(d.path);
      if (*c.get(PairingFamily::classical, 8, 5) == want && c.computed() == 0) ++good;
    });
  for (auto& t : threads) t.join();
  EXPECT_EQ(good.load(), 6);
}

TEST(Cache, ConcurrentWritersNeverTear) {
  TempDir d;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&] {
      WeingartenCache c(d.path);
      c.set_warning_sink([](const std::string&) { ADD_FAILURE() << "torn read"; });
      for (int rep = 0; rep < 5; ++rep) {
        c.store(weingarten_matrix(PairingFamily::half, 6, 3));
        WeingartenCache r(d.path);
        r.set_warning_sink([](const std::string&) { ADD_FAILURE() << "torn read"; });
        EXPECT_TRUE(r.load(PairingFamily::half, 6, 3).has_value());
      }
    });
  for (auto& t : threads) t.join();
  for (const auto& e : fs::directory_iterator(d.path / "half")) EXPECT_EQ(e.path().extension(), ".json");
}

TEST(Cache, SingularIsRememberedAndRethrown) {
  WeingartenCache c;
  EXPECT_THROW(c.get(PairingFamily::classical, 6, 2), GramSingular);
  EXPECT_THROW(c.get(PairingFamily::classical, 6, 2), GramSingular);
  EXPECT_THROW(c.weights(PairingFamily::classical, 6, 2, SingularPolicy::strict), GramSingular);
  EXPECT_NO_THROW(c.weights(PairingFamily::classical, 6, 2, SingularPolicy::reduced_basis));
}

TEST(Cache, DirectoryPrecedence) {
  ::setenv("WG_CACHE_DIR", "/tmp/from_env", 1);
  EXPECT_EQ(resolve_cache_dir(std::string("/tmp/from_flag")), fs::path("/tmp/from_flag"));
  EXPECT_EQ(resolve_cache_dir(std::nullopt), fs::path("/tmp/from_env"));
  ::unsetenv("WG_CACHE_DIR");
  EXPECT_EQ(resolve_cache_dir(std::nullopt), default_cache_dir());
}
