#pragma once

// Self-check suites run by `wgcalc verify`.

#include "wg/wg.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace wg {

enum class CheckStatus { pass, fail, expected_mismatch };

inline std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::expected_mismatch: return "expected_mismatch";
  }
  return "?";
}

struct Check {
  std::string suite;
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"categorical", "weingarten", "oracles", "laws", "classify"};
  return names;
}

namespace detail {

class Recorder {
 public:
  Recorder(VerifyReport& r, std::string suite) : report_(r), suite_(std::move(suite)) {}

  void check(const std::string& name, bool ok, const std::string& detail = {}) {
    report_.checks.push_back({suite_, name, ok ? CheckStatus::pass : CheckStatus::fail, detail});
  }
  void mismatch(const std::string& name, const std::string& detail) {
    report_.checks.push_back({suite_, name, CheckStatus::expected_mismatch, detail});
  }

 private:
  VerifyReport& report_;
  std::string suite_;
};

inline std::vector<Partition> pairings_up_to(int max_points) {
  std::vector<Partition> out;
  for (int n = 0; n <= max_points; n += 2)
    for (int k = 0; k <= n; ++k) {
      auto v = enumerate_pairings(k, n - k, PairingFamily::classical);
      out.insert(out.end(), v.begin(), v.end());
    }
  return out;
}

inline std::vector<std::vector<int>> tuples(int length, int N) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(length, 1);
  while (true) {
    out.push_back(t);
    int p = length - 1;
    while (p >= 0 && t[p] == N) t[p--] = 1;
    if (p < 0) break;
    ++t[p];
  }
  return out;
}

inline void suite_categorical(VerifyReport& report) {
  Recorder rec(report, "categorical");
  const auto diagrams = pairings_up_to(6);
  for (int N = 2; N <= 4; ++N) {
    std::map<Partition, TensorMatrix> t, tb;
    for (const auto& p : diagrams) {
      t.emplace(p, t_map(p, N));
      tb.emplace(p, t_bar_map(p, N));
    }
    std::size_t bad_tensor = 0, bad_comp = 0, bad_adj = 0, bad_nc = 0, pairs = 0;
    for (const auto& a : diagrams) {
      if (adjoint(t.at(a)) != t.at(involution(a)) || adjoint(tb.at(a)) != tb.at(involution(a))) ++bad_adj;
      if (a.is_noncrossing() && t.at(a) != tb.at(a)) ++bad_nc;
      for (const auto& b : diagrams) {
        if (a.size() + b.size() <= 6) {
          const Partition ab = tensor(a, b);
          if (kronecker(t.at(a), t.at(b)) != t.at(ab) || kronecker(tb.at(a), tb.at(b)) != tb.at(ab)) ++bad_tensor;
        }
        if (a.upper_count() == b.lower_count() && b.upper_count() + a.lower_count() <= 6) {
          ++pairs;
          const auto c = composition(a, b);
          const std::int64_t f = ipow64(N, c.loops);
          const bool ok = multiply(t.at(a), t.at(b)) == scaled(t_map(c.partition, N), f) &&
                          multiply(tb.at(a), tb.at(b)) == scaled(t_bar_map(c.partition, N), f);
          if (!ok) ++bad_comp;
        }
      }
    }
    const std::string n = "N=" + std::to_string(N);
    rec.check("tensor product " + n, bad_tensor == 0, std::to_string(bad_tensor) + " failures");
    rec.check("composition with loop factors " + n, bad_comp == 0,
              std::to_string(pairs) + " pairs, " + std::to_string(bad_comp) + " failures");
    rec.check("involution is adjoint " + n, bad_adj == 0, std::to_string(bad_adj) + " failures");
    rec.check("twisted equals untwisted on noncrossing " + n, bad_nc == 0, std::to_string(bad_nc) + " failures");
  }
  for (int k = 0; k <= 6; k += 2)
    for (int N = 1; N <= 4; ++N) {
      const auto basis = enumerate_pairings(k, PairingFamily::classical);
      std::vector<FixedVector> xi, xb;
      for (const auto& p : basis) {
        xi.push_back(xi_vector(p, N, false));
        xb.push_back(xi_vector(p, N, true));
      }
      bool ok = true;
      for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t c = 0; c < basis.size(); ++c) {
          const std::int64_t want = ipow64(N, join_block_count(basis[r], basis[c]));
          ok = ok && inner_product(xi[r], xi[c]) == want && inner_product(xb[r], xb[c]) == want;
        }
      rec.check("fixed vector Gram k=" + std::to_string(k) + " N=" + std::to_string(N), ok);
    }
  const std::vector<std::pair<std::string, std::vector<Partition>>> gens = {
      {"basic crossing", {basic_crossing()}}, {"half-liberated crossing", {half_liberated_crossing()}}, {"none", {}}};
  const PairingFamily fam[] = {PairingFamily::classical, PairingFamily::half, PairingFamily::free};
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto closure = category_closure(gens[g].second, 8);
    rec.check("closure of " + gens[g].first + " is " + std::string(family_name(fam[g])),
              closure == family_truncation(fam[g], 8));
    const auto sub = category_closure(gens[g].second, 6);
    const auto round = projective_to_affine(affine_to_projective(closure), 6);
    rec.check("projective round trip for " + std::string(family_name(fam[g])), round == sub);
  }
}

inline void suite_weingarten(VerifyReport& report) {
  Recorder rec(report, "weingarten");
  for (int N = 2; N <= 8; ++N) {
    const auto w = weingarten_matrix(PairingFamily::classical, 4, N);
    const Rational s(1, Integer(N) * (N - 1) * (N + 2));
    bool ok = true;
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) ok = ok && w(r, c) == s * (r == c ? N + 1 : -1);
    rec.check("classical k=4 closed form N=" + std::to_string(N), ok);
  }
  for (PairingFamily f : all_families)
    for (int k = 2; k <= 6; k += 2)
      for (int N = 2; N <= 5; ++N) {
        const IntegerMatrix g = gram_integer(f, k, N);
        const std::string tag = std::string(family_name(f)) + " k=" + std::to_string(k) + " N=" + std::to_string(N);
        auto inv = bareiss_inverse(g);
        if (!inv) {
          rec.check("singular Gram reports rank " + tag, exact_rank(g) < g.rows());
          continue;
        }
        const RationalEntries gr = to_rational(g);
        const auto id = RationalEntries::identity(g.rows());
        rec.check("G W = W G = I " + tag, gr * *inv == id && *inv * gr == id);
        auto a = gauss_jordan_inverse(gr, PivotRule::first_nonzero);
        auto b = gauss_jordan_inverse(gr, PivotRule::last_nonzero);
        rec.check("pivot independence " + tag, a && b && *a == *inv && *b == *inv);
      }
  for (int N = 3; N <= 5; ++N) {
    const auto w = weingarten_matrix(PairingFamily::half, 6, N);
    const Rational want(1, Integer(N) * N * N + 3 * N * N + 2 * N);
    bool ok = true;
    for (std::size_t r = 0; r < w.order(); ++r) {
      Rational s = 0;
      for (std::size_t c = 0; c < w.order(); ++c) s += w(r, c);
      ok = ok && s == want;
    }
    rec.check("half k=6 row sums N=" + std::to_string(N), ok);
  }
  bool raised = false;
  try {
    weingarten_matrix(PairingFamily::classical, 4, 1);
  } catch (const GramSingular& e) {
    raised = e.rank() == 1 && e.order() == 3;
  }
  rec.check("GramSingular at classical k=4 N=1", raised);
}

inline void suite_oracles(VerifyReport& report) {
  Recorder rec(report, "oracles");
  for (int N = 2; N <= 6; ++N) {
    std::size_t bad = 0, total = 0;
    const int coords = std::min(N, 3);
    for (int deg = 0; deg <= 8; ++deg)
      for (const auto& t : tuples(deg, coords)) {
        if (!std::is_sorted(t.begin(), t.end())) continue;
        ++total;
        if (sphere_moment(PairingFamily::classical, false, t, N) != classical_sphere_integral(profile_of(t, N), N)) ++bad;
      }
    rec.check("classical closed form N=" + std::to_string(N), bad == 0,
              std::to_string(total) + " monomials, " + std::to_string(bad) + " failures");
  }
  for (int N = 2; N <= 4; ++N) {
    std::size_t bad = 0, total = 0;
    for (int deg = 0; deg <= 6; deg += 2)
      for (const auto& t : tuples(deg, N)) {
        std::vector<int> odd(N, 0), even(N, 0);
        for (std::size_t p = 0; p < t.size(); ++p) ++(p % 2 ? even : odd)[t[p] - 1];
        if (odd != even) continue;
        ++total;
        if (sphere_moment(PairingFamily::half, false, t, N) != half_liberated_integral_sum(odd, N)) ++bad;
      }
    rec.check("half-liberated binomial sum N=" + std::to_string(N), bad == 0,
              std::to_string(total) + " balanced monomials, " + std::to_string(bad) + " failures");
  }
  for (int N = 1; N <= 3; ++N)
    for (const ExponentProfile& prof : {ExponentProfile{1}, ExponentProfile{2}, ExponentProfile{3}}) {
      const Rational sum = half_liberated_integral_sum(prof, N);
      const Rational stated = half_liberated_integral_stated(prof, N);
      std::string name = "half-liberated product closed form, profile (" + std::to_string(prof[0]) + ") N=" +
                         std::to_string(N);
      std::string detail = "product " + to_string(stated) + " vs sum " + to_string(sum);
      if (sum == stated) rec.check(name, true, detail);
      else rec.mismatch(name, detail);
    }
  for (int N = 3; N <= 6; ++N)
    for (int l = 1; l <= 4; ++l) {
      const Rational exact = sphere_moment(PairingFamily::free, false, std::vector<int>(2 * l, 1), N);
      with_digits scope(50);
      const Real diff = abs(free_moment(l, N) - Real(exact));
      std::ostringstream d;
      d << "|diff| = " << diff.str(3);
      rec.check("free q-sum l=" + std::to_string(l) + " N=" + std::to_string(N), diff < Real("1e-9"), d.str());
      const Real stated_diff = abs(free_moment_stated(l, N) - Real(exact));
      if (stated_diff > Real("1e-9"))
        rec.mismatch("free q-sum with (N+1) prefactor l=" + std::to_string(l) + " N=" + std::to_string(N),
                     "|diff| = " + stated_diff.str(3));
    }
  bool quad = true;
  for (int p = 0; p <= 6; ++p)
    for (int q = 0; q <= 6; ++q) quad = quad && std::abs(quarter_circle_numeric(p, q) - quarter_circle_closed_form(p, q)) < 1e-9;
  rec.check("quarter circle base case", quad);
  bool circle = true;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + b <= 8; ++b)
      circle = circle && std::abs(circle_average_numeric(a, b) -
                                  classical_sphere_integral({a, b}, 2).convert_to<double>()) < 1e-9;
  rec.check("circle quadrature N=2", circle);
}

inline void suite_laws(VerifyReport& report) {
  Recorder rec(report, "laws");
  for (PairingFamily f : all_families)
    for (int l = 1; l <= 3; ++l) {
      const Rational ref(asymptotic_reference(f, l));
      Rational prev_gap = -1;
      bool monotone = true;
      for (int N : {8, 16, 32, 64}) {
        const Rational gap = abs(law_moments(f, false, N, l).back() - ref);
        if (prev_gap >= 0 && gap > prev_gap) monotone = false;
        prev_gap = gap;
      }
      const std::string name = std::string(family_name(f)) + " m_" + std::to_string(2 * l);
      rec.check(name + " approaches " + to_string(ref) + " monotonically", monotone,
                "gap at N=64: " + to_string(prev_gap));
      if (prev_gap < 1) {
        rec.check(name + " gap below 1 at N=64", true, to_string(prev_gap));
      } else {
        // The gap decays like c/N; report where it actually drops below 1.
        int n = 64;
        while (n < 1024 && abs(law_moments(f, false, n, l).back() - ref) >= 1) ++n;
        rec.mismatch(name + " gap below 1 at N=64",
                     "gap " + to_string(prev_gap) + "; first below 1 at N=" + std::to_string(n));
      }
    }
  for (PairingFamily f : all_families) {
    bool ok = true;
    for (int N = 1; N <= 6; ++N)
      for (int k = 1; k <= 8; ++k) {
        const std::vector<int> t(k, 1);
        ok = ok && sphere_moment(f, true, t, N) == sphere_moment(f, false, t, N);
      }
    rec.check(std::string(family_name(f)) + " twisted single-coordinate moments", ok);
  }
  for (PairingFamily f : all_families)
    for (bool tw : {false, true}) {
      std::size_t bad = 0;
      for (int N = 1; N <= 4; ++N)
        for (int deg = 1; deg <= 6; ++deg)
          for (const auto& t : tuples(deg, N)) {
            std::vector<int> count(N, 0);
            for (int v : t) ++count[v - 1];
            if (std::all_of(count.begin(), count.end(), [](int c) { return c % 2 == 0; })) continue;
            if (sphere_moment(f, tw, t, N) != 0) ++bad;
          }
      rec.check(std::string(tw ? "twisted " : "") + std::string(family_name(f)) + " odd-occurrence vanishing",
                bad == 0, std::to_string(bad) + " failures");
    }
}

inline void suite_classify(VerifyReport& report) {
  Recorder rec(report, "classify");
  for (int k = 2; k <= 7; ++k) {
    const GroupLabel want = k % 2 == 0 ? GroupLabel::full : GroupLabel::star;
    rec.check("reversal of " + std::to_string(k), classify(saturate({Permutation::reversal(k)}, 7)) == want);
  }
  rec.check("no generators", classify(saturate({}, 7)) == GroupLabel::trivial);
  bool orders = true;
  for (int k = 0; k <= 7; ++k) {
    std::size_t n = 0;
    for (const auto& p : all_permutations(k)) n += is_balanced(p);
    orders = orders && Integer(n) == star_group_order(k);
  }
  rec.check("balanced permutation counts", orders);
  // Some generators on 6 points only reduce to a crossing via 7-point elements.
  std::size_t bad = 0, total = 0;
  for (int k = 2; k <= 6; ++k)
    for (const auto& p : all_permutations(k)) {
      if (is_balanced(p)) continue;
      ++total;
      if (classify(saturate({p}, 7)) != GroupLabel::full) ++bad;
    }
  rec.check("every unbalanced permutation generates S", bad == 0,
            std::to_string(total) + " generators, " + std::to_string(bad) + " failures");
  for (int k = 1; k <= 5; ++k) {
    std::vector<Permutation> star;
    for (const auto& p : all_permutations(k))
      if (is_balanced(p)) star.push_back(p);
    rec.check("all-coarsenings predicate k=" + std::to_string(k),
              group_from_sign_predicate(SignPredicate::all_coarsenings, k) == std::vector{Permutation::identity(k)});
    rec.check("pair predicate k=" + std::to_string(k),
              group_from_sign_predicate(SignPredicate::pair_coarsenings, k) == star);
  }
  const auto table = nine_sphere_table(5);
  for (const auto& e : table.entries)
    rec.check("nine-sphere " + e.name, e.matches(),
              "G=" + std::string(label_name(e.g)) + " H=" + std::string(label_name(e.h)));
}

}  // namespace detail

/// Runs one suite or "all"; throws std::invalid_argument on an unknown name.
inline VerifyReport run_verify(const std::string& suite) {
  static const std::map<std::string, std::function<void(VerifyReport&)>> table = {
      {"categorical", detail::suite_categorical}, {"weingarten", detail::suite_weingarten},
      {"oracles", detail::suite_oracles},         {"laws", detail::suite_laws},
      {"classify", detail::suite_classify}};
  VerifyReport report;
  if (suite == "all") {
    for (const auto& name : verify_suites()) table.at(name)(report);
    return report;
  }
  auto it = table.find(suite);
  if (it == table.end()) throw std::invalid_argument("unknown suite: " + suite);
  it->second(report);
  return report;
}

}  // namespace wg
