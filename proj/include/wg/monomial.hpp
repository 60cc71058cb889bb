#pragma once

// Filtered groups of permutations attached to monomial and polygonal spheres.

#include "wg/combinatorics.hpp"
#include "wg/pairings.hpp"
#include "wg/partition.hpp"
#include "wg/permutation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace wg {

inline constexpr int default_saturation_kmax = 7;
inline constexpr int max_saturation_kmax = 9;

enum class Rule { generator, group, concatenation, outer_removal, neighbor_removal };
inline constexpr std::array all_rules = {Rule::generator, Rule::group, Rule::concatenation, Rule::outer_removal,
                                         Rule::neighbor_removal};

inline std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::generator: return "generator";
    case Rule::group: return "group";
    case Rule::concatenation: return "concatenation";
    case Rule::outer_removal: return "outer_removal";
    case Rule::neighbor_removal: return "neighbor_removal";
  }
  return "?";
}

/// Levels 0..k_max; level k is a subgroup of S_k, sorted.
struct FilteredGroupTruncation {
  int k_max = 0;
  std::vector<std::vector<Permutation>> levels;
  std::map<Rule, std::size_t> rule_counts;  // elements each rule contributed
  int idle_sweeps = 0;

  std::size_t order(int k) const { return levels.at(k).size(); }
  bool contains(const Permutation& p) const {
    if (p.size() > k_max) return false;
    const auto& lv = levels[p.size()];
    return std::binary_search(lv.begin(), lv.end(), p);
  }
};

namespace detail {

/// Every reduction of σ by one rule of string removal.
inline void removal_candidates(const Permutation& s, const std::function<void(Permutation, Rule)>& emit) {
  const int k = s.size();
  if (k == 0) return;
  if (s(0) == 0) emit(remove_point(s, 0), Rule::outer_removal);
  if (k > 1 && s(k - 1) == k - 1) emit(remove_point(s, k - 1), Rule::outer_removal);
  for (int t = 0; t + 1 < k; ++t) {
    const int a = s(t);
    const int b = s(t + 1);
    if (b == a + 1 || b == a - 1) emit(remove_point(remove_point(s, t + 1), t), Rule::neighbor_removal);
  }
}

inline void concatenation_candidates(const Permutation& g, int k_max,
                                     const std::function<void(Permutation, Rule)>& emit) {
  const int k = g.size();
  for (int a = 0; a + k <= k_max; ++a)
    for (int b = 0; a + k + b <= k_max; ++b) {
      if (a + b == 0) continue;
      emit(concatenate(concatenate(Permutation::identity(a), g), Permutation::identity(b)), Rule::concatenation);
    }
}

}  // namespace detail

/// Least truncated filtered group containing the generators and stable under
/// group operations, concatenation (which contains σ ↦ σ ⊕ id), removal of an
/// outer fixed string (which contains restriction to a fixed last point) and
/// removal of two neighboring strings landing on neighbors in either order.
inline FilteredGroupTruncation saturate(const std::vector<Permutation>& generators,
                                        int k_max = default_saturation_kmax) {
  if (k_max < 0 || k_max > max_saturation_kmax)
    throw std::invalid_argument("k_max outside [0," + std::to_string(max_saturation_kmax) + "]");
  FilteredGroupTruncation out;
  out.k_max = k_max;
  for (Rule r : all_rules) out.rule_counts[r] = 0;

  std::vector<std::unordered_set<std::uint64_t>> member(k_max + 1);
  std::vector<std::vector<Permutation>> elements(k_max + 1), gens(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    member[k].insert(Permutation::identity(k).code());
    elements[k].push_back(Permutation::identity(k));
  }

  std::deque<std::pair<Permutation, Rule>> work;
  auto emit = [&](Permutation p, Rule r) {
    if (p.size() <= k_max) work.emplace_back(std::move(p), r);
  };
  for (const auto& g : generators) {
    if (g.size() > k_max) throw std::invalid_argument("generator " + g.to_string() + " exceeds k_max");
    emit(g, Rule::generator);
  }

  while (!work.empty()) {
    auto [c, rule] = work.front();
    work.pop_front();
    const int k = c.size();
    if (member[k].count(c.code())) continue;
    ++out.rule_counts[rule];
    gens[k].push_back(c);
    detail::concatenation_candidates(c, k_max, emit);

    // Grow the group at level k: right-multiply old elements by c, new ones by every generator.
    std::vector<Permutation> fresh{c};
    member[k].insert(c.code());
    elements[k].push_back(c);
    const std::size_t old_count = elements[k].size() - 1;
    for (std::size_t i = 0; i < old_count; ++i) {
      Permutation y = compose(elements[k][i], c);
      if (member[k].insert(y.code()).second) {
        elements[k].push_back(y);
        fresh.push_back(y);
        ++out.rule_counts[Rule::group];
      }
    }
    for (std::size_t i = 0; i < fresh.size(); ++i)
      for (const auto& g : gens[k]) {
        Permutation y = compose(fresh[i], g);
        if (member[k].insert(y.code()).second) {
          elements[k].push_back(y);
          fresh.push_back(y);
          ++out.rule_counts[Rule::group];
        }
      }
    for (const auto& e : fresh) detail::removal_candidates(e, emit);
  }

  // Idle sweep: every rule applied to every element must land inside.
  auto require = [&](const Permutation& p, Rule) {
    if (p.size() <= k_max && !member[p.size()].count(p.code()))
      throw std::logic_error("saturation left " + p.to_string() + " outside the closure");
  };
  for (int k = 0; k <= k_max; ++k)
    for (const auto& e : elements[k]) {
      detail::removal_candidates(e, require);
      require(e.inverse(), Rule::group);
      for (const auto& g : gens[k]) require(compose(e, g), Rule::group);
    }
  for (int k = 0; k <= k_max; ++k)
    for (const auto& g : gens[k]) detail::concatenation_candidates(g, k_max, require);
  out.idle_sweeps = 1;

  out.levels.resize(k_max + 1);
  for (int k = 0; k <= k_max; ++k) {
    out.levels[k] = std::move(elements[k]);
    std::sort(out.levels[k].begin(), out.levels[k].end());
  }
  return out;
}

/// |S_k*|: ⌊k/2⌋! ⌈k/2⌉!.
inline Integer star_group_order(int k) {
  if (k < 0) throw std::invalid_argument("negative k");
  return factorial(k / 2) * factorial(k - k / 2);
}

enum class GroupLabel { trivial, star, full, unknown };

inline std::string_view label_name(GroupLabel g) {
  switch (g) {
    case GroupLabel::trivial: return "trivial";
    case GroupLabel::star: return "star";
    case GroupLabel::full: return "full";
    case GroupLabel::unknown: return "unknown";
  }
  return "?";
}

/// Which of {1}, S_k*, S_k a subgroup of S_k equals; several when they coincide.
inline std::vector<GroupLabel> level_labels(const std::vector<Permutation>& level, int k) {
  std::vector<GroupLabel> out;
  const std::size_t n = level.size();
  if (n == 1) out.push_back(GroupLabel::trivial);
  if (Integer(n) == star_group_order(k) && std::all_of(level.begin(), level.end(), [](const Permutation& p) {
        return is_balanced(p);
      }))
    out.push_back(GroupLabel::star);
  if (Integer(n) == factorial(k)) out.push_back(GroupLabel::full);
  return out;
}

/// Uniform label over 2 <= k <= k_max, preferring the smallest group when the
/// truncation cannot tell them apart (only possible for k_max < 3).
inline GroupLabel classify(const FilteredGroupTruncation& t) {
  for (GroupLabel candidate : {GroupLabel::trivial, GroupLabel::star, GroupLabel::full}) {
    bool all = t.k_max >= 2;
    for (int k = 2; k <= t.k_max && all; ++k) {
      const auto labels = level_labels(t.levels[k], k);
      all = std::find(labels.begin(), labels.end(), candidate) != labels.end();
    }
    if (all) return candidate;
  }
  return GroupLabel::unknown;
}

/// All permutations of k points in lexicographic order.
inline std::vector<Permutation> all_permutations(int k) {
  std::vector<int> images(k);
  for (int t = 0; t < k; ++t) images[t] = t;
  std::vector<Permutation> out;
  do out.emplace_back(images);
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

/// Two-row kernel of (i_1..i_k ; i_σ(1)..i_σ(k)) and its signature.
inline Partition relation_kernel(const Permutation& s, const std::vector<int>& indices) {
  const int k = s.size();
  if (static_cast<int>(indices.size()) != k) throw std::invalid_argument("tuple length differs from permutation size");
  std::vector<int> both(indices);
  for (int t = 0; t < k; ++t) both.push_back(indices[s(t)]);
  return kernel(both, k, k);
}

inline int twisted_relation_sign(const Permutation& s, const std::vector<int>& indices) {
  return signature(relation_kernel(s, indices));
}

enum class SignPredicate { all_coarsenings, pair_coarsenings };

namespace detail {

/// Restricted growth strings: every set partition of n items, optionally with exactly `blocks` parts.
inline void for_each_set_partition(int n, int blocks, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(n, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      if (blocks < 0 || used == blocks) f(a);
      return;
    }
    for (int v = 0; v <= used && v < n; ++v) {
      if (blocks >= 0 && v >= blocks) break;
      a[i] = v;
      rec(i + 1, std::max(used, v + 1));
    }
  };
  if (n == 0) {
    if (blocks <= 0) f(a);
    return;
  }
  rec(0, 0);
}

}  // namespace detail

/// Permutations whose relation diagram has only coarsenings of signature +1
/// (in pair mode: only the coarsenings with exactly two blocks are examined).
inline std::vector<Permutation> group_from_sign_predicate(SignPredicate mode, int k) {
  std::vector<Permutation> out;
  for (const auto& s : all_permutations(k)) {
    // Generic kernel: distinct values, upper σ(t) joined to lower t.
    std::vector<int> distinct(k);
    for (int t = 0; t < k; ++t) distinct[t] = t;
    const Partition d = relation_kernel(s, distinct);
    bool ok = true;
    detail::for_each_set_partition(k, mode == SignPredicate::pair_coarsenings ? 2 : -1,
                                   [&](const std::vector<int>& group) {
                                     if (!ok) return;
                                     std::vector<int> labels(d.size());
                                     for (int i = 0; i < d.size(); ++i) labels[i] = group[d.block_of(i)];
                                     if (signature(Partition(k, k, labels)) != 1) ok = false;
                                   });
    if (ok) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The nine polygonal spheres

struct SphereEntry {
  std::string name;
  int row = 0;  // 0: H = {1}, 1: H = S*, 2: H = S
  int col = 0;  // 0: G = S, 1: G = S*, 2: G = {1}
  std::vector<Permutation> untwisted_relations;  // E
  std::vector<Permutation> twisted_relations;    // F
  GroupLabel expected_g = GroupLabel::unknown;
  GroupLabel expected_h = GroupLabel::unknown;
  GroupLabel g = GroupLabel::unknown;
  GroupLabel h = GroupLabel::unknown;
  bool g_determined = false;
  bool h_determined = false;
  bool matches() const { return g_determined && h_determined && g == expected_g && h == expected_h; }
};

struct NineSphereTable {
  int k_max = 0;
  std::vector<SphereEntry> entries;  // row-major over the 3x3 grid
  bool all_match() const {
    return std::all_of(entries.begin(), entries.end(), [](const SphereEntry& e) { return e.matches(); });
  }
};

/// Each sphere is an intersection S_{E,F}; the five main ones have E or F
/// generated by the basic or the half-liberated crossing, and intersections
/// take unions (E ∪ E', F ∪ F'). Lower bounds for (G, H) are the saturations
/// of (E, F). Upper bounds come from the sign predicates of the leftmost
/// sphere of each row (for H) and the bottom sphere of each column (for G),
/// carried along the inclusions: a larger sphere satisfies fewer relations.
inline NineSphereTable nine_sphere_table(int k_max = 5) {
  if (k_max < 2 || k_max > max_saturation_kmax) throw std::invalid_argument("k_max outside [2,9]");
  const Permutation cross = Permutation::reversal(2);
  const Permutation half = Permutation::reversal(3);
  const std::vector<Permutation> none;

  // Row of the untwisted side: E for columns 0..2; column of the twisted side: F for rows 0..2.
  const std::array<std::vector<Permutation>, 3> e_of_col = {std::vector{cross}, std::vector{half}, none};
  const std::array<std::vector<Permutation>, 3> f_of_row = {none, std::vector{half}, std::vector{cross}};
  const std::array<std::array<const char*, 3>, 3> names = {{{"real", "half", "free"},
                                                            {"real_1", "half_1", "twisted_half"},
                                                            {"real_0", "twisted_real_1", "twisted_real"}}};
  const std::array<GroupLabel, 3> col_g = {GroupLabel::full, GroupLabel::star, GroupLabel::trivial};
  const std::array<GroupLabel, 3> row_h = {GroupLabel::trivial, GroupLabel::star, GroupLabel::full};

  // Upper bounds per level: the predicate groups, S_k for the doubly vanishing corner.
  auto predicate_levels = [&](int which) {
    std::vector<std::vector<Permutation>> levels(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
      if (which == 0) levels[k] = all_permutations(k);
      else if (which == 1) levels[k] = group_from_sign_predicate(SignPredicate::pair_coarsenings, k);
      else levels[k] = group_from_sign_predicate(SignPredicate::all_coarsenings, k);
      std::sort(levels[k].begin(), levels[k].end());
    }
    return levels;
  };
  // H of the left column (rows 2,1,0 = real_0, real_1, real) and G of the bottom row
  // (columns 0,1,2 = real_0, twisted_real_1, twisted_real) share the same predicates.
  const std::array<std::vector<std::vector<Permutation>>, 3> h_upper_of_row = {predicate_levels(2),
                                                                              predicate_levels(1),
                                                                              predicate_levels(0)};
  const std::array<std::vector<std::vector<Permutation>>, 3> g_upper_of_col = {predicate_levels(0),
                                                                              predicate_levels(1),
                                                                              predicate_levels(2)};

  auto resolve = [&](const FilteredGroupTruncation& lower, const std::vector<std::vector<Permutation>>& upper,
                     GroupLabel& label, bool& determined) {
    determined = true;
    for (int k = 0; k <= k_max; ++k)
      if (lower.levels[k] != upper[k]) determined = false;
    label = determined ? classify(lower) : GroupLabel::unknown;
  };

  NineSphereTable table;
  table.k_max = k_max;
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 3; ++col) {
      SphereEntry e;
      e.name = names[row][col];
      e.row = row;
      e.col = col;
      e.untwisted_relations = e_of_col[col];
      e.twisted_relations = f_of_row[row];
      e.expected_g = col_g[col];
      e.expected_h = row_h[row];
      resolve(saturate(e.untwisted_relations, k_max), g_upper_of_col[col], e.g, e.g_determined);
      resolve(saturate(e.twisted_relations, k_max), h_upper_of_row[row], e.h, e.h_determined);
      table.entries.push_back(std::move(e));
    }
  return table;
}

// ---------------------------------------------------------------------------
// Affine and projective categories of pairings

using ProjectiveTruncation = std::map<Shape, std::set<Partition>>;  // (k,l) -> pairings of shape (2k,2l)

/// E(k,l) = D(2k,2l).
inline ProjectiveTruncation affine_to_projective(const CategoryTruncation& d) {
  ProjectiveTruncation e;
  for (const auto& [shape, set] : d)
    if (shape.first % 2 == 0 && shape.second % 2 == 0) e[{shape.first / 2, shape.second / 2}] = set;
  return e;
}

/// id_1 ⊗ σ.
inline Partition with_left_string(const Partition& p) { return tensor(Partition::identity(1), p); }

/// D(k,l) = E(k/2,l/2) for k,l even and {σ : id_1 ⊗ σ ∈ E((k+1)/2,(l+1)/2)} for k,l odd,
/// for every shape with at most max_points legs. Odd shapes need E one size up.
inline CategoryTruncation projective_to_affine(const ProjectiveTruncation& e, int max_points) {
  CategoryTruncation d;
  for (int n = 0; n <= max_points; n += 2)
    for (int k = 0; k <= n; ++k) {
      const int l = n - k;
      auto& slot = d[{k, l}];
      if (k % 2 == 0) {
        auto it = e.find({k / 2, l / 2});
        if (it == e.end()) throw std::invalid_argument("projective truncation lacks shape needed for D");
        slot = it->second;
      } else {
        auto it = e.find({(k + 1) / 2, (l + 1) / 2});
        if (it == e.end()) throw std::invalid_argument("projective truncation lacks shape needed for D");
        for (const auto& s : enumerate_pairings(k, l, PairingFamily::classical))
          if (it->second.count(with_left_string(s))) slot.insert(s);
      }
    }
  return d;
}

}  // namespace wg
