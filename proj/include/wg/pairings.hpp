#pragma once

#include "wg/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wg {

/// P2 / P2* / NC2: all, balanced and noncrossing pairings.
enum class PairingFamily { classical, half, free };

inline std::string_view family_name(PairingFamily f) {
  switch (f) {
    case PairingFamily::classical: return "classical";
    case PairingFamily::half: return "half";
    case PairingFamily::free: return "free";
  }
  return "?";
}

inline PairingFamily parse_family(std::string_view s) {
  if (s == "classical") return PairingFamily::classical;
  if (s == "half") return PairingFamily::half;
  if (s == "free") return PairingFamily::free;
  throw std::invalid_argument("unknown family: " + std::string(s));
}

inline constexpr PairingFamily all_families[] = {PairingFamily::classical, PairingFamily::half,
                                                 PairingFamily::free};

inline bool belongs_to(const Partition& p, PairingFamily f) {
  if (!p.is_pairing()) return false;
  switch (f) {
    case PairingFamily::classical: return true;
    case PairingFamily::half: return p.is_balanced();
    case PairingFamily::free: return p.is_noncrossing();
  }
  return false;
}

namespace detail {

inline void assign_partners(std::vector<int>& partner, std::vector<std::vector<int>>& out) {
  const auto it = std::find(partner.begin(), partner.end(), -1);
  if (it == partner.end()) {
    out.push_back(partner);
    return;
  }
  const int i = static_cast<int>(it - partner.begin());
  for (int j = i + 1; j < static_cast<int>(partner.size()); ++j) {
    if (partner[j] != -1) continue;
    partner[i] = j;
    partner[j] = i;
    assign_partners(partner, out);
    partner[i] = partner[j] = -1;
  }
}

}  // namespace detail

/// All pairings of `points` points of the given shape, canonical order:
/// lexicographic on the partner array (diagram indices). Empty for odd sizes.
inline std::vector<Partition> enumerate_pairings(int upper, int lower, PairingFamily family) {
  const int n = upper + lower;
  if (n < 0) throw std::invalid_argument("negative size");
  if (n % 2) return {};
  std::vector<std::vector<int>> partners;
  std::vector<int> partner(n, -1);
  detail::assign_partners(partner, partners);
  std::sort(partners.begin(), partners.end());
  std::vector<Partition> out;
  for (const auto& pa : partners) {
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = std::min(i, pa[i]);
    Partition p(upper, lower, std::move(labels));
    if (belongs_to(p, family)) out.push_back(std::move(p));
  }
  return out;
}

/// One-row pairings of k points (shape 0 -> k).
inline std::vector<Partition> enumerate_pairings(int k, PairingFamily family) {
  return enumerate_pairings(0, k, family);
}

/// Noncrossing one-row pairings by the Catalan recursion (point 1 pairs with
/// an even-distance partner; inside and outside are independent).
inline std::vector<Partition> enumerate_noncrossing_direct(int k) {
  if (k % 2) return {};
  std::function<std::vector<std::vector<int>>(int, int)> rec = [&](int lo, int hi) {
    std::vector<std::vector<int>> res;
    if (lo >= hi) {
      res.emplace_back();
      return res;
    }
    for (int j = lo + 1; j < hi; j += 2) {
      const auto inner = rec(lo + 1, j);
      const auto outer = rec(j + 1, hi);
      for (const auto& a : inner)
        for (const auto& b : outer) {
          std::vector<int> chords{lo, j};
          chords.insert(chords.end(), a.begin(), a.end());
          chords.insert(chords.end(), b.begin(), b.end());
          res.push_back(std::move(chords));
        }
    }
    return res;
  };
  std::vector<std::vector<int>> partner_arrays;
  for (const auto& chords : rec(0, k)) {
    std::vector<int> partner(k);
    for (std::size_t c = 0; c < chords.size(); c += 2) {
      partner[chords[c]] = chords[c + 1];
      partner[chords[c + 1]] = chords[c];
    }
    partner_arrays.push_back(std::move(partner));
  }
  std::sort(partner_arrays.begin(), partner_arrays.end());
  std::vector<Partition> out;
  for (const auto& pa : partner_arrays) out.push_back(Partition::from_partners(pa));
  return out;
}

// ---------------------------------------------------------------------------
// Categories of pairings

using Shape = std::pair<int, int>;  // (upper, lower)
using CategoryTruncation = std::map<Shape, std::set<Partition>>;

inline Partition semicircle() { return Partition(0, 2, {0, 0}); }

/// Basic crossing in P2(2,2) and half-liberated crossing in P2(3,3).
inline Partition basic_crossing() { return Partition::from_permutation({1, 0}); }
inline Partition half_liberated_crossing() { return Partition::from_permutation({2, 1, 0}); }

/// Smallest family of pairings containing the generators and the semicircle,
/// closed under tensor product, composition, involution and rotation, with
/// every diagram restricted to at most `max_points` legs. Every shape (k,l)
/// with k+l even and at most max_points appears as a key.
inline CategoryTruncation category_closure(const std::vector<Partition>& generators, int max_points) {
  if (max_points < 0 || max_points > 10) throw std::invalid_argument("category_closure: max_points outside [0,10]");
  CategoryTruncation out;
  for (int n = 0; n <= max_points; n += 2)
    for (int k = 0; k <= n; ++k) out[{k, n - k}];

  std::vector<Partition> all;
  auto insert = [&](Partition p) {
    if (p.size() > max_points) return;
    if (!p.is_pairing()) throw std::invalid_argument("category_closure: generators must be pairings");
    if (out[{p.upper_count(), p.lower_count()}].insert(p).second) all.push_back(std::move(p));
  };
  if (max_points >= 2) insert(semicircle());
  insert(Partition());  // the empty diagram is the unit of the tensor product
  for (const auto& g : generators) insert(g);

  for (std::size_t idx = 0; idx < all.size(); ++idx) {
    const Partition x = all[idx];
    insert(involution(x));
    if (x.lower_count() > 0) insert(rotate_up(x));
    if (x.upper_count() > 0) insert(rotate_down(x));
    for (std::size_t j = 0; j <= idx; ++j) {
      const Partition y = all[j];
      if (x.size() + y.size() <= max_points) {
        insert(tensor(x, y));
        insert(tensor(y, x));
      }
      if (x.upper_count() == y.lower_count()) {
        auto c = composition(x, y);
        if (c.partition.size() <= max_points) insert(std::move(c.partition));
      }
      if (y.upper_count() == x.lower_count()) {
        auto c = composition(y, x);
        if (c.partition.size() <= max_points) insert(std::move(c.partition));
      }
    }
  }
  return out;
}

/// Every shape of the truncation populated with the whole family.
inline CategoryTruncation family_truncation(PairingFamily family, int max_points) {
  CategoryTruncation out;
  for (int n = 0; n <= max_points; n += 2)
    for (int k = 0; k <= n; ++k) {
      auto v = enumerate_pairings(k, n - k, family);
      out[{k, n - k}] = std::set<Partition>(v.begin(), v.end());
    }
  return out;
}

}  // namespace wg
