#pragma once

// Two-row partitions: k upper legs, l lower legs, blocks covering all legs.
//
// Legs are addressed by a "diagram index": upper legs 0..k-1 left to right,
// then lower legs k..k+l-1 left to right. Serialized leg numbers are the
// diagram index plus one. Block labels are canonical: numbered by first
// occurrence in diagram order, so structural equality is label equality.
//
// The linearization is the counterclockwise traversal starting at the bottom
// left: lower row left to right, then upper row right to left. Crossings,
// signatures, balancedness and cappings are all read off this order.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wg {

enum class Row { upper, lower };

struct Leg {
  Row row;
  int position;  // 1-based within its row
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

/// Relabel by first occurrence; returns the number of distinct labels.
inline int canonicalize(std::vector<int>& labels) {
  std::unordered_map<int, int> seen;
  int next = 0;
  for (int& v : labels) {
    auto [it, inserted] = seen.try_emplace(v, next);
    if (inserted) ++next;
    v = it->second;
  }
  return next;
}

}  // namespace detail

class Partition {
 public:
  Partition() = default;

  /// Any labeling of the k+l legs in diagram order; equal labels form a block.
  Partition(int upper, int lower, std::vector<int> labels)
      : upper_(upper), lower_(lower), labels_(std::move(labels)) {
    if (upper < 0 || lower < 0) throw std::invalid_argument("negative row length");
    if (static_cast<int>(labels_.size()) != upper + lower)
      throw std::invalid_argument("label count does not match k+l");
    blocks_ = detail::canonicalize(labels_);
  }

  /// Blocks given as lists of 1-based serialized leg numbers.
  static Partition from_blocks(int upper, int lower, const std::vector<std::vector<int>>& blocks) {
    const int n = upper + lower;
    std::vector<int> labels(n, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw std::invalid_argument("empty block");
      for (int leg : blocks[b]) {
        if (leg < 1 || leg > n) throw std::invalid_argument("leg out of range");
        if (labels[leg - 1] != -1) throw std::invalid_argument("leg in two blocks");
        labels[leg - 1] = static_cast<int>(b);
      }
    }
    if (std::find(labels.begin(), labels.end(), -1) != labels.end())
      throw std::invalid_argument("blocks do not cover all legs");
    return Partition(upper, lower, std::move(labels));
  }

  /// One-row pairing on 0 upper / n lower legs from a 0-based partner array.
  static Partition from_partners(const std::vector<int>& partner) {
    const int n = static_cast<int>(partner.size());
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) {
      const int p = partner[i];
      if (p < 0 || p >= n || p == i || partner[p] != i)
        throw std::invalid_argument("partner array is not an involution without fixed points");
      labels[i] = std::min(i, p);
    }
    return Partition(0, n, std::move(labels));
  }

  /// Permutation diagram in Perm(k,k): upper leg t joined to lower leg images[t].
  static Partition from_permutation(const std::vector<int>& images_zero_based) {
    const int k = static_cast<int>(images_zero_based.size());
    std::vector<int> labels(2 * k);
    for (int t = 0; t < k; ++t) {
      labels[t] = t;
      labels[k + images_zero_based[t]] = t;
    }
    return Partition(k, k, std::move(labels));
  }

  static Partition identity(int k) {
    std::vector<int> images(k);
    std::iota(images.begin(), images.end(), 0);
    return from_permutation(images);
  }

  int upper_count() const { return upper_; }
  int lower_count() const { return lower_; }
  int size() const { return upper_ + lower_; }
  int block_count() const { return blocks_; }
  int block_of(int diagram_index) const { return labels_[diagram_index]; }
  const std::vector<int>& labels() const { return labels_; }

  int diagram_index(Leg leg) const {
    const int len = leg.row == Row::upper ? upper_ : lower_;
    if (leg.position < 1 || leg.position > len) throw std::out_of_range("leg position out of range");
    return leg.row == Row::upper ? leg.position - 1 : upper_ + leg.position - 1;
  }

  Leg leg_at(int diagram_index) const {
    if (diagram_index < upper_) return {Row::upper, diagram_index + 1};
    return {Row::lower, diagram_index - upper_ + 1};
  }

  /// Diagram indices in counterclockwise order from the bottom left.
  std::vector<int> linearization() const {
    std::vector<int> order;
    order.reserve(size());
    for (int j = 0; j < lower_; ++j) order.push_back(upper_ + j);
    for (int t = upper_ - 1; t >= 0; --t) order.push_back(t);
    return order;
  }

  /// Position of each diagram index inside the linearization.
  std::vector<int> linear_positions() const {
    std::vector<int> pos(size());
    const auto order = linearization();
    for (int p = 0; p < size(); ++p) pos[order[p]] = p;
    return pos;
  }

  /// Blocks as sorted lists of 1-based leg numbers, ordered by smallest leg.
  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(blocks_);
    for (int i = 0; i < size(); ++i) out[labels_[i]].push_back(i + 1);
    return out;  // first-occurrence labels already give min-leg order
  }

  std::vector<int> block_sizes() const {
    std::vector<int> sz(blocks_, 0);
    for (int v : labels_) ++sz[v];
    return sz;
  }

  bool is_pairing() const {
    const auto sz = block_sizes();
    return std::all_of(sz.begin(), sz.end(), [](int s) { return s == 2; });
  }

  bool is_even() const {
    const auto sz = block_sizes();
    return std::all_of(sz.begin(), sz.end(), [](int s) { return s % 2 == 0; });
  }

  bool is_noncrossing() const { return crossing_pairs() == 0; }

  /// For pairings: partner of each diagram index.
  std::vector<int> partners() const {
    if (!is_pairing()) throw std::invalid_argument("partners() requires a pairing");
    std::vector<int> first(blocks_, -1);
    std::vector<int> partner(size(), -1);
    for (int i = 0; i < size(); ++i) {
      const int b = labels_[i];
      if (first[b] < 0) {
        first[b] = i;
      } else {
        partner[i] = first[b];
        partner[first[b]] = i;
      }
    }
    return partner;
  }

  /// Number of unordered block pairs that interleave along the linearization.
  int crossing_pairs() const {
    const auto order = linearization();
    std::vector<int> seq(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) seq[p] = labels_[order[p]];
    int count = 0;
    for (int x = 0; x < blocks_; ++x) {
      for (int y = x + 1; y < blocks_; ++y) {
        // XYXY occurs as a subsequence iff the merged run count is at least 4.
        int runs = 0;
        int last = -1;
        for (int v : seq) {
          if (v != x && v != y) continue;
          if (v != last) ++runs;
          last = v;
        }
        if (runs >= 4) ++count;
      }
    }
    return count;
  }

  /// Each string joins legs at linearization positions of different parity.
  bool is_balanced() const {
    if (!is_pairing()) return false;
    const auto pos = linear_positions();
    const auto partner = partners();
    for (int i = 0; i < size(); ++i)
      if ((pos[i] - pos[partner[i]]) % 2 == 0) return false;
    return true;
  }

  /// Compact text form `k,l:[b1|b2|...]`, legs 1..k upper then k+1..k+l lower.
  std::string to_string() const {
    std::ostringstream os;
    os << upper_ << ',' << lower_ << ":[";
    const auto bl = blocks();
    for (std::size_t b = 0; b < bl.size(); ++b) {
      if (b) os << '|';
      for (std::size_t i = 0; i < bl[b].size(); ++i) {
        if (i) os << ',';
        os << bl[b][i];
      }
    }
    os << ']';
    return os.str();
  }

  static Partition parse(std::string_view text) {
    auto fail = [&]() -> Partition {
      throw std::invalid_argument("malformed partition: " + std::string(text));
    };
    const auto colon = text.find(':');
    const auto comma = text.find(',');
    if (colon == std::string_view::npos || comma == std::string_view::npos || comma > colon) return fail();
    auto parse_int = [&](std::string_view s) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) fail();
      return v;
    };
    const int k = parse_int(text.substr(0, comma));
    const int l = parse_int(text.substr(comma + 1, colon - comma - 1));
    auto body = text.substr(colon + 1);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') return fail();
    body = body.substr(1, body.size() - 2);
    std::vector<std::vector<int>> blocks;
    if (!body.empty()) {
      std::size_t start = 0;
      while (start <= body.size()) {
        auto bar = body.find('|', start);
        auto piece = body.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
        std::vector<int> block;
        std::size_t s = 0;
        while (s <= piece.size()) {
          auto c = piece.find(',', s);
          block.push_back(parse_int(piece.substr(s, c == std::string_view::npos ? std::string_view::npos : c - s)));
          if (c == std::string_view::npos) break;
          s = c + 1;
        }
        blocks.push_back(std::move(block));
        if (bar == std::string_view::npos) break;
        start = bar + 1;
      }
    }
    return from_blocks(k, l, blocks);
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.upper_ <=> b.upper_; c != 0) return c;
    if (auto c = a.lower_ <=> b.lower_; c != 0) return c;
    return a.labels_ <=> b.labels_;
  }

 private:
  int upper_ = 0;
  int lower_ = 0;
  std::vector<int> labels_;
  int blocks_ = 0;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept {
    std::size_t h = static_cast<std::size_t>(p.upper_count()) * 1315423911u + p.lower_count();
    for (int v : p.labels()) h = h * 1099511628211ull + static_cast<std::size_t>(v) + 0x9e37;
    return h;
  }
};

// ---------------------------------------------------------------------------
// Kernels, join, order, Kronecker symbols

/// Equal-value classes of a tuple read in diagram order (upper, then lower).
inline Partition kernel(const std::vector<int>& indices, int upper, int lower) {
  if (static_cast<int>(indices.size()) != upper + lower)
    throw std::invalid_argument("kernel: tuple length does not match k+l");
  return Partition(upper, lower, indices);
}

inline Partition kernel(const std::vector<int>& indices) {
  return kernel(indices, 0, static_cast<int>(indices.size()));
}

inline void require_same_shape(const Partition& a, const Partition& b, const char* what) {
  if (a.upper_count() != b.upper_count() || a.lower_count() != b.lower_count())
    throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

/// Finest common coarsening.
inline Partition join(const Partition& a, const Partition& b) {
  require_same_shape(a, b, "join");
  const int n = a.size();
  detail::UnionFind uf(n);
  std::vector<int> first_a(a.block_count(), -1), first_b(b.block_count(), -1);
  for (int i = 0; i < n; ++i) {
    int& fa = first_a[a.block_of(i)];
    if (fa < 0) fa = i; else uf.unite(fa, i);
    int& fb = first_b[b.block_of(i)];
    if (fb < 0) fb = i; else uf.unite(fb, i);
  }
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = uf.find(i);
  return Partition(a.upper_count(), a.lower_count(), std::move(labels));
}

inline int join_block_count(const Partition& a, const Partition& b) { return join(a, b).block_count(); }

/// True iff every block of `finer` lies inside a block of `coarser`.
inline bool coarsens(const Partition& coarser, const Partition& finer) {
  require_same_shape(coarser, finer, "coarsens");
  std::vector<int> image(finer.block_count(), -1);
  for (int i = 0; i < finer.size(); ++i) {
    int& m = image[finer.block_of(i)];
    const int c = coarser.block_of(i);
    if (m < 0) m = c;
    else if (m != c) return false;
  }
  return true;
}

/// 1 iff each block of p carries a single index value.
inline int delta(const Partition& p, const std::vector<int>& indices) {
  if (static_cast<int>(indices.size()) != p.size()) throw std::invalid_argument("delta: tuple length mismatch");
  std::vector<int> value(p.block_count(), 0);
  std::vector<char> set(p.block_count(), 0);
  for (int i = 0; i < p.size(); ++i) {
    const int b = p.block_of(i);
    if (!set[b]) {
      set[b] = 1;
      value[b] = indices[i];
    } else if (value[b] != indices[i]) {
      return 0;
    }
  }
  return 1;
}

/// Sign of an even partition: parity of the inversions of the block-rank word
/// along the linearization, ranks assigned by first occurrence.
inline int signature(const Partition& p) {
  if (!p.is_even()) throw std::invalid_argument("signature: partition has an odd block");
  const auto order = p.linearization();
  std::vector<int> rank(p.block_count(), -1);
  std::vector<int> word;
  word.reserve(order.size());
  int next = 0;
  for (int idx : order) {
    int& r = rank[p.block_of(idx)];
    if (r < 0) r = next++;
    word.push_back(r);
  }
  // counts[r] = legs of rank r seen so far; inversions against larger ranks.
  std::vector<int> seen(p.block_count(), 0);
  long inversions = 0;
  for (int r : word) {
    for (int s = r + 1; s < p.block_count(); ++s) inversions += seen[s];
    ++seen[r];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

/// Signed Kronecker symbol: signature of ker(indices) when it coarsens p.
inline int delta_bar(const Partition& p, const std::vector<int>& indices) {
  if (!delta(p, indices)) return 0;
  return signature(kernel(indices, p.upper_count(), p.lower_count()));
}

/// Number of interleaved string pairs of a pairing.
inline int crossing_count(const Partition& p) {
  if (!p.is_pairing()) throw std::invalid_argument("crossing_count requires a pairing");
  return p.crossing_pairs();
}

// ---------------------------------------------------------------------------
// Categorical operations

/// Horizontal concatenation [a b].
inline Partition tensor(const Partition& a, const Partition& b) {
  const int off = a.block_count();
  std::vector<int> labels;
  labels.reserve(a.size() + b.size());
  for (int i = 0; i < a.upper_count(); ++i) labels.push_back(a.block_of(i));
  for (int i = 0; i < b.upper_count(); ++i) labels.push_back(off + b.block_of(i));
  for (int i = 0; i < a.lower_count(); ++i) labels.push_back(a.block_of(a.upper_count() + i));
  for (int i = 0; i < b.lower_count(); ++i) labels.push_back(off + b.block_of(b.upper_count() + i));
  return Partition(a.upper_count() + b.upper_count(), a.lower_count() + b.lower_count(), std::move(labels));
}

struct Composite {
  Partition partition;
  int loops = 0;
};

/// Stack `top` (m -> k) above `bottom` (k -> l); result m -> l plus the
/// number of closed components living only in the middle row.
inline Composite composition(const Partition& bottom, const Partition& top) {
  const int m = top.upper_count();
  const int k = top.lower_count();
  const int l = bottom.lower_count();
  if (bottom.upper_count() != k) throw std::invalid_argument("composition: middle rows differ in length");
  // Nodes: top upper [0,m), middle [m,m+k), bottom lower [m+k, m+k+l).
  const int n = m + k + l;
  detail::UnionFind uf(n);
  auto node_top = [&](int i) { return i; };  // top legs map 1:1 onto [0, m+k)
  auto node_bottom = [&](int i) { return i < k ? m + i : m + k + (i - k); };
  std::vector<int> first(top.block_count(), -1);
  for (int i = 0; i < top.size(); ++i) {
    int& f = first[top.block_of(i)];
    if (f < 0) f = node_top(i); else uf.unite(f, node_top(i));
  }
  first.assign(bottom.block_count(), -1);
  for (int i = 0; i < bottom.size(); ++i) {
    int& f = first[bottom.block_of(i)];
    if (f < 0) f = node_bottom(i); else uf.unite(f, node_bottom(i));
  }
  std::vector<char> outer(n, 0);
  std::vector<int> labels;
  labels.reserve(m + l);
  for (int i = 0; i < m; ++i) { labels.push_back(uf.find(i)); outer[uf.find(i)] = 1; }
  for (int i = 0; i < l; ++i) { labels.push_back(uf.find(m + k + i)); outer[uf.find(m + k + i)] = 1; }
  // Roots are smallest members, so a middle-only component is rooted in the middle row.
  int loops = 0;
  for (int i = m; i < m + k; ++i) {
    const int r = uf.find(i);
    if (r == i && !outer[r]) ++loops;
  }
  return {Partition(m, l, std::move(labels)), loops};
}

/// Upside-down turn: k -> l becomes l -> k.
inline Partition involution(const Partition& p) {
  std::vector<int> labels;
  labels.reserve(p.size());
  for (int i = 0; i < p.lower_count(); ++i) labels.push_back(p.block_of(p.upper_count() + i));
  for (int i = 0; i < p.upper_count(); ++i) labels.push_back(p.block_of(i));
  return Partition(p.lower_count(), p.upper_count(), std::move(labels));
}

/// Move the leftmost lower leg to the leftmost upper position.
inline Partition rotate_up(const Partition& p) {
  if (p.lower_count() == 0) throw std::invalid_argument("rotate_up: no lower legs");
  std::vector<int> labels;
  labels.reserve(p.size());
  labels.push_back(p.block_of(p.upper_count()));
  for (int i = 0; i < p.upper_count(); ++i) labels.push_back(p.block_of(i));
  for (int i = 1; i < p.lower_count(); ++i) labels.push_back(p.block_of(p.upper_count() + i));
  return Partition(p.upper_count() + 1, p.lower_count() - 1, std::move(labels));
}

/// Move the leftmost upper leg to the leftmost lower position (inverse of rotate_up).
inline Partition rotate_down(const Partition& p) {
  if (p.upper_count() == 0) throw std::invalid_argument("rotate_down: no upper legs");
  std::vector<int> labels;
  labels.reserve(p.size());
  for (int i = 1; i < p.upper_count(); ++i) labels.push_back(p.block_of(i));
  labels.push_back(p.block_of(0));
  for (int i = 0; i < p.lower_count(); ++i) labels.push_back(p.block_of(p.upper_count() + i));
  return Partition(p.upper_count() - 1, p.lower_count() + 1, std::move(labels));
}

/// One step of rotation, moving a leg between the rows while preserving the
/// cyclic order: up when a lower leg exists, otherwise down.
inline Partition rotate(const Partition& p) {
  return p.lower_count() > 0 ? rotate_up(p) : rotate_down(p);
}

/// Join legs i and i+1 (1-based, cyclic, counterclockwise from bottom left)
/// with a semicircle and contract them away.
inline Partition cap(const Partition& p, int i) {
  const int n = p.size();
  if (n < 2) throw std::invalid_argument("cap: fewer than two legs");
  if (i < 1 || i > n) throw std::out_of_range("cap: leg index out of range");
  const auto order = p.linearization();
  const int a = order[i - 1];
  const int b = order[i % n];
  const int ba = p.block_of(a);
  const int bb = p.block_of(b);
  std::vector<int> labels;
  int upper = 0;
  int lower = 0;
  for (int x = 0; x < n; ++x) {
    if (x == a || x == b) continue;
    int lab = p.block_of(x);
    if (lab == bb) lab = ba;
    labels.push_back(lab);
    if (x < p.upper_count()) ++upper; else ++lower;
  }
  return Partition(upper, lower, std::move(labels));
}

}  // namespace wg
