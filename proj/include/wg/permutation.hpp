#pragma once

// Permutations of at most 16 points packed into a 64-bit code, 4 bits per image.

#include "wg/partition.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wg {

class Permutation {
 public:
  static constexpr int max_points = 16;

  Permutation() = default;

  /// 0-based images: t -> images[t].
  explicit Permutation(const std::vector<int>& images) : k_(static_cast<int>(images.size())) {
    if (k_ > max_points) throw std::invalid_argument("permutation larger than 16 points");
    std::uint32_t seen = 0;
    for (int t = 0; t < k_; ++t) {
      const int v = images[t];
      if (v < 0 || v >= k_ || (seen >> v) & 1u) throw std::invalid_argument("not a bijection");
      seen |= 1u << v;
      code_ |= static_cast<std::uint64_t>(v) << (4 * t);
    }
  }

  static Permutation from_one_based(const std::vector<int>& images) {
    std::vector<int> z(images.size());
    for (std::size_t t = 0; t < images.size(); ++t) z[t] = images[t] - 1;
    return Permutation(z);
  }

  static Permutation identity(int k) {
    Permutation p;
    p.k_ = k;
    for (int t = 0; t < k; ++t) p.code_ |= static_cast<std::uint64_t>(t) << (4 * t);
    return p;
  }

  static Permutation reversal(int k) {
    std::vector<int> images(k);
    for (int t = 0; t < k; ++t) images[t] = k - 1 - t;
    return Permutation(images);
  }

  int size() const { return k_; }
  std::uint64_t code() const { return code_; }
  int operator()(int t) const { return static_cast<int>((code_ >> (4 * t)) & 15u); }

  std::vector<int> images() const {
    std::vector<int> out(k_);
    for (int t = 0; t < k_; ++t) out[t] = (*this)(t);
    return out;
  }

  bool is_identity() const { return *this == identity(k_); }

  Permutation inverse() const {
    Permutation p;
    p.k_ = k_;
    for (int t = 0; t < k_; ++t) p.code_ |= static_cast<std::uint64_t>(t) << (4 * (*this)(t));
    return p;
  }

  /// Parity by cycle decomposition.
  int sign() const {
    std::uint32_t seen = 0;
    int s = 1;
    for (int t = 0; t < k_; ++t) {
      if ((seen >> t) & 1u) continue;
      int len = 0;
      for (int x = t; !((seen >> x) & 1u); x = (*this)(x)) {
        seen |= 1u << x;
        ++len;
      }
      if (len % 2 == 0) s = -s;
    }
    return s;
  }

  /// Diagram in Perm(k,k): upper leg t joined to lower leg σ(t).
  Partition diagram() const { return Partition::from_permutation(images()); }

  /// One-line 1-based notation, e.g. "(3,2,1)".
  std::string to_string() const {
    std::string s = "(";
    for (int t = 0; t < k_; ++t) {
      if (t) s += ',';
      s += std::to_string((*this)(t) + 1);
    }
    return s + ")";
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    if (a.k_ != b.k_) return a.k_ <=> b.k_;
    return a.images() <=> b.images();
  }

 private:
  int k_ = 0;
  std::uint64_t code_ = 0;
};

/// (a∘b)(t) = a(b(t)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("compose: sizes differ");
  std::vector<int> images(a.size());
  for (int t = 0; t < a.size(); ++t) images[t] = a(b(t));
  return Permutation(images);
}

/// a ⊕ b: b acts on the points after those of a.
inline Permutation concatenate(const Permutation& a, const Permutation& b) {
  std::vector<int> images = a.images();
  for (int t = 0; t < b.size(); ++t) images.push_back(a.size() + b(t));
  return Permutation(images);
}

/// Drop points `t` (domain) and `s` = image, renumbering the rest.
inline Permutation remove_point(const Permutation& p, int t) {
  const int s = p(t);
  std::vector<int> images;
  for (int x = 0; x < p.size(); ++x) {
    if (x == t) continue;
    const int v = p(x);
    images.push_back(v > s ? v - 1 : v);
  }
  return Permutation(images);
}

/// σ(i) ≡ i (mod 2) for every point.
inline bool is_balanced(const Permutation& p) {
  for (int t = 0; t < p.size(); ++t)
    if ((p(t) - t) % 2) return false;
  return true;
}

/// Parse "(3,2,1)" or "3,2,1" (1-based one-line notation).
inline Permutation parse_permutation(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '(') s.erase(0, 1);
  if (!s.empty() && s.back() == ')') s.pop_back();
  std::vector<int> images;
  std::size_t pos = 0;
  while (pos <= s.size() && !s.empty()) {
    const std::size_t next = s.find(',', pos);
    const std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad permutation entry '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("bad permutation entry '" + tok + "'");
    images.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return Permutation::from_one_based(images);
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.code() * 31 + static_cast<std::uint64_t>(p.size()));
  }
};

}  // namespace wg
