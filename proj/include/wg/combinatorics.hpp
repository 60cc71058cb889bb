#pragma once

#include "wg/numeric.hpp"
#include "wg/pairings.hpp"

#include <stdexcept>

namespace wg {

inline Integer factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  Integer out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

inline Integer binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  Integer out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

/// Shifted double factorial m!! = (m-1)(m-3)(m-5)... over the positive
/// factors; the empty product is 1. So 6!! = 15 and the number of pairings
/// of 2l points is (2l)!!.
inline Integer double_factorial(int m) {
  Integer out = 1;
  for (int f = m - 1; f >= 1; f -= 2) out *= f;
  return out;
}

inline Integer catalan(int l) {
  if (l < 0) throw std::invalid_argument("catalan of a negative number");
  return binomial(2 * l, l) / (l + 1);
}

/// Number of pairings of 2l points in the family: (2l-1)(2l-3)..., l!, Catalan(l).
inline Integer reference_counts(PairingFamily family, int l) {
  if (l < 0) throw std::invalid_argument("negative l");
  switch (family) {
    case PairingFamily::classical: return double_factorial(2 * l);
    case PairingFamily::half: return factorial(l);
    case PairingFamily::free: return catalan(l);
  }
  return 0;
}

}  // namespace wg
