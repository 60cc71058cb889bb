#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace wg {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
// Precision is chosen at runtime (digits10), see with_digits().
using Real = boost::multiprecision::mpfr_float;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Exact "num/den" pair of decimal strings; denominator is always positive.
inline std::pair<std::string, std::string> to_num_den(const Rational& r) {
  return {numerator_of(r).str(), denominator_of(r).str()};
}

inline Rational from_num_den(const std::string& num, const std::string& den) {
  Integer n(num);
  Integer d(den);
  if (d == 0) throw std::invalid_argument("zero denominator");
  return Rational(n, d);
}

inline std::string to_string(const Rational& r) {
  auto [n, d] = to_num_den(r);
  return d == "1" ? n : n + "/" + d;
}

inline Integer ipow(const Integer& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline std::int64_t ipow64(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Scoped change of the default MPFR working precision.
class with_digits {
 public:
  explicit with_digits(unsigned digits10) : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~with_digits() { Real::default_precision(saved_); }
  with_digits(const with_digits&) = delete;
  with_digits& operator=(const with_digits&) = delete;

 private:
  unsigned saved_;
};

}  // namespace wg
