#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gslab {

// Exact arithmetic for probabilities, bounds and distances. Denominators such
// as 10^4 n^3 q^30 overflow 64 bits, so the backing integer is unbounded.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

inline BigInt pow_int(std::int64_t base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

inline std::string numerator_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str();
}

inline std::string denominator_string(const Rational& r) {
  return boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

inline std::string to_string(const Rational& r) {
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return numerator_string(r);
  return numerator_string(r) + "/" + den.str();
}

}  // namespace gslab
