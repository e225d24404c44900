#pragma once

// Arbitrary-precision integers/rationals and the named real constants used by
// the closed-form mode estimates. Big values ride on Boost.Multiprecision
// (header-only backends); nothing here rolls its own bignum arithmetic.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "randlink/errors.hpp"

namespace randlink {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // always stored reduced, denominator > 0

namespace constants {

// Euler–Mascheroni constant, lim (H_n − log n). Double-rounded value of
// 0.57721566490153286060...; the source material quotes only 4 places.
inline constexpr double euler_gamma = 0.5772156649015329;
// ζ(2) = π²/6 = 1.6449340668482264...
inline constexpr double zeta2 = 1.6449340668482264;
// ζ(3) (Apéry's constant) = 1.2020569031595942854...
inline constexpr double zeta3 = 1.2020569031595943;

}  // namespace constants

inline BigInt factorial(std::uint64_t n) {
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
}

// Serialization form used everywhere a rational leaves the library: "p/q"
// with q > 0, always including the denominator ("1" serializes as "1/1") so
// consumers need exactly one parser.
inline std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

// Exact division that is required to be exact; anything else is a bug or a
// falsified identity, never a user error.
inline BigInt exact_div(const BigInt& a, const BigInt& b, const char* what) {
    BigInt q, rem;
    divide_qr(a, b, q, rem);
    if (rem != 0) throw internal_error(std::string("inexact division in ") + what);
    return q;
}

}  // namespace randlink
