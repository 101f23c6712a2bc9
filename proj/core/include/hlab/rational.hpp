#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace hlab {

/// Arbitrary precision rational backed by GMP's mpq_t.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "3", "-1/8", "0.125" or "2.5e-3" into an exact rational.
/// Throws InvalidArgument on anything else.
Rational parse_rational(std::string_view text);

/// "1/8", "-3", "0".
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Exact value of a finite double.
Rational exact_from_double(double x);

/// base^exponent for integer exponents (negative allowed when base != 0).
Rational pow(const Rational& base, std::int64_t exponent);

Rational abs(const Rational& q);

/// Largest integer <= q.
BigInt floor(const Rational& q);

/// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

}  // namespace hlab
