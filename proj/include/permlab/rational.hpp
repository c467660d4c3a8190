#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace permlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "7", "-3", "0.125", "1e-3" or "p/q" into an exact rational.
/// Throws Error(InvalidInput) on anything else.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Integer factorial(unsigned long k);
Rational pow(const Rational& base, long exponent);
Integer pow(const Integer& base, unsigned long exponent);

/// Natural log of a positive rational, robust to values outside the
/// binary64 range.
double log_of(const Rational& value);
double log_of(const Integer& value);

/// Nearest binary64 value of a positive rational via exp(log_of); zero for 0.
double to_double(const Rational& value);

}  // namespace permlab
