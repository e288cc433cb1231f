#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace voachar {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "p/q" rendering ("p" when the denominator is 1).
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Parses "p", "-p", "p/q" (no decimals, no whitespace).  Throws InvalidArgument.
Rational parse_rational(std::string_view text);

Rational make_rational(std::int64_t num, std::int64_t den = 1);

bool is_integer(const Rational& r);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

/// Narrowing with an overflow check; throws ComputationError on overflow.
std::int64_t to_int64(const Integer& z);

/// Largest positive rational h with a/h and b/h integers (gcd on the
/// additive group generated by a and b).  gcd(0, b) = |b|.
Rational rational_gcd(const Rational& a, const Rational& b);

/// Natural log of |r| for r != 0, robust for numbers far outside the double range.
double log_abs(const Rational& r);
double log_abs(const Integer& z);

/// Nearest double, saturating to +-inf rather than overflowing silently.
double to_double(const Rational& r);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace voachar
