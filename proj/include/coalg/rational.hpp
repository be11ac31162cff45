#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace coalg {

/// Exact rational scalar. GMP keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Prints "p" for integers and "p/q" otherwise.
std::string to_string(const Rational& value);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);
Rational power(const Rational& base, unsigned exponent);

}  // namespace coalg
