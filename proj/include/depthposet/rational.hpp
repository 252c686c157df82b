#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace depthposet {

/// Exact rational used for filter values and homotopy parameters.
using Rational = mpq_class;

/// Parses "num/den" or a bare integer. Throws Error(ParseError) otherwise.
Rational parse_rational(std::string_view text);

/// Always renders as "num/den", with den = 1 for integers.
std::string format_rational(const Rational& value);

/// Decimal rendering with the given number of significant digits.
std::string format_decimal(const Rational& value, int significant_digits = 12);

/// num / 2^exponent.
Rational dyadic(std::int64_t numerator, unsigned exponent);

}  // namespace depthposet
