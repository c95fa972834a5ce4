#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pricekit {

// GMP rationals are always canonical (lowest terms, positive denominator).
using Rational = mpq_class;

// Accepts "a/b" or "a". Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

// Always "num/den", including integers ("2/1").
std::string to_fraction_string(const Rational& q);

// Decimal rendering with `digits` significant digits.
std::string to_decimal_string(const Rational& q, int digits = 12);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace pricekit
