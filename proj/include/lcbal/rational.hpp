#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lcbal {

using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading sign). Decimal points and
/// exponents are rejected; the result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Best rational approximation with denominator at most max_den
/// (continued-fraction convergents and semiconvergents).
Rational rationalize(double x, long max_den);

inline int sign(const Rational& q) { return sgn(q); }

} // namespace lcbal
