#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ptmatch {

/// Exact rational arithmetic. mpq_class keeps values in lowest terms with a
/// positive denominator, which is exactly the invariant we need; nothing in
/// the library ever touches floating point.
using Rational = mpq_class;
using Integer = mpz_class;

/// Canonicalized rational from an integer pair.
Rational rational(long num, long den = 1);

/// Parses "12", "-3.25" or (when allow_slash) "7/10" exactly.
/// Throws ParseError on anything else.
Rational parse_rational(std::string_view text, bool allow_slash = true);

/// "num/den" in lowest terms; plain "num" when the denominator is 1.
std::string fraction_string(const Rational& q);

/// Decimal rendering for plot output: exact when the denominator divides a
/// power of ten, otherwise truncated to max_frac_digits.
std::string decimal_string(const Rational& q, int max_frac_digits = 12);

} // namespace ptmatch
