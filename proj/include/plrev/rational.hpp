#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace plrev {

// Arbitrary-precision rational, always canonical (lowest terms, positive
// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

// Parses "p/q" or "p". Throws Error(ParseError) on malformed text. When
// `require_canonical` is set, text that is not already in lowest terms
// (e.g. "2/4", "3/1", "+1") is rejected.
Rational parse_rational(std::string_view text, bool require_canonical = false);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace plrev
