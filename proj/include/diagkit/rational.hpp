#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace diagkit {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". The result is canonical (reduced, q > 0).
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);

int sign(const Rational& q);

/// Largest multiple of 2^-bits that is <= q (resp. smallest that is >= q).
Rational floor_dyadic(const Rational& q, unsigned bits);
Rational ceil_dyadic(const Rational& q, unsigned bits);

/// The rational with the smallest denominator in the closed interval
/// [lo, hi] (Stern-Brocot descent). Requires lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Exact square root when q is the square of a rational.
bool rational_sqrt(const Rational& q, Rational& root);

/// Smallest power of two that is >= |q| (and >= 1).
Rational power_of_two_above(const Rational& q);

}  // namespace diagkit
