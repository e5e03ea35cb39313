#pragma once

#include "diagkit/rational.hpp"

#include <functional>
#include <vector>

namespace diagkit {

/// Integer polynomial, lowest degree first. The zero polynomial is empty.
using IntPoly = std::vector<Integer>;
/// Rational polynomial, lowest degree first. The zero polynomial is empty.
using RatPoly = std::vector<Rational>;

int degree(const IntPoly& p);
int degree(const RatPoly& p);

void trim(IntPoly& p);
void trim(RatPoly& p);

RatPoly to_rational(const IntPoly& p);
/// Clears denominators and strips the content; the leading coefficient is
/// made positive.
IntPoly primitive_part(const RatPoly& p);

Rational evaluate(const IntPoly& p, const Rational& x);
Rational evaluate(const RatPoly& p, const Rational& x);
int sign_at(const IntPoly& p, const Rational& x);

RatPoly derivative(const RatPoly& p);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem);
/// Monic gcd (zero only when both inputs are zero).
RatPoly gcd(RatPoly a, RatPoly b);
RatPoly make_monic(const RatPoly& p);

/// p / gcd(p, p'), made primitive.
IntPoly squarefree_part(const IntPoly& p);
bool is_squarefree(const IntPoly& p);

/// Sturm chain p, p', -rem(...), ...
std::vector<IntPoly> sturm_chain(const IntPoly& p);
int sign_variations(const std::vector<IntPoly>& chain, const Rational& x);

/// Number of distinct real roots of a squarefree p in (lo, hi). Throws
/// EndpointRoot when p vanishes at lo or hi.
int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi);

/// Strict bound: every real root r of p satisfies |r| < bound.
Rational cauchy_bound(const IntPoly& p);

/// A real root of a squarefree polynomial: either an exact rational
/// (lo == hi) or an open interval containing exactly one root whose
/// endpoints are not roots.
struct RootInterval {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
};

/// Generic Sturm bisection. `variations(x)` must return the sign-variation
/// count of a Sturm chain at x and `sign(x)` the sign of the polynomial
/// itself. Roots are returned in increasing order.
std::vector<RootInterval> isolate_by_sturm(
    const Rational& bound, const std::function<int(const Rational&)>& variations,
    const std::function<int(const Rational&)>& sign);

/// Isolates all distinct real roots of p (any nonzero integer polynomial).
/// Rational roots come back exact.
std::vector<RootInterval> isolate_real_roots(const IntPoly& p);

/// Shrinks (lo, hi) around the unique root of squarefree p until the width is
/// at most `width`. Returns true (and collapses the interval) if a midpoint
/// lands on the root.
bool refine_root(const IntPoly& p, Rational& lo, Rational& hi, const Rational& width);

}  // namespace diagkit
