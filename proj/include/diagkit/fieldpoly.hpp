#pragma once

#include "diagkit/real.hpp"

#include <vector>

namespace diagkit {

/// Polynomial with exact real coefficients, lowest degree first. The zero
/// polynomial is empty. "Exact" trimming drops leading coefficients whose
/// value is zero, not merely those stored as the rational 0.
using Poly = std::vector<Real>;

int degree(const Poly& p);
void trim_exact(Poly& p);
bool all_rational(const Poly& p);
RatPoly to_ratpoly(const Poly& p);  // requires all_rational
Poly from_ratpoly(const RatPoly& p);

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Real& c);
Poly derivative(const Poly& p);
Real evaluate(const Poly& p, const Real& x);

/// Euclidean division; b must be nonzero after exact trimming.
void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
Poly make_monic(const Poly& p);
/// Monic gcd.
Poly gcd(Poly a, Poly b);
/// Monic g = gcd(a, m) together with s such that s*a = g (mod m).
void xgcd(const Poly& a, const Poly& m, Poly& g, Poly& s);

/// Distinct real roots of a nonzero polynomial, in increasing order.
std::vector<Real> real_roots(const Poly& p);

/// Distinct rational roots of a nonzero rational polynomial, increasing.
std::vector<Rational> rational_roots(const RatPoly& p);

}  // namespace diagkit
