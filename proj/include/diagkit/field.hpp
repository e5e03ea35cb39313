#pragma once

#include "diagkit/fieldpoly.hpp"
#include "diagkit/intpoly.hpp"
#include "diagkit/real.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace diagkit {

/// The two exact fields: the rationals (not Pythagorean) and the real
/// algebraic numbers (real closed).
enum class FieldTag { Q, RealAlg };

std::string_view to_string(FieldTag tag);
FieldTag parse_field_tag(std::string_view text);

enum class Ordering { LT, EQ, GT };
enum class ArithOp { Add, Sub, Mul, Div };

std::string_view to_string(Ordering o);

/// True when `x` is an element of the field (over Q: stored as a rational).
bool belongs_to(const Real& x, FieldTag tag);
/// Throws FieldMismatch unless belongs_to(x, tag).
void require_field(const Real& x, FieldTag tag);

Real arith(const Real& a, const Real& b, ArithOp op, FieldTag tag);
Ordering compare(const Real& a, const Real& b, FieldTag tag);

/// Nonnegative square root inside the field. Over Q only rational squares
/// have one (UnsupportedField otherwise).
Real sqrt_nonneg(const Real& a, FieldTag tag);
/// sqrt_nonneg(a^2 + b^2).
Real hypot(const Real& a, const Real& b, FieldTag tag);

/// All distinct real roots of a nonzero integer polynomial, increasing.
std::vector<Real> isolate_roots(const IntPoly& p);

/// Distinct roots lying in the field, increasing: rational roots over Q,
/// all real roots over RealAlg.
std::vector<Real> roots_in_field(const Poly& p, FieldTag tag);
std::vector<Real> roots_in_field(const IntPoly& p, FieldTag tag);

/// Exchange presentation of an irrational real algebraic number.
struct AlgebraicReal {
  IntPoly defining;  // squarefree, lowest degree first
  Rational lo;
  Rational hi;
};

/// Presentation with a canonical dyadic isolating interval (or the
/// presentation the value was created from, when it is a bare root).
/// Requires the value to be irrational.
AlgebraicReal to_algebraic(const Real& x);
/// Validates the invariants (squarefree, one root in (lo, hi), no root at
/// an endpoint) and returns the value. Rational roots collapse to rationals.
Real from_algebraic(const AlgebraicReal& a);

}  // namespace diagkit
