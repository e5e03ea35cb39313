#pragma once

#include "diagkit/intpoly.hpp"
#include "diagkit/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace diagkit {

/// Closed rational interval.
struct Interval {
  Rational lo;
  Rational hi;
};

class RealNode;

/// An exact real algebraic number.
///
/// Values are polynomials over Q in a finite set of algebraic generators.
/// Each generator is a real root of a monic squarefree polynomial whose
/// coefficients involve only older generators, together with an isolating
/// interval. Generators are never factored up front: when a zero test or an
/// inversion meets a zero divisor of the current presentation, the defining
/// polynomial of the offending generator is replaced by the factor that
/// actually vanishes at it. Those refinements are invisible to callers; a
/// Real always denotes the same number.
///
/// Reals are immutable and cheap to copy.
class Real {
 public:
  Real();
  Real(long value);  // NOLINT(google-explicit-constructor)
  Real(int value) : Real(static_cast<long>(value)) {}  // NOLINT
  Real(const Rational& value);  // NOLINT(google-explicit-constructor)

  /// True when the value is stored as a plain rational. A value built from
  /// generators may still be rational; see `to_rational`.
  bool is_rational() const noexcept;
  /// Requires is_rational().
  const Rational& rational() const;
  /// Exact rationality check (computes a defining polynomial when needed).
  std::optional<Rational> to_rational() const;

  bool is_zero() const;
  int sign() const;
  Real inverse() const;

  Real operator-() const;
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }
  Real& operator/=(const Real& b) { return *this = *this / b; }

  /// Guaranteed enclosure of the value; narrower for larger `bits`.
  Interval enclose(unsigned bits) const;
  double approx() const;

  /// Dimension over Q of the algebra generated by the generators this value
  /// depends on (an upper bound for its algebraic degree).
  std::size_t tower_degree() const;

  /// Squarefree primitive integer polynomial vanishing at the value, with
  /// positive leading coefficient. Throws DegreeOverflow when the
  /// presentation is larger than the configured cap.
  IntPoly defining_polynomial() const;

  /// The unique real root of `poly` in the open interval (lo, hi).
  /// Preconditions (checked by callers): poly is squarefree, has exactly one
  /// root in (lo, hi), and does not vanish at lo or hi.
  static Real root_of(std::vector<Real> poly, const Rational& lo, const Rational& hi);
  /// Same, with rational coefficients; remembers the presentation so that
  /// serialization of the bare root reproduces it.
  static Real root_of(const IntPoly& poly, const Rational& lo, const Rational& hi);

  /// When the value is exactly a root created from an integer polynomial
  /// and not modified since, the presentation it was created with.
  bool source_presentation(IntPoly& poly, Rational& lo, Rational& hi) const;

  std::string debug_string() const;

  struct Rep;

 private:
  explicit Real(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;

  friend struct RealAccess;
};

int compare(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }
inline bool operator<(const Real& a, const Real& b) { return compare(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return compare(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return compare(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return compare(a, b) >= 0; }

Real abs(const Real& a);

/// Nonnegative square root. Throws NegativeRadicand for a < 0.
Real sqrt_nonneg(const Real& a);

/// Cap on presentation degrees; defaults to 64.
std::size_t max_degree();

/// Scoped override of max_degree() for the current thread.
class MaxDegreeScope {
 public:
  explicit MaxDegreeScope(std::size_t cap);
  ~MaxDegreeScope();
  MaxDegreeScope(const MaxDegreeScope&) = delete;
  MaxDegreeScope& operator=(const MaxDegreeScope&) = delete;

 private:
  std::size_t previous_;
};

}  // namespace diagkit
