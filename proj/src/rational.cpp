#include "diagkit/rational.hpp"

#include "diagkit/errors.hpp"

#include <cctype>

namespace diagkit {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::EndpointRoot: return "EndpointRoot";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotDiagonalizable: return "NotDiagonalizable";
    case ErrorCode::InputNotDiagonalizable: return "InputNotDiagonalizable";
    case ErrorCode::DependentInput: return "DependentInput";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::SingularConjugator: return "SingularConjugator";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::MissingCertificate: return "MissingCertificate";
    case ErrorCode::SingularP: return "SingularP";
    case ErrorCode::SingularMap: return "SingularMap";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Internal: return "InternalError";
  }
  return "Unknown";
}

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  Integer d{std::string(den)};
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(n), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

int sign(const Rational& q) { return sgn(q); }

Rational floor_dyadic(const Rational& q, unsigned bits) {
  Integer scaled = q.get_num();
  scaled <<= bits;
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Integer den = 1;
  den <<= bits;
  Rational r(f, den);
  r.canonicalize();
  return r;
}

Rational ceil_dyadic(const Rational& q, unsigned bits) {
  Integer scaled = q.get_num();
  scaled <<= bits;
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Integer den = 1;
  den <<= bits;
  Rational r(c, den);
  r.canonicalize();
  return r;
}

namespace {

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

// Simplest rational in [lo, hi] with 0 <= lo <= hi.
Rational simplest_nonneg(Rational lo, Rational hi) {
  Integer fl = floor_of(lo);
  if (Rational(fl) == lo) return Rational(fl);
  if (fl + 1 <= hi) return Rational(fl + 1);
  // Both lie in (fl, fl + 1): recurse on reciprocals of the fractional parts.
  Rational a = lo - fl;
  Rational b = hi - fl;
  Rational inner = simplest_nonneg(1 / b, 1 / a);
  Rational r = fl + 1 / inner;
  r.canonicalize();
  return r;
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (lo > 0) return simplest_nonneg(lo, hi);
  return -simplest_nonneg(-hi, -lo);
}

bool rational_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) {
    return false;
  }
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

Rational power_of_two_above(const Rational& q) {
  Rational a = abs(q);
  Rational p = 1;
  while (p < a) p *= 2;
  return p;
}

}  // namespace diagkit
