#include "diagkit/field.hpp"

#include "diagkit/errors.hpp"

namespace diagkit {

std::string_view to_string(FieldTag tag) { return tag == FieldTag::Q ? "Q" : "RealAlg"; }

FieldTag parse_field_tag(std::string_view text) {
  if (text == "Q") return FieldTag::Q;
  if (text == "RealAlg") return FieldTag::RealAlg;
  throw Error(ErrorCode::Parse, "unknown field '" + std::string(text) + "' (expected Q or RealAlg)");
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::LT: return "LT";
    case Ordering::EQ: return "EQ";
    case Ordering::GT: return "GT";
  }
  return "?";
}

bool belongs_to(const Real& x, FieldTag tag) { return tag == FieldTag::RealAlg || x.is_rational(); }

void require_field(const Real& x, FieldTag tag) {
  if (!belongs_to(x, tag)) {
    throw Error(ErrorCode::FieldMismatch, "irrational element used over Q");
  }
}

Real arith(const Real& a, const Real& b, ArithOp op, FieldTag tag) {
  require_field(a, tag);
  require_field(b, tag);
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw Error(ErrorCode::Internal, "bad arithmetic operator");
}

Ordering compare(const Real& a, const Real& b, FieldTag tag) {
  require_field(a, tag);
  require_field(b, tag);
  int c = compare(a, b);
  return c < 0 ? Ordering::LT : (c == 0 ? Ordering::EQ : Ordering::GT);
}

Real sqrt_nonneg(const Real& a, FieldTag tag) {
  require_field(a, tag);
  if (tag == FieldTag::RealAlg) return sqrt_nonneg(a);
  if (a.rational() < 0) throw Error(ErrorCode::NegativeRadicand, "square root of a negative number");
  Rational root;
  if (!rational_sqrt(a.rational(), root)) {
    throw Error(ErrorCode::UnsupportedField,
                to_string(a.rational()) + " is not a square in Q (Q is not Pythagorean)");
  }
  return Real(root);
}

Real hypot(const Real& a, const Real& b, FieldTag tag) {
  require_field(a, tag);
  require_field(b, tag);
  return sqrt_nonneg(a * a + b * b, tag);
}

std::vector<Real> isolate_roots(const IntPoly& p) {
  IntPoly q = p;
  trim(q);
  if (q.empty()) throw Error(ErrorCode::PreconditionViolated, "isolate_roots of the zero polynomial");
  return real_roots(from_ratpoly(to_rational(q)));
}

std::vector<Real> roots_in_field(const Poly& p, FieldTag tag) {
  if (tag == FieldTag::RealAlg) return real_roots(p);
  for (const auto& c : p) require_field(c, tag);
  std::vector<Real> out;
  for (const auto& r : rational_roots(to_ratpoly(p))) out.emplace_back(r);
  return out;
}

std::vector<Real> roots_in_field(const IntPoly& p, FieldTag tag) {
  return roots_in_field(from_ratpoly(to_rational(p)), tag);
}

AlgebraicReal to_algebraic(const Real& x) {
  AlgebraicReal out;
  if (x.source_presentation(out.defining, out.lo, out.hi)) return out;
  IntPoly d = x.defining_polynomial();
  if (d.size() <= 2) throw Error(ErrorCode::Internal, "to_algebraic of a rational value");
  auto chain = sturm_chain(d);
  // Canonical interval: the first dyadic cell [j/2^k, (j+1)/2^k] containing x
  // that isolates it, found by exact comparisons only.
  Interval iv = x.enclose(4);
  Integer j;
  {
    Rational lo = iv.lo;
    mpz_fdiv_q(j.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    while (compare(x, Real(Rational(j + 1))) >= 0) ++j;
    while (compare(x, Real(Rational(j))) < 0) --j;
  }
  Rational cell = 1;
  for (;;) {
    Rational lo = Rational(j) * cell;
    Rational hi = lo + cell;
    if (sign_at(d, lo) != 0 && sign_at(d, hi) != 0 &&
        sign_variations(chain, lo) - sign_variations(chain, hi) == 1) {
      lo.canonicalize();
      hi.canonicalize();
      out.defining = d;
      out.lo = lo;
      out.hi = hi;
      return out;
    }
    cell /= 2;
    j *= 2;
    int c = compare(x, Real(Rational(Rational(j + 1) * cell)));
    if (c == 0) throw Error(ErrorCode::Internal, "to_algebraic of a rational value");
    if (c > 0) j += 1;
  }
}

Real from_algebraic(const AlgebraicReal& a) {
  IntPoly p = a.defining;
  trim(p);
  if (p.size() < 2) throw Error(ErrorCode::Parse, "defining polynomial must have degree >= 1");
  if (p.size() - 1 > max_degree()) {
    throw Error(ErrorCode::DegreeOverflow,
                "defining polynomial degree " + std::to_string(p.size() - 1) + " exceeds cap " +
                    std::to_string(max_degree()));
  }
  if (!is_squarefree(p)) throw Error(ErrorCode::Parse, "defining polynomial is not squarefree");
  if (!(a.lo < a.hi)) throw Error(ErrorCode::Parse, "isolating interval must satisfy lo < hi");
  if (sturm_count(p, a.lo, a.hi) != 1) {
    throw Error(ErrorCode::Parse, "interval does not isolate exactly one root");
  }
  if (p.size() == 2) return Real(Rational(-p[0], p[1]));
  Rational lo = a.lo;
  Rational hi = a.hi;
  // A rational root is represented as a rational.
  Rational lc = abs(Rational(p.back()));
  Rational l2 = lo;
  Rational h2 = hi;
  if (refine_root(p, l2, h2, 1 / (2 * lc * lc))) return Real(l2);
  Rational cand = simplest_between(l2, h2);
  if (sign_at(p, cand) == 0) return Real(cand);
  return Real::root_of(p, lo, hi);
}

}  // namespace diagkit
