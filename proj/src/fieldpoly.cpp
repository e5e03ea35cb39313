#include "diagkit/fieldpoly.hpp"

#include "diagkit/errors.hpp"

#include <algorithm>

namespace diagkit {

namespace {

bool stored_zero(const Real& r) { return r.is_rational() && r.rational() == 0; }

void trim_stored(Poly& p) {
  while (!p.empty() && stored_zero(p.back())) p.pop_back();
}

}  // namespace

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

void trim_exact(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

bool all_rational(const Poly& p) {
  return std::all_of(p.begin(), p.end(), [](const Real& r) { return r.is_rational(); });
}

RatPoly to_ratpoly(const Poly& p) {
  RatPoly r;
  r.reserve(p.size());
  for (const auto& c : p) r.push_back(c.rational());
  trim(r);
  return r;
}

Poly from_ratpoly(const RatPoly& p) {
  Poly r;
  r.reserve(p.size());
  for (const auto& c : p) r.emplace_back(c);
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  trim_stored(r);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
  trim_stored(r);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (stored_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  trim_stored(r);
  return r;
}

Poly scale(const Poly& a, const Real& c) {
  Poly r;
  r.reserve(a.size());
  for (const auto& k : a) r.push_back(k * c);
  trim_stored(r);
  return r;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Real(static_cast<long>(i)));
  trim_stored(d);
  return d;
}

Real evaluate(const Poly& p, const Real& x) {
  Real acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

void divmod(const Poly& a, const Poly& b_in, Poly& quot, Poly& rem) {
  Poly b = b_in;
  trim_exact(b);
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  rem = a;
  trim_exact(rem);
  quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Real());
  const Real inv = b.back().inverse();
  while (rem.size() >= b.size()) {
    const std::size_t shift = rem.size() - b.size();
    Real c = rem.back() * inv;
    quot[shift] = c;
    for (std::size_t j = 0; j + 1 < b.size(); ++j) rem[shift + j] = rem[shift + j] - c * b[j];
    rem.pop_back();
    trim_exact(rem);
  }
  trim_stored(quot);
}

Poly make_monic(const Poly& p) {
  if (p.empty()) return p;
  Poly r = scale(p, p.back().inverse());
  r.back() = Real(1);
  return r;
}

Poly gcd(Poly a, Poly b) {
  trim_exact(a);
  trim_exact(b);
  while (!b.empty()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

void xgcd(const Poly& a, const Poly& m, Poly& g, Poly& s) {
  Poly r0 = m;
  Poly r1 = a;
  trim_exact(r0);
  trim_exact(r1);
  Poly s0;
  Poly s1 = {Real(1)};
  while (!r1.empty()) {
    Poly q, r;
    divmod(r0, r1, q, r);
    Poly snew = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(snew);
  }
  Real inv = r0.back().inverse();
  g = scale(r0, inv);
  g.back() = Real(1);
  s = scale(s0, inv);
}

std::vector<Rational> rational_roots(const RatPoly& p) {
  RatPoly q = p;
  trim(q);
  if (q.empty()) throw Error(ErrorCode::PreconditionViolated, "roots of the zero polynomial");
  std::vector<Rational> out;
  for (const auto& r : isolate_real_roots(primitive_part(q))) {
    if (r.exact()) out.push_back(r.lo);
  }
  return out;
}

namespace {

std::vector<Real> rational_coefficient_roots(const RatPoly& p) {
  IntPoly s = squarefree_part(primitive_part(p));
  auto intervals = isolate_real_roots(s);
  RatPoly rest = to_rational(s);
  for (const auto& r : intervals) {
    if (!r.exact()) continue;
    RatPoly q, rem;
    divmod(rest, RatPoly{-r.lo, Rational(1)}, q, rem);
    rest = q;
  }
  IntPoly irr = primitive_part(rest);
  std::vector<Real> out;
  for (const auto& r : intervals) {
    if (r.exact()) {
      out.emplace_back(r.lo);
    } else {
      out.push_back(Real::root_of(irr, r.lo, r.hi));
    }
  }
  return out;
}

}  // namespace

std::vector<Real> real_roots(const Poly& p_in) {
  Poly p = p_in;
  trim_exact(p);
  if (p.empty()) throw Error(ErrorCode::PreconditionViolated, "roots of the zero polynomial");
  if (p.size() == 1) return {};
  if (all_rational(p)) return rational_coefficient_roots(to_ratpoly(p));

  Poly g = gcd(p, derivative(p));
  Poly s, rem;
  divmod(p, g, s, rem);
  s = make_monic(s);
  if (s.size() == 2) return {-s[0]};

  std::vector<Poly> chain = {s, derivative(s)};
  for (;;) {
    Poly q, r;
    divmod(chain[chain.size() - 2], chain.back(), q, r);
    if (r.empty()) break;
    chain.push_back(scale(r, Real(-1)));
  }
  auto variations = [&](const Rational& x) {
    int count = 0;
    int last = 0;
    for (const auto& c : chain) {
      int sg = evaluate(c, Real(x)).sign();
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  auto sign_of = [&](const Rational& x) { return evaluate(s, Real(x)).sign(); };
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    Interval iv = s[i].enclose(8);
    m = std::max(m, std::max(Rational(abs(iv.lo)), Rational(abs(iv.hi))));
  }
  Rational bound = power_of_two_above(1 + m) * 2;
  std::vector<Real> out;
  for (const auto& r : isolate_by_sturm(bound, variations, sign_of)) {
    if (r.exact()) {
      out.emplace_back(r.lo);
    } else {
      out.push_back(Real::root_of(s, r.lo, r.hi));
    }
  }
  return out;
}

}  // namespace diagkit
