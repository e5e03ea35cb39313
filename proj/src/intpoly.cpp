#include "diagkit/intpoly.hpp"

#include "diagkit/errors.hpp"

#include <algorithm>

namespace diagkit {

int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }
int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RatPoly to_rational(const IntPoly& p) {
  RatPoly r;
  r.reserve(p.size());
  for (const auto& c : p) r.emplace_back(c);
  return r;
}

namespace {

// Scales by a positive rational so that coefficients become coprime
// integers. Signs are preserved (Sturm chains depend on it).
IntPoly positive_primitive(const RatPoly& p) {
  Integer den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  IntPoly r;
  r.reserve(p.size());
  Integer content = 0;
  for (const auto& c : p) {
    Integer v = c.get_num() * (den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    r.push_back(v);
  }
  if (content > 1) {
    for (auto& c : r) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  }
  trim(r);
  return r;
}

}  // namespace

IntPoly primitive_part(const RatPoly& p) {
  IntPoly r = positive_primitive(p);
  if (!r.empty() && r.back() < 0) {
    for (auto& c : r) c = -c;
  }
  return r;
}

Rational evaluate(const IntPoly& p, const Rational& x) {
  // Horner on numerator/denominator separately keeps the work in integers.
  if (p.empty()) return 0;
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  Integer acc = p.back();
  Integer bpow = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    bpow *= b;
    acc = acc * a + p[i] * bpow;
  }
  Rational r(acc, bpow);
  r.canonicalize();
  return r;
}

Rational evaluate(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

int sign_at(const IntPoly& p, const Rational& x) {
  if (p.empty()) return 0;
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  Integer acc = p.back();
  Integer bpow = 1;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    bpow *= b;
    acc = acc * a + p[i] * bpow;
  }
  return sgn(acc);
}

RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quot, RatPoly& rem) {
  if (b.empty()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  rem = a;
  trim(rem);
  quot.assign(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 0, Rational(0));
  const Rational inv_lc = 1 / b.back();
  while (rem.size() >= b.size()) {
    std::size_t shift = rem.size() - b.size();
    Rational c = rem.back() * inv_lc;
    quot[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[shift + j] -= c * b[j];
    rem.pop_back();
    trim(rem);
  }
  trim(quot);
}

RatPoly make_monic(const RatPoly& p) {
  if (p.empty()) return p;
  RatPoly r = p;
  Rational inv = 1 / p.back();
  for (auto& c : r) c *= inv;
  return r;
}

RatPoly gcd(RatPoly a, RatPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RatPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = make_monic(r);
  }
  return make_monic(a);
}

IntPoly squarefree_part(const IntPoly& p) {
  RatPoly rp = to_rational(p);
  trim(rp);
  if (rp.size() <= 1) return primitive_part(rp);
  RatPoly g = gcd(rp, derivative(rp));
  RatPoly q, r;
  divmod(rp, g, q, r);
  return primitive_part(q);
}

bool is_squarefree(const IntPoly& p) {
  RatPoly rp = to_rational(p);
  trim(rp);
  if (rp.size() <= 2) return !rp.empty();
  return gcd(rp, derivative(rp)).size() == 1;
}

std::vector<IntPoly> sturm_chain(const IntPoly& p) {
  std::vector<IntPoly> chain;
  IntPoly p0 = p;
  trim(p0);
  if (p0.empty()) return chain;
  chain.push_back(p0);
  RatPoly a = to_rational(p0);
  RatPoly b = derivative(a);
  while (!b.empty()) {
    chain.push_back(positive_primitive(b));
    RatPoly q, r;
    divmod(a, b, q, r);
    for (auto& c : r) c = -c;
    a = to_rational(chain.back());
    b = r.empty() ? r : to_rational(positive_primitive(r));
  }
  return chain;
}

int sign_variations(const std::vector<IntPoly>& chain, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sign_at(q, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int sturm_count(const IntPoly& p, const Rational& lo, const Rational& hi) {
  if (sign_at(p, lo) == 0 || sign_at(p, hi) == 0) {
    throw Error(ErrorCode::EndpointRoot, "polynomial vanishes at an interval endpoint");
  }
  if (lo >= hi) return 0;
  auto chain = sturm_chain(p);
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

Rational cauchy_bound(const IntPoly& p) {
  IntPoly q = p;
  trim(q);
  Rational m = 0;
  for (std::size_t i = 0; i + 1 < q.size(); ++i) {
    Rational r(abs(q[i]), abs(q.back()));
    if (r > m) m = r;
  }
  return 1 + m;
}

namespace {

void isolate_range(const Rational& lo, const Rational& hi, int vlo, int vhi,
                   const std::function<int(const Rational&)>& variations,
                   const std::function<int(const Rational&)>& sign,
                   std::vector<RootInterval>& out) {
  int count = vlo - vhi;
  if (count <= 0) return;
  if (count == 1) {
    out.push_back({lo, hi});
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (sign(mid) != 0) {
    int vmid = variations(mid);
    isolate_range(lo, mid, vlo, vmid, variations, sign, out);
    isolate_range(mid, hi, vmid, vhi, variations, sign, out);
    return;
  }
  // Exact rational root at the midpoint: carve out a clean neighbourhood.
  Rational delta = (hi - lo) / 4;
  for (;;) {
    Rational a = mid - delta;
    Rational b = mid + delta;
    if (sign(a) != 0 && sign(b) != 0) {
      int va = variations(a);
      int vb = variations(b);
      if (va - vb == 1) {
        isolate_range(lo, a, vlo, va, variations, sign, out);
        out.push_back({mid, mid});
        isolate_range(b, hi, vb, vhi, variations, sign, out);
        return;
      }
    }
    delta /= 2;
  }
}

}  // namespace

std::vector<RootInterval> isolate_by_sturm(
    const Rational& bound, const std::function<int(const Rational&)>& variations,
    const std::function<int(const Rational&)>& sign) {
  std::vector<RootInterval> out;
  Rational lo = -bound;
  Rational hi = bound;
  isolate_range(lo, hi, variations(lo), variations(hi), variations, sign, out);
  return out;
}

bool refine_root(const IntPoly& p, Rational& lo, Rational& hi, const Rational& width) {
  if (lo == hi) return true;
  int slo = sign_at(p, lo);
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    int s = sign_at(p, mid);
    if (s == 0) {
      lo = hi = mid;
      return true;
    }
    if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return false;
}

std::vector<RootInterval> isolate_real_roots(const IntPoly& p) {
  IntPoly q = p;
  trim(q);
  if (q.empty()) throw Error(ErrorCode::PreconditionViolated, "isolate_roots of the zero polynomial");
  if (q.size() == 1) return {};
  IntPoly s = squarefree_part(q);
  auto chain = sturm_chain(s);
  Rational bound = power_of_two_above(cauchy_bound(s));
  auto roots = isolate_by_sturm(
      bound, [&](const Rational& x) { return sign_variations(chain, x); },
      [&](const Rational& x) { return sign_at(s, x); });
  // A rational root p/q has q | lc; two such rationals are at least 1/lc^2
  // apart, so once the interval is narrower the simplest rational inside is
  // the only candidate.
  Rational lc = abs(Rational(s.back()));
  Rational width = 1 / (2 * lc * lc);
  for (auto& r : roots) {
    if (r.exact()) continue;
    if (refine_root(s, r.lo, r.hi, width)) continue;
    Rational cand = simplest_between(r.lo, r.hi);
    if (cand.get_den() <= s.back() * (s.back() < 0 ? -1 : 1) && sign_at(s, cand) == 0) {
      r.lo = r.hi = cand;
    }
  }
  return roots;
}

}  // namespace diagkit
