#include "diagkit/real.hpp"

#include "diagkit/errors.hpp"
#include "diagkit/fieldpoly.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace diagkit {

// A generator of the tower. `poly` is monic in the generator, its
// coefficients only involve generators with smaller ids, and (lo, hi)
// isolates the generator among the real roots of `poly`. Both may only
// shrink over time, under the tower lock.
class RealNode {
 public:
  explicit RealNode(std::uint64_t node_id) : id(node_id) {}

  const std::uint64_t id;
  std::vector<Real> poly;
  Rational lo;
  Rational hi;
  int sign_lo = 2;  // sign of poly(lo); 2 = not yet computed

  bool has_source = false;
  IntPoly source_poly;
  Rational source_lo;
  Rational source_hi;
};

struct Real::Rep {
  Rational q;
  std::shared_ptr<RealNode> node;
  std::vector<Real> coeffs;
};

namespace {

std::recursive_mutex& tower_mutex() {
  static std::recursive_mutex m;
  return m;
}

std::atomic<std::uint64_t> next_node_id{1};

thread_local std::size_t current_max_degree = 64;

using NodePtr = std::shared_ptr<RealNode>;

}  // namespace

struct RealAccess {
  static const Real::Rep& rep(const Real& r) { return *r.rep_; }

  static Real rational(const Rational& q) {
    auto p = std::make_shared<Real::Rep>();
    p->q = q;
    return Real(std::shared_ptr<const Real::Rep>(std::move(p)));
  }

  // Drops structurally-zero leading coefficients; collapses constants.
  static Real poly(const NodePtr& node, std::vector<Real> coeffs) {
    while (!coeffs.empty() && structural_zero(coeffs.back())) coeffs.pop_back();
    if (coeffs.empty()) return Real();
    if (coeffs.size() == 1) return coeffs[0];
    auto p = std::make_shared<Real::Rep>();
    p->node = node;
    p->coeffs = std::move(coeffs);
    return Real(std::shared_ptr<const Real::Rep>(std::move(p)));
  }

  static bool structural_zero(const Real& r) {
    const auto& p = *r.rep_;
    return !p.node && p.q == 0;
  }

  static std::uint64_t top(const Real& r) { return r.rep_->node ? r.rep_->node->id : 0; }
};

namespace {

using RA = RealAccess;

std::vector<Real> node_poly(const NodePtr& node) {
  std::lock_guard<std::recursive_mutex> lock(tower_mutex());
  return node->poly;
}

std::size_t node_degree(const NodePtr& node) { return node_poly(node).size() - 1; }

void set_node_poly(const NodePtr& node, std::vector<Real> poly, std::size_t expected_size) {
  std::lock_guard<std::recursive_mutex> lock(tower_mutex());
  if (node->poly.size() != expected_size) return;  // refined meanwhile; keep that one
  node->poly = std::move(poly);
  node->sign_lo = 2;
}

Real variable(const NodePtr& node) { return RA::poly(node, {Real(), Real(1)}); }

// c <- c mod m, with m monic in the same variable.
void reduce_top(std::vector<Real>& c, const std::vector<Real>& m) {
  const std::size_t d = m.size() - 1;
  while (c.size() > d) {
    Real lead = c.back();
    c.pop_back();
    if (RA::structural_zero(lead)) continue;
    const std::size_t shift = c.size() - d;
    for (std::size_t j = 0; j < d; ++j) c[shift + j] = c[shift + j] - lead * m[j];
  }
}

Real full_reduce(const Real& x) {
  const auto& r = RA::rep(x);
  if (!r.node) return x;
  std::vector<Real> c;
  c.reserve(r.coeffs.size());
  for (const auto& k : r.coeffs) c.push_back(full_reduce(k));
  reduce_top(c, node_poly(r.node));
  return RA::poly(r.node, std::move(c));
}

// --- interval arithmetic -------------------------------------------------

Interval round_out(const Interval& a, unsigned bits) {
  return {floor_dyadic(a.lo, bits), ceil_dyadic(a.hi, bits)};
}

Interval iadd(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

Interval imul(const Interval& a, const Interval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

bool excludes_zero(const Interval& a) { return a.lo > 0 || a.hi < 0; }

int sign_impl(const Real& x);
bool is_zero_impl(const Real& x);

int poly_sign_at(const NodePtr& node, const Rational& x) {
  std::vector<Real> m = node_poly(node);
  if (all_rational(m)) return sign(evaluate(to_ratpoly(m), x));
  Real acc;
  for (std::size_t i = m.size(); i-- > 0;) acc = acc * Real(x) + m[i];
  return sign_impl(acc);
}

void refine_node(const NodePtr& node, const Rational& width) {
  std::lock_guard<std::recursive_mutex> lock(tower_mutex());
  while (node->hi - node->lo > width) {
    Rational mid = (node->lo + node->hi) / 2;
    int s = poly_sign_at(node, mid);
    if (s == 0) {
      node->poly = {Real(-mid), Real(1)};
      node->lo = node->hi = mid;
      node->sign_lo = 0;
      return;
    }
    if (node->sign_lo == 2) node->sign_lo = poly_sign_at(node, node->lo);
    if (s == node->sign_lo) {
      node->lo = mid;
    } else {
      node->hi = mid;
    }
  }
}

Interval node_interval(const NodePtr& node, unsigned bits) {
  Rational width(1);
  width /= Rational(Integer(1) << bits);
  refine_node(node, width);
  std::lock_guard<std::recursive_mutex> lock(tower_mutex());
  return {node->lo, node->hi};
}

Interval enclose_impl(const Real& x, unsigned bits) {
  const auto& r = RA::rep(x);
  if (!r.node) return {r.q, r.q};
  Interval t = node_interval(r.node, bits);
  Interval acc = enclose_impl(r.coeffs.back(), bits);
  for (std::size_t i = r.coeffs.size() - 1; i-- > 0;) {
    acc = round_out(iadd(imul(acc, t), enclose_impl(r.coeffs[i], bits)), bits + 16);
  }
  return acc;
}

// --- exact zero test (dynamic evaluation) ----------------------------------

// y is fully reduced and not a plain rational. Decides y == 0 by splitting
// the defining polynomial of its top generator along gcd(y, m).
bool zero_exact(const Real& y) {
  const auto& r = RA::rep(y);
  const NodePtr node = r.node;
  Poly a = r.coeffs;
  trim_exact(a);
  if (a.empty()) return true;
  if (a.size() == 1) return is_zero_impl(a[0]);
  Poly m = node_poly(node);
  Poly g = gcd(a, m);
  if (degree(g) <= 0) return false;
  Poly q, rem;
  divmod(m, g, q, rem);
  Poly h = make_monic(q);
  if (degree(h) <= 0) {
    set_node_poly(node, g, m.size());
    return true;
  }
  // The generator is a root of exactly one of g, h (m is squarefree).
  Real gv = RA::poly(node, g);
  Real hv = RA::poly(node, h);
  for (unsigned bits = 16;; bits *= 2) {
    if (excludes_zero(enclose_impl(hv, bits))) {
      set_node_poly(node, g, m.size());
      return true;
    }
    if (excludes_zero(enclose_impl(gv, bits))) {
      set_node_poly(node, h, m.size());
      return false;
    }
    if (bits > (1u << 20)) throw Error(ErrorCode::Internal, "zero test failed to separate factors");
  }
}

bool is_zero_impl(const Real& x) {
  if (RA::rep(x).node == nullptr) return RA::rep(x).q == 0;
  Real y = full_reduce(x);
  if (!RA::rep(y).node) return RA::rep(y).q == 0;
  if (excludes_zero(enclose_impl(y, 20))) return false;
  return zero_exact(y);
}

int sign_impl(const Real& x) {
  if (!RA::rep(x).node) return sign(RA::rep(x).q);
  bool exact_done = false;
  for (unsigned bits = 20;; bits *= 2) {
    Real y = full_reduce(x);
    if (!RA::rep(y).node) return sign(RA::rep(y).q);
    Interval iv = enclose_impl(y, bits);
    if (iv.lo > 0) return 1;
    if (iv.hi < 0) return -1;
    if (!exact_done && bits >= 40) {
      if (zero_exact(y)) return 0;
      exact_done = true;
    }
  }
}

// --- characteristic polynomial over Q (Hessenberg) -------------------------

RatPoly charpoly_hessenberg(std::vector<std::vector<Rational>> h) {
  const std::size_t n = h.size();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i > m) {
      std::swap(h[i], h[m]);
      for (std::size_t k = 0; k < n; ++k) std::swap(h[k][i], h[k][m]);
    }
    const Rational t = h[m][m - 1];
    for (std::size_t j = m + 1; j < n; ++j) {
      Rational u = h[j][m - 1] / t;
      if (u == 0) continue;
      for (std::size_t k = 0; k < n; ++k) h[j][k] -= u * h[m][k];
      for (std::size_t k = 0; k < n; ++k) h[k][m] += u * h[k][j];
    }
  }
  std::vector<RatPoly> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t m = 1; m <= n; ++m) {
    RatPoly lin = {-h[m - 1][m - 1], Rational(1)};
    p[m] = lin * p[m - 1];
    Rational t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t *= h[m - i][m - i - 1];
      Rational c = t * h[m - i - 1][m - 1];
      if (c == 0) continue;
      RatPoly scaled = p[m - i - 1];
      for (auto& v : scaled) v *= c;
      p[m] = p[m] - scaled;
    }
  }
  return p[n];
}

void collect_nodes(const Real& x, std::map<std::uint64_t, NodePtr>& out) {
  const auto& r = RA::rep(x);
  if (!r.node) return;
  if (!out.count(r.node->id)) {
    out[r.node->id] = r.node;
    for (const auto& c : node_poly(r.node)) collect_nodes(c, out);
  }
  for (const auto& c : r.coeffs) collect_nodes(c, out);
}

}  // namespace

// --- Real ------------------------------------------------------------------

Real::Real() : Real(Rational(0)) {}

Real::Real(long value) : Real(Rational(value)) {}

Real::Real(const Rational& value) {
  auto p = std::make_shared<Rep>();
  p->q = value;
  p->q.canonicalize();
  rep_ = std::move(p);
}

bool Real::is_rational() const noexcept { return rep_->node == nullptr; }

const Rational& Real::rational() const {
  if (rep_->node) throw Error(ErrorCode::Internal, "rational() on an irrational presentation");
  return rep_->q;
}

bool Real::is_zero() const { return is_zero_impl(*this); }

int Real::sign() const { return sign_impl(*this); }

Real Real::operator-() const {
  if (!rep_->node) return Real(Rational(-rep_->q));
  std::vector<Real> c;
  c.reserve(rep_->coeffs.size());
  for (const auto& k : rep_->coeffs) c.push_back(-k);
  return RA::poly(rep_->node, std::move(c));
}

Real operator+(const Real& a, const Real& b) {
  const auto& ra = RA::rep(a);
  const auto& rb = RA::rep(b);
  if (!ra.node && !rb.node) return Real(Rational(ra.q + rb.q));
  if (RA::structural_zero(a)) return b;
  if (RA::structural_zero(b)) return a;
  const auto ta = RA::top(a);
  const auto tb = RA::top(b);
  if (ta == tb) {
    std::vector<Real> c(std::max(ra.coeffs.size(), rb.coeffs.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < ra.coeffs.size()) c[i] = ra.coeffs[i];
      if (i < rb.coeffs.size()) c[i] = c[i] + rb.coeffs[i];
    }
    return RA::poly(ra.node, std::move(c));
  }
  const auto& hi = ta > tb ? ra : rb;
  const Real& lo = ta > tb ? b : a;
  std::vector<Real> c = hi.coeffs;
  c[0] = c[0] + lo;
  return RA::poly(hi.node, std::move(c));
}

Real operator-(const Real& a, const Real& b) { return a + (-b); }

Real operator*(const Real& a, const Real& b) {
  const auto& ra = RA::rep(a);
  const auto& rb = RA::rep(b);
  if (!ra.node && !rb.node) return Real(Rational(ra.q * rb.q));
  if (!ra.node || !rb.node) {
    const Rational& q = !ra.node ? ra.q : rb.q;
    const Real& other = !ra.node ? b : a;
    if (q == 0) return Real();
    if (q == 1) return other;
    const auto& ro = RA::rep(other);
    std::vector<Real> c;
    c.reserve(ro.coeffs.size());
    for (const auto& k : ro.coeffs) c.push_back(k * Real(q));
    return RA::poly(ro.node, std::move(c));
  }
  const auto ta = RA::top(a);
  const auto tb = RA::top(b);
  if (ta == tb) {
    std::vector<Real> c(ra.coeffs.size() + rb.coeffs.size() - 1);
    for (std::size_t i = 0; i < ra.coeffs.size(); ++i) {
      if (RA::structural_zero(ra.coeffs[i])) continue;
      for (std::size_t j = 0; j < rb.coeffs.size(); ++j) {
        c[i + j] = c[i + j] + ra.coeffs[i] * rb.coeffs[j];
      }
    }
    reduce_top(c, node_poly(ra.node));
    return RA::poly(ra.node, std::move(c));
  }
  const auto& hi = ta > tb ? ra : rb;
  const Real& lo = ta > tb ? b : a;
  std::vector<Real> c;
  c.reserve(hi.coeffs.size());
  for (const auto& k : hi.coeffs) c.push_back(k * lo);
  return RA::poly(hi.node, std::move(c));
}

Real Real::inverse() const {
  if (!rep_->node) {
    if (rep_->q == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
    return Real(Rational(1 / rep_->q));
  }
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  for (;;) {
    Real y = full_reduce(*this);
    const auto& r = RA::rep(y);
    if (!r.node) return Real(Rational(1 / r.q));
    Poly a = r.coeffs;
    trim_exact(a);
    if (a.size() == 1) return a[0].inverse();
    Poly m = node_poly(r.node);
    Poly g, s;
    xgcd(a, m, g, s);
    if (degree(g) == 0) {
      reduce_top(s, m);
      return RA::poly(r.node, std::move(s));
    }
    // y does not vanish at the generator, so the generator is a root of m/g.
    Poly q, rem;
    divmod(m, g, q, rem);
    set_node_poly(r.node, make_monic(q), m.size());
  }
}

Real operator/(const Real& a, const Real& b) {
  if (b.is_rational() && a.is_rational()) {
    if (b.rational() == 0) throw Error(ErrorCode::DivisionByZero, "division by zero");
    return Real(Rational(a.rational() / b.rational()));
  }
  return a * b.inverse();
}

Interval Real::enclose(unsigned bits) const { return enclose_impl(full_reduce(*this), bits); }

double Real::approx() const {
  Interval iv = enclose(64);
  Rational mid = (iv.lo + iv.hi) / 2;
  return mid.get_d();
}

std::size_t Real::tower_degree() const {
  std::map<std::uint64_t, NodePtr> nodes;
  collect_nodes(full_reduce(*this), nodes);
  std::size_t d = 1;
  for (const auto& [id, n] : nodes) d *= node_degree(n);
  return d;
}

IntPoly Real::defining_polynomial() const {
  Real y = full_reduce(*this);
  if (!RA::rep(y).node) {
    const Rational& q = RA::rep(y).q;
    return {-q.get_num(), q.get_den()};
  }
  std::map<std::uint64_t, NodePtr> nodes;
  collect_nodes(y, nodes);
  std::vector<NodePtr> order;
  std::vector<std::size_t> degs;
  std::map<std::uint64_t, std::size_t> position;
  std::size_t dim = 1;
  for (const auto& [id, n] : nodes) {
    position[id] = order.size();
    order.push_back(n);
    degs.push_back(node_degree(n));
    dim *= degs.back();
    if (dim > current_max_degree) {
      throw Error(ErrorCode::DegreeOverflow,
                  "defining polynomial degree exceeds cap " + std::to_string(current_max_degree));
    }
  }
  std::vector<std::size_t> stride(order.size());
  std::size_t s = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    stride[i] = s;
    s *= degs[i];
  }
  std::function<void(const Real&, std::size_t, std::vector<Rational>&)> fill =
      [&](const Real& z, std::size_t offset, std::vector<Rational>& v) {
        const auto& r = RA::rep(z);
        if (!r.node) {
          v[offset] += r.q;
          return;
        }
        std::size_t p = position.at(r.node->id);
        for (std::size_t j = 0; j < r.coeffs.size(); ++j) {
          fill(r.coeffs[j], offset + j * stride[p], v);
        }
      };
  std::vector<std::vector<Rational>> mat(dim, std::vector<Rational>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    Real mono(1);
    std::size_t rest = b;
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::size_t e = rest % degs[i];
      rest /= degs[i];
      for (std::size_t k = 0; k < e; ++k) mono = mono * variable(order[i]);
    }
    Real z = full_reduce(y * mono);
    std::vector<Rational> col(dim);
    fill(z, 0, col);
    for (std::size_t i = 0; i < dim; ++i) mat[i][b] = col[i];
  }
  RatPoly cp = charpoly_hessenberg(std::move(mat));
  return squarefree_part(primitive_part(cp));
}

std::optional<Rational> Real::to_rational() const {
  Real y = full_reduce(*this);
  if (y.is_rational()) return y.rational();
  IntPoly d = y.defining_polynomial();
  for (const auto& r : isolate_real_roots(d)) {
    if (r.exact() && (y - Real(r.lo)).is_zero()) return r.lo;
  }
  return std::nullopt;
}

Real Real::root_of(std::vector<Real> poly, const Rational& lo, const Rational& hi) {
  trim_exact(poly);
  if (poly.size() < 2) throw Error(ErrorCode::Internal, "root_of a constant polynomial");
  if (poly.size() == 2) return -poly[0] / poly[1];
  poly = make_monic(poly);
  auto node = std::make_shared<RealNode>(next_node_id.fetch_add(1));
  node->poly = std::move(poly);
  node->lo = lo;
  node->hi = hi;
  return variable(node);
}

Real Real::root_of(const IntPoly& poly, const Rational& lo, const Rational& hi) {
  IntPoly p = poly;
  trim(p);
  if (p.size() < 2) throw Error(ErrorCode::Internal, "root_of a constant polynomial");
  if (p.size() == 2) return Real(Rational(-p[0], p[1]));
  Poly coeffs;
  for (const auto& c : p) coeffs.emplace_back(Rational(c));
  Real r = root_of(coeffs, lo, hi);
  const auto& rep = RA::rep(r);
  rep.node->has_source = true;
  rep.node->source_poly = poly;
  rep.node->source_lo = lo;
  rep.node->source_hi = hi;
  return r;
}

bool Real::source_presentation(IntPoly& poly, Rational& lo, Rational& hi) const {
  const auto& r = *rep_;
  if (!r.node || r.coeffs.size() != 2) return false;
  if (!RA::structural_zero(r.coeffs[0])) return false;
  const auto& one = RA::rep(r.coeffs[1]);
  if (one.node || one.q != 1) return false;
  std::lock_guard<std::recursive_mutex> lock(tower_mutex());
  if (!r.node->has_source || r.node->poly.size() != r.node->source_poly.size()) return false;
  poly = r.node->source_poly;
  lo = r.node->source_lo;
  hi = r.node->source_hi;
  return true;
}

std::string Real::debug_string() const {
  if (is_rational()) return to_string(rep_->q);
  std::ostringstream os;
  os << "~" << approx() << " [tower " << tower_degree() << "]";
  return os.str();
}

int compare(const Real& a, const Real& b) { return (a - b).sign(); }

bool operator==(const Real& a, const Real& b) { return (a - b).is_zero(); }

Real abs(const Real& a) { return a.sign() < 0 ? -a : a; }

Real sqrt_nonneg(const Real& a) {
  int s = a.sign();
  if (s < 0) throw Error(ErrorCode::NegativeRadicand, "square root of a negative number");
  if (s == 0) return Real();
  if (a.is_rational()) {
    Rational root;
    if (rational_sqrt(a.rational(), root)) return Real(root);
  }
  Interval iv = a.enclose(8);
  Rational hi = std::max(Rational(1), iv.hi) + 1;
  return Real::root_of(Poly{-a, Real(), Real(1)}, Rational(0), hi);
}

std::size_t max_degree() { return current_max_degree; }

MaxDegreeScope::MaxDegreeScope(std::size_t cap) : previous_(current_max_degree) {
  current_max_degree = cap;
}

MaxDegreeScope::~MaxDegreeScope() { current_max_degree = previous_; }

}  // namespace diagkit
