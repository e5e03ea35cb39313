#pragma once

// Independent test-side oracles. Plain GMP rationals only; nothing from the
// library's linear algebra is used here.

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <vector>

namespace oracle {

using Q = mpq_class;
using QMat = std::vector<std::vector<Q>>;

inline std::size_t rank(QMat a) {
  std::size_t r = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      Q f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

/// det(tI - M) for 3x3 M by cofactor expansion: coefficients c0..c3.
inline std::vector<Q> charpoly3(const QMat& m) {
  Q tr = m[0][0] + m[1][1] + m[2][2];
  Q minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] +
             m[1][1] * m[2][2] - m[1][2] * m[2][1];
  Q det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
          m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
          m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return {-det, minors, -tr, Q(1)};
}

inline Q eval(const std::vector<Q>& p, const Q& x) {
  Q acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// Rational roots of a monic integer-coefficient cubic, with multiplicity,
/// by the rational root theorem (integer roots dividing c0).
inline std::vector<Q> rational_roots_monic(std::vector<Q> p) {
  std::vector<Q> roots;
  while (p.size() > 1) {
    bool found = false;
    long c0 = p[0].get_num().get_si();
    if (c0 == 0) {
      found = true;
      roots.push_back(0);
      p.erase(p.begin());
      continue;
    }
    for (long d = 1; d <= std::labs(c0) && !found; ++d) {
      if (c0 % d != 0) continue;
      for (long s : {d, -d}) {
        if (eval(p, Q(s)) == 0) {
          roots.push_back(Q(s));
          // Synthetic division by (t - s).
          std::vector<Q> q(p.size() - 1);
          Q carry = 0;
          for (std::size_t i = p.size(); i-- > 1;) {
            carry = p[i] + carry * s;
            q[i - 1] = carry;
          }
          p = q;
          found = true;
          break;
        }
      }
    }
    if (!found) break;
  }
  return roots;
}

/// Diagonalizability of an integer 3x3 matrix over Q: every eigenvalue
/// rational and each eigenspace dimension equals its multiplicity.
inline bool diagonalizable_over_q(const QMat& m) {
  auto roots = rational_roots_monic(charpoly3(m));
  if (roots.size() != 3) return false;
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::size_t total = 0;
  for (const auto& l : roots) {
    QMat s = m;
    for (int i = 0; i < 3; ++i) s[i][i] -= l;
    total += 3 - rank(s);
  }
  return total == 3;
}

}  // namespace oracle
