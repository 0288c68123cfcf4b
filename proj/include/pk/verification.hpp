#pragma once
// Cross-ratio form of the planar kinematics scattering equations, and the
// conjugation involution acting on the cyclic fixed points.

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "pk/cyclic_points.hpp"
#include "pk/cyclotomic.hpp"
#include "pk/ksubset.hpp"
#include "pk/matrix.hpp"

namespace pk {

// w^{(L)}_{i,j}: the successors i', j' are taken in cyclic order on the
// complement of L, and L together with {i, i', j, j'} must consist of k+2
// distinct column labels.
struct CrossRatio {
  Subset L;
  int i = 0, j = 0;
};

inline int cyclic_successor(int x, const Subset& skip, int n) {
  for (int step = 1; step <= n; ++step) {
    int c = mod1(x + step, n);
    if (!std::binary_search(skip.begin(), skip.end(), c)) return c;
  }
  throw std::invalid_argument("cyclic_successor: nothing outside the skipped set");
}

// Determinant with the columns in the written order; exponents are taken
// modulo n by the root powers themselves.
inline CyclotomicNumber ordered_minor(const PointConfiguration& g, const std::vector<int>& cols) {
  if (static_cast<int>(cols.size()) != g.k)
    throw std::invalid_argument("ordered_minor: need k columns");
  Matrix<CyclotomicNumber> M(g.k, g.k);
  for (int r = 0; r < g.k; ++r)
    for (int c = 0; c < g.k; ++c) M(r, c) = g.C(r, mod1(cols[c], g.n) - 1);
  return det_exact(M);
}

// Numerator and denominator of w^{(L)}_{i,j} before dividing.
struct CrossRatioParts {
  CyclotomicNumber num, den;
};

inline CrossRatioParts cross_ratio_parts(const CrossRatio& w, const PointConfiguration& g) {
  if (static_cast<int>(w.L.size()) != g.k - 2)
    throw std::invalid_argument("cross_ratio: L must have k-2 elements");
  check_subset(w.L, g.n);
  int ip = cyclic_successor(w.i, w.L, g.n);
  int jp = cyclic_successor(w.j, w.L, g.n);
  std::set<int> all(w.L.begin(), w.L.end());
  all.insert({w.i, ip, w.j, jp});
  if (static_cast<int>(all.size()) != g.k + 2)
    throw std::invalid_argument("cross_ratio: labels collide");
  auto minor = [&](int a, int b) {
    std::vector<int> cols(w.L.begin(), w.L.end());
    cols.push_back(a);
    cols.push_back(b);
    return ordered_minor(g, cols);
  };
  return {minor(w.i, jp) * minor(ip, w.j), minor(w.i, w.j) * minor(ip, jp)};
}

inline CyclotomicNumber cross_ratio(const CrossRatio& w, const PointConfiguration& g) {
  CrossRatioParts p = cross_ratio_parts(w, g);
  if (cyc_is_zero(p.den)) throw PoleHit("cross_ratio: vanishing minor in denominator");
  return p.num * p.den.inverse();
}

// Left-minus-right differences of the cross-ratio system
//   w^{(2,...,j^,...,k)}_{1,k+1} = w^{(3,...,(j+1)^,...,k+1)}_{2,k+2}
// over all cyclic shifts: (k-1)n entries, row-major in (shift, j).  Derived
// equations for k = 3, 4; for larger k the system is conjectural and the
// entries report evidence rather than a theorem.
//
// Each entry is cleared of denominators, i.e. it is the difference scaled by
// the (possibly vanishing) product of both denominators.  Some fixed points
// have vanishing non-adjacent minors sitting exactly in those denominators --
// at k=4, n=8 the classes {1,2,5,8} and {1,3,4,8} kill every minor of the
// cyclic shape {a, a+1, a+3, a+4} -- and the cross ratios themselves become
// 0/0 there while the cleared form still vanishes identically.
inline std::vector<CyclotomicNumber> pk_cross_ratio_residuals(const PointConfiguration& g) {
  int k = g.k, n = g.n;
  if (k < 2 || n < k + 2) throw std::invalid_argument("pk_cross_ratio_residuals: need 2 <= k <= n-2");
  std::vector<CyclotomicNumber> out;
  out.reserve((k - 1) * n);
  for (int r = 0; r < n; ++r)
    for (int j = 2; j <= k; ++j) {
      CrossRatio lhs, rhs;
      for (int t = 2; t <= k; ++t)
        if (t != j) lhs.L.push_back(mod1(t + r, n));
      for (int t = 3; t <= k + 1; ++t)
        if (t != j + 1) rhs.L.push_back(mod1(t + r, n));
      std::sort(lhs.L.begin(), lhs.L.end());
      std::sort(rhs.L.begin(), rhs.L.end());
      lhs.i = mod1(1 + r, n);
      lhs.j = mod1(k + 1 + r, n);
      rhs.i = mod1(2 + r, n);
      rhs.j = mod1(k + 2 + r, n);
      CrossRatioParts l = cross_ratio_parts(lhs, g), rr = cross_ratio_parts(rhs, g);
      out.push_back(l.num * rr.den - rr.num * l.den);
    }
  return out;
}

// Complex conjugation sends the generators q^{m_a} to q^{n - m_a}.
inline FixedPointLabel conjugate_label(const FixedPointLabel& A, int n) {
  FixedPointLabel out;
  out.reserve(A.size());
  for (int m : A) out.push_back(mod1(n - m, n));
  std::sort(out.begin(), out.end());
  return out;
}

inline PointConfiguration conjugation_involution(const PointConfiguration& g) {
  return make_configuration(conjugate_label(g.label, g.n), g.n);
}

}  // namespace pk
