#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "pk/cyclotomic.hpp"
#include "pk/kinematics.hpp"
#include "pk/ksubset.hpp"
#include "pk/matrix.hpp"
#include "pk/rational.hpp"

namespace pk {

// A minor that must stay nonzero vanished: the requested value sits on a pole
// of the potential or of a cross ratio.
struct PoleHit : std::runtime_error {
  explicit PoleHit(const std::string& what) : std::runtime_error(what) {}
};

// Exponent tuple (m_1 < ... < m_k = n) of a cyclic fixed point: row a of the
// point configuration is generated by omega_a = q^{m_a} with q = exp(2*pi*i/n).
using FixedPointLabel = std::vector<int>;

namespace detail {

inline std::vector<char> label_mask(const FixedPointLabel& A, int n) {
  std::vector<char> mask(n, 0);
  for (int a : A) {
    if (a < 1 || a > n) throw std::invalid_argument("label entry out of range");
    mask[a % n] = 1;
  }
  return mask;
}

inline FixedPointLabel mask_label(const std::vector<char>& mask, int n) {
  FixedPointLabel out;
  for (int r = 1; r < n; ++r)
    if (mask[r]) out.push_back(r);
  if (mask[0]) out.push_back(n);
  return out;
}

}  // namespace detail

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return Int(0);
  Int b(1);
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

inline int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

// Number of aperiodic Z/n-orbits of k-subsets (binary Lyndon words with k ones).
inline Int count_lyndon(int k, int n) {
  if (k < 0 || k > n) throw std::invalid_argument("count_lyndon: bad k");
  if (n == 0) return Int(0);
  int g = std::gcd(k, n);
  Int total(0);
  for (int d = 1; d <= g; ++d)
    if (g % d == 0) total += Int(moebius(d)) * binomial(n / d, k / d);
  if (total % Int(n) != 0) throw std::logic_error("count_lyndon: non-integral count");
  return total / Int(n);
}

// Lexicographic minimum over the translates of A that contain n.
inline FixedPointLabel canonical_class(const FixedPointLabel& A, int n) {
  if (A.empty()) throw std::invalid_argument("canonical_class: empty label");
  FixedPointLabel best;
  for (int a : A) {
    FixedPointLabel cand;
    cand.reserve(A.size());
    for (int x : A) cand.push_back(mod1(x - a, n));
    std::sort(cand.begin(), cand.end());
    if (best.empty() || cand < best) best = cand;
  }
  return best;
}

inline bool is_aperiodic(const FixedPointLabel& A, int n) {
  std::vector<char> mask = detail::label_mask(A, n);
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool same = true;
    for (int r = 0; r < n && same; ++r)
      if (mask[r] != mask[(r + d) % n]) same = false;
    if (same) return false;
  }
  return true;
}

// All Z/n-orbit representatives (periodic ones included), in lex order.
inline std::vector<FixedPointLabel> enumerate_classes(int k, int n) {
  std::vector<FixedPointLabel> out;
  for (Subset prefix : all_ksubsets(n - 1, k - 1)) {
    prefix.push_back(n);
    if (canonical_class(prefix, n) == prefix) out.push_back(prefix);
  }
  return out;
}

inline std::vector<FixedPointLabel> enumerate_aperiodic_classes(int k, int n) {
  std::vector<FixedPointLabel> out;
  for (FixedPointLabel& A : enumerate_classes(k, n))
    if (is_aperiodic(A, n)) out.push_back(std::move(A));
  return out;
}

// Sum of the label's roots of unity; the fixed point solves the scattering
// equations exactly when this is nonzero.
inline bool is_defective(const FixedPointLabel& A, int n) {
  CyclotomicNumber total(0);
  for (int a : A) total += CyclotomicNumber::root_power(n, a);
  return cyc_is_zero(total);
}

inline std::vector<FixedPointLabel> defective_classes(int k, int n) {
  std::vector<FixedPointLabel> out;
  for (FixedPointLabel& A : enumerate_aperiodic_classes(k, n))
    if (is_defective(A, n)) out.push_back(std::move(A));
  return out;
}

// A cyclic fixed point materialized as a k x n matrix over Q(zeta_n):
// C(a, i) = omega_a^i for column index i = 0..n-1.
struct PointConfiguration {
  int k = 0, n = 0;
  FixedPointLabel label;
  Matrix<CyclotomicNumber> C;
};

inline PointConfiguration make_configuration(const FixedPointLabel& A, int n) {
  PointConfiguration g;
  g.k = (int)A.size();
  g.n = n;
  g.label = A;
  g.C = Matrix<CyclotomicNumber>(g.k, n);
  for (int a = 0; a < g.k; ++a)
    for (int i = 0; i < n; ++i) g.C(a, i) = CyclotomicNumber::root_power(n, A[a] * i);
  return g;
}

inline std::vector<PointConfiguration> solutions(int k, int n) {
  std::vector<PointConfiguration> out;
  for (const FixedPointLabel& A : enumerate_aperiodic_classes(k, n))
    if (!is_defective(A, n)) out.push_back(make_configuration(A, n));
  return out;
}

inline CyclotomicNumber plucker(const PointConfiguration& g, const Subset& J) {
  check_subset(J, g.n);
  if ((int)J.size() != g.k) throw std::invalid_argument("plucker: need a k-subset of columns");
  std::vector<int> rows(g.k), cols(g.k);
  for (int i = 0; i < g.k; ++i) rows[i] = i;
  for (int i = 0; i < g.k; ++i) cols[i] = J[i] - 1;
  return det_exact(g.C.select(rows, cols));
}

namespace detail {

// d p_J / d C(a, i) as a signed (k-1)-minor; zero when column i is not in J.
inline CyclotomicNumber plucker_cofactor(const PointConfiguration& g, const Subset& J, int a,
                                         int col) {
  auto pos_it = std::find(J.begin(), J.end(), col + 1);
  if (pos_it == J.end()) return CyclotomicNumber(0);
  int pos = (int)(pos_it - J.begin());
  std::vector<int> rows, cols;
  for (int r = 0; r < g.k; ++r)
    if (r != a) rows.push_back(r);
  for (int c : J)
    if (c != col + 1) cols.push_back(c - 1);
  CyclotomicNumber minor = det_exact(g.C.select(rows, cols));
  return ((a + pos) % 2 == 0) ? minor : -minor;
}

}  // namespace detail

// Gradient of sum_J s_J log p_J in all k*n matrix entries, entry (a,i) at
// index a*n + i.  Every subset in the support of s must have p_J != 0.
inline std::vector<CyclotomicNumber> potential_gradient(const PointConfiguration& g,
                                                        const KinematicPoint& s) {
  if (s.k() != g.k || s.n() != g.n) throw std::invalid_argument("potential_gradient: shape mismatch");
  std::vector<CyclotomicNumber> grad(g.k * g.n, CyclotomicNumber(0));
  for (const auto& [J, sj] : s.values()) {
    CyclotomicNumber p = plucker(g, J);
    if (cyc_is_zero(p)) throw std::domain_error("potential_gradient: vanishing Plucker in support");
    CyclotomicNumber pinv = p.inverse();
    for (int col : J)
      for (int a = 0; a < g.k; ++a) {
        CyclotomicNumber cof = detail::plucker_cofactor(g, J, a, col - 1);
        if (!cyc_is_zero(cof)) grad[a * g.n + (col - 1)] += CyclotomicNumber(sj) * cof * pinv;
      }
  }
  return grad;
}

// Gradient of the planar kinematics potential sum_i log(p_window / p_gap).
inline std::vector<CyclotomicNumber> pk_gradient(const PointConfiguration& g) {
  KinematicPoint s(g.k, g.n);
  for (int i = 1; i <= g.n; ++i) {
    Subset w = window_subset(i, g.k, g.n);
    Subset gp = gap_window_subset(i, g.k, g.n);
    s.set(w, s.value(w) + 1);
    s.set(gp, s.value(gp) - 1);
  }
  return potential_gradient(g, s);
}

}  // namespace pk
