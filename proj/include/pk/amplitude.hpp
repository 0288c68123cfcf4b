#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pk/cyclic_points.hpp"
#include "pk/kinematics.hpp"
#include "pk/ksubset.hpp"
#include "pk/matrix.hpp"
#include "pk/rational.hpp"

namespace pk {

struct InvalidGauge : std::runtime_error {
  explicit InvalidGauge(const std::string& what) : std::runtime_error(what) {}
};

// Number of standard Young tableaux of a k x m rectangle.
inline Int catalan_number(int k, int m) {
  if (k < 0 || m < 0) throw std::invalid_argument("catalan_number: negative argument");
  Int value = 1;
  for (int i = 2; i <= k * m; ++i) value *= i;
  for (int i = 0; i < k; ++i) {
    Int fi = 1, fmi = 1;
    for (int t = 2; t <= i; ++t) fi *= t;
    for (int t = 2; t <= m + i; ++t) fmi *= t;
    value = value * fi / fmi;
  }
  return value;
}

namespace ops {

template <class F>
struct Field;

template <>
struct Field<CyclotomicNumber> {
  static bool is_zero(const CyclotomicNumber& v) { return cyc_is_zero(v); }
  // In the exact field a zero is a zero; the distinction only matters for
  // floats, where is_zero is a classification threshold.
  static bool is_exact_zero(const CyclotomicNumber& v) { return cyc_is_zero(v); }
  static CyclotomicNumber from_rational(const Rational& x) { return CyclotomicNumber(x); }
};

template <>
struct Field<std::complex<double>> {
  // Threshold for classifying values that are zero in exact arithmetic but
  // show up as roundoff noise (frame Vandermondes, pivot tests).  Reduced
  // determinants must not go through this: their honest magnitudes reach
  // 1e-18 at n = 9 while staying nonzero.
  static bool is_zero(const std::complex<double>& v) { return std::abs(v) < 1e-9; }
  static bool is_exact_zero(const std::complex<double>& v) {
    return v == std::complex<double>(0.0, 0.0) || !std::isfinite(v.real()) ||
           !std::isfinite(v.imag());
  }
  static std::complex<double> from_rational(const Rational& x) { return {to_double(x), 0.0}; }
};

}  // namespace ops

// Scattering chart: k x n matrix of inhomogeneous coordinates, one point per
// column, top row gauge-fixed to ones.  z_{a,i} lives at M(i, a-1).
template <class F>
struct Chart {
  int k = 0, n = 0;
  Matrix<F> M;

  // composite index of the coordinate z_{a,i}: points major, 0-based
  int comp(int a, int i) const { return (a - 1) * (k - 1) + (i - 1); }
  int dim() const { return (k - 1) * n; }
};

// Cyclic fixed point in the inhomogeneous chart: z_{a,i} = q^{m_i (a-1)}.
inline Chart<CyclotomicNumber> solution_chart(const FixedPointLabel& A, int n) {
  Chart<CyclotomicNumber> c;
  c.k = (int)A.size();
  c.n = n;
  c.M = Matrix<CyclotomicNumber>(c.k, n);
  for (int a = 0; a < n; ++a) {
    c.M(0, a) = CyclotomicNumber(1);
    for (int i = 1; i < c.k; ++i) c.M(i, a) = CyclotomicNumber::root_power(n, (long)A[i - 1] * a);
  }
  return c;
}

inline Chart<std::complex<double>> solution_chart_float(const FixedPointLabel& A, int n) {
  Chart<std::complex<double>> c;
  c.k = (int)A.size();
  c.n = n;
  c.M = Matrix<std::complex<double>>(c.k, n);
  constexpr double tau = 6.283185307179586476925286766559;
  for (int a = 0; a < n; ++a) {
    c.M(0, a) = 1.0;
    for (int i = 1; i < c.k; ++i)
      c.M(i, a) = std::polar(1.0, tau * (double)(((long)A[i - 1] * a) % n) / n);
  }
  return c;
}

template <class F>
F chart_minor(const Chart<F>& c, const Subset& J) {
  if ((int)J.size() != c.k) throw std::invalid_argument("chart_minor: need a k-subset");
  std::vector<int> rows(c.k), cols(c.k);
  for (int i = 0; i < c.k; ++i) rows[i] = i;
  for (int i = 0; i < c.k; ++i) cols[i] = J[i] - 1;
  return det_exact(c.M.select(rows, cols));
}

namespace detail {

// Cofactor of entry (row, col) inside the k x k block on columns J.
template <class F>
F block_cofactor(const Matrix<F>& block, int row, int col) {
  int k = block.rows();
  std::vector<int> rows, cols;
  for (int r = 0; r < k; ++r)
    if (r != row) rows.push_back(r);
  for (int t = 0; t < k; ++t)
    if (t != col) cols.push_back(t);
  F minor = det_exact(block.select(rows, cols));
  return ((row + col) % 2 == 0) ? minor : -minor;
}

// d^2 det / (d entry(r1,c1) d entry(r2,c2)); zero if a row or column repeats.
template <class F>
F block_second_cofactor(const Matrix<F>& block, int r1, int c1, int r2, int c2) {
  if (r1 == r2 || c1 == c2) return F(0);
  int k = block.rows();
  std::vector<int> rows, cols;
  for (int r = 0; r < k; ++r)
    if (r != r1 && r != r2) rows.push_back(r);
  for (int t = 0; t < k; ++t)
    if (t != c1 && t != c2) cols.push_back(t);
  F minor = det_exact(block.select(rows, cols));
  int sgn = ((r1 + c1 + r2 + c2) % 2 == 0) ? 1 : -1;
  if ((r1 < r2) != (c1 < c2)) sgn = -sgn;
  return sgn > 0 ? minor : -minor;
}

template <class F>
Matrix<F> column_block(const Chart<F>& c, const Subset& J) {
  std::vector<int> rows(c.k), cols(c.k);
  for (int i = 0; i < c.k; ++i) rows[i] = i;
  for (int i = 0; i < c.k; ++i) cols[i] = J[i] - 1;
  return c.M.select(rows, cols);
}

}  // namespace detail

// dS/dz_{a,i} for S = sum_J s_J log p_J.
template <class F>
std::vector<F> potential_gradient(const Chart<F>& c, const KinematicPoint& s) {
  if (s.k() != c.k || s.n() != c.n) throw std::invalid_argument("potential_gradient: shape mismatch");
  std::vector<F> grad(c.dim(), F(0));
  for (const auto& [J, sj] : s.values()) {
    Matrix<F> block = detail::column_block(c, J);
    F p = det_exact(block);
    if (ops::Field<F>::is_zero(p)) throw PoleHit("vanishing minor p_" + subset_key(J));
    F weight = ops::Field<F>::from_rational(sj) / p;
    for (int pos = 0; pos < c.k; ++pos)
      for (int i = 1; i < c.k; ++i)
        grad[c.comp(J[pos], i)] += weight * detail::block_cofactor(block, i, pos);
  }
  return grad;
}

// Hessian Psi_{(a,i),(b,j)} of the potential, composite indexing as in comp().
template <class F>
Matrix<F> hessian(const Chart<F>& c, const KinematicPoint& s) {
  if (s.k() != c.k || s.n() != c.n) throw std::invalid_argument("hessian: shape mismatch");
  int k = c.k;
  Matrix<F> psi(c.dim(), c.dim());
  for (const auto& [J, sj] : s.values()) {
    Matrix<F> block = detail::column_block(c, J);
    F p = det_exact(block);
    if (ops::Field<F>::is_zero(p)) throw PoleHit("vanishing minor p_" + subset_key(J));
    F sjF = ops::Field<F>::from_rational(sj);
    Matrix<F> dlog(k, k);  // dlog(i, pos) = (d p / d entry(i,pos)) / p, rows i >= 1
    for (int i = 1; i < k; ++i)
      for (int pos = 0; pos < k; ++pos) dlog(i, pos) = detail::block_cofactor(block, i, pos) / p;
    for (int pos1 = 0; pos1 < k; ++pos1)
      for (int i = 1; i < k; ++i)
        for (int pos2 = 0; pos2 < k; ++pos2)
          for (int j = 1; j < k; ++j) {
            F term = -dlog(i, pos1) * dlog(j, pos2);
            if (i != j && pos1 != pos2)
              term += detail::block_second_cofactor(block, i, pos1, j, pos2) / p;
            psi(c.comp(J[pos1], i), c.comp(J[pos2], j)) += sjF * term;
          }
  }
  return psi;
}

template <class F>
F generalized_vandermonde(const Chart<F>& c, const Subset& A) {
  if ((int)A.size() != c.k + 1) throw std::invalid_argument("generalized_vandermonde: need k+1 labels");
  F prod(1);
  for (int drop = 0; drop < (int)A.size(); ++drop) {
    Subset J;
    for (int t = 0; t < (int)A.size(); ++t)
      if (t != drop) J.push_back(A[t]);
    prod *= chart_minor(c, J);
  }
  return prod;
}

// First (k+1)-subset, in lexicographic order, whose generalized Vandermonde
// determinant is nonzero.
template <class F>
std::optional<Subset> find_frame(const Chart<F>& c) {
  for (const Subset& A : all_ksubsets(c.n, c.k + 1))
    if (!ops::Field<F>::is_zero(generalized_vandermonde(c, A))) return A;
  return std::nullopt;
}

// Rows: infinitesimal sl(k) action on every point, one row per generator in
// the order E_11-E_22, ..., E_{k-1,k-1}-E_kk, then E_{ab} (a != b) row-major.
template <class F>
Matrix<F> null_space_matrix(const Chart<F>& c) {
  int k = c.k;
  std::vector<Matrix<F>> gens;
  for (int a = 0; a + 1 < k; ++a) {
    Matrix<F> g(k, k);
    g(a, a) = F(1);
    g(a + 1, a + 1) = F(-1);
    gens.push_back(g);
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      if (a == b) continue;
      Matrix<F> g(k, k);
      g(a, b) = F(1);
      gens.push_back(g);
    }
  Matrix<F> V((int)gens.size(), c.dim());
  for (int r = 0; r < (int)gens.size(); ++r) {
    const Matrix<F>& g = gens[r];
    for (int a = 0; a < c.n; ++a) {
      std::vector<F> w(k, F(0));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          if (ops::Field<F>::is_zero(g(i, j))) continue;
          w[i] += g(i, j) * c.M(j, a);
        }
      for (int i = 1; i < k; ++i)
        V(r, a * (k - 1) + (i - 1)) = w[i] - c.M(i, a) * w[0] / c.M(0, a);
    }
  }
  return V;
}

// Composite indices (0-based) deleted by a frame: all coordinates of the k+1
// frame points.
inline std::vector<int> frame_gauge(int k, const Subset& A) {
  std::vector<int> out;
  for (int a : A)
    for (int i = 1; i < k; ++i) out.push_back((a - 1) * (k - 1) + (i - 1));
  return out;
}

// Lexicographically least independent column set of V (greedy over a matroid,
// so it is also the lex-least basis).
template <class F>
std::vector<int> greedy_gauge(const Matrix<F>& V) {
  int m = V.rows();
  std::vector<std::vector<F>> basis;
  std::vector<int> pivots, chosen;
  for (int cidx = 0; cidx < V.cols() && (int)chosen.size() < m; ++cidx) {
    std::vector<F> v(m);
    for (int r = 0; r < m; ++r) v[r] = V(r, cidx);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const F& lead = v[pivots[b]];
      if (ops::Field<F>::is_zero(lead)) continue;
      F f = lead / basis[b][pivots[b]];
      for (int r = 0; r < m; ++r) v[r] -= f * basis[b][r];
    }
    int piv = -1;
    for (int r = 0; r < m; ++r)
      if (!ops::Field<F>::is_zero(v[r])) {
        piv = r;
        break;
      }
    if (piv >= 0) {
      chosen.push_back(cidx);
      basis.push_back(std::move(v));
      pivots.push_back(piv);
    }
  }
  if ((int)chosen.size() < m) throw InvalidGauge("null space matrix is rank deficient");
  return chosen;
}

template <class F>
F null_space_minor(const Matrix<F>& V, const std::vector<int>& cols) {
  std::vector<int> rows(V.rows());
  for (int r = 0; r < V.rows(); ++r) rows[r] = r;
  return det_exact(V.select(rows, cols));
}

// Deleted composite indices for the Hessian rows and columns; equal sets give
// a single-valued reduced determinant, unequal sets leave a residual sign.
struct GaugeChoice {
  std::vector<int> deleted_rows, deleted_cols;
};

namespace detail {

inline std::vector<int> complement_indices(int dim, const std::vector<int>& deleted) {
  std::vector<char> drop(dim, 0);
  for (int d : deleted) {
    if (d < 0 || d >= dim) throw std::invalid_argument("gauge index out of range");
    drop[d] = 1;
  }
  std::vector<int> kept;
  for (int t = 0; t < dim; ++t)
    if (!drop[t]) kept.push_back(t);
  return kept;
}

}  // namespace detail

// N_k det(Psi with the gauge's rows and columns removed) / ([rows][cols]).
template <class F>
F reduced_determinant(const Chart<F>& c, const KinematicPoint& s, const GaugeChoice& g,
                      const Rational& normalization) {
  int expected = c.k * c.k - 1;
  if ((int)g.deleted_rows.size() != expected || (int)g.deleted_cols.size() != expected)
    throw std::invalid_argument("reduced_determinant: need k^2-1 deleted indices");
  Matrix<F> V = null_space_matrix(c);
  F row_minor = null_space_minor(V, g.deleted_rows);
  if (ops::Field<F>::is_zero(row_minor)) throw InvalidGauge("vanishing null-space row minor");
  F col_minor = g.deleted_cols == g.deleted_rows ? row_minor : null_space_minor(V, g.deleted_cols);
  if (ops::Field<F>::is_zero(col_minor)) throw InvalidGauge("vanishing null-space column minor");
  Matrix<F> psi = hessian(c, s);
  F sub = det_exact(psi.select(detail::complement_indices(c.dim(), g.deleted_rows),
                               detail::complement_indices(c.dim(), g.deleted_cols)));
  return ops::Field<F>::from_rational(normalization) * sub / (row_minor * col_minor);
}

// Principal gauge: the same composite indices deleted on both sides, so the
// value carries no residual sign ambiguity.
template <class F>
F reduced_determinant(const Chart<F>& c, const KinematicPoint& s, const std::vector<int>& deleted,
                      const Rational& normalization) {
  return reduced_determinant(c, s, GaugeChoice{deleted, deleted}, normalization);
}

template <class F>
F parke_taylor(const Chart<F>& c) {
  F denom(1);
  for (int i = 1; i <= c.n; ++i) {
    F p = chart_minor(c, window_subset(i, c.k, c.n));
    if (ops::Field<F>::is_zero(p)) throw PoleHit("vanishing window minor");
    denom *= p;
  }
  return F(1) / denom;
}

// The SL(k) frame normalization: fixed per k by matching the framed reduced
// determinant against the general gauge on one framed solution.
inline Rational normalization_constant(int k) {
  static std::mutex mu;
  static std::map<int, Rational> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  int n = k + 2;
  for (const auto& sol : solutions(k, n)) {
    Chart<CyclotomicNumber> c = solution_chart(sol.label, n);
    auto frame = find_frame(c);
    if (!frame) continue;
    Matrix<CyclotomicNumber> V = null_space_matrix(c);
    CyclotomicNumber bracket = null_space_minor(V, frame_gauge(k, *frame));
    CyclotomicNumber vdm = generalized_vandermonde(c, *frame);
    if (cyc_is_zero(bracket)) continue;
    CyclotomicNumber ratio = bracket / vdm;
    CyclotomicNumber nk = ratio * ratio;
    if (!nk.is_rational()) throw std::logic_error("normalization is not rational");
    return cache[k] = nk.to_rational();
  }
  throw std::logic_error("no framed solution available for calibration");
}

struct SolutionSummary {
  FixedPointLabel label;
  bool framed = false;
  CyclotomicNumber value;
};

struct AmplitudeResult {
  int k = 0, n = 0;
  Rational amplitude;
  Int catalan;
  bool match = false;
  double float_total = 0.0;  // raw sum, float backend only
  std::vector<SolutionSummary> per_solution;
};

// One scattering-equation solution's contribution PT^2 / det' Psi, oriented so
// that the solution sum is the amplitude.
template <class F>
F amplitude_summand(const Chart<F>& c, const KinematicPoint& s, const std::vector<int>& deleted,
                    const Rational& normalization) {
  F dp = reduced_determinant(c, s, deleted, normalization);
  if (ops::Field<F>::is_exact_zero(dp)) throw InvalidGauge("vanishing reduced determinant");
  F pt = parke_taylor(c);
  F value = pt * pt / dp;
  int d = (c.k - 1) * (c.n - c.k - 1);
  return (d % 2 == 0) ? value : -value;
}

inline AmplitudeResult amplitude_pk(int k, int n) {
  AmplitudeResult res;
  res.k = k;
  res.n = n;
  res.catalan = catalan_number(k, n - k);
  KinematicPoint s = pk_point(k, n);
  Rational norm = normalization_constant(k);
  CyclotomicNumber total(0);
  for (const auto& sol : solutions(k, n)) {
    Chart<CyclotomicNumber> c = solution_chart(sol.label, n);
    auto frame = find_frame(c);
    std::vector<int> deleted =
        frame ? frame_gauge(k, *frame) : greedy_gauge(null_space_matrix(c));
    CyclotomicNumber value = amplitude_summand(c, s, deleted, norm);
    total += value;
    res.per_solution.push_back({sol.label, frame.has_value(), value});
  }
  if (!total.is_rational()) throw std::logic_error("amplitude sum is not rational");
  res.amplitude = total.to_rational();
  res.match = (res.amplitude == Rational(res.catalan));
  return res;
}

// Continued-fraction rational reconstruction for the float backend.
inline Rational reconstruct_rational(double x, long den_bound = 1000000, double tol = 1e-6) {
  long pa = (long)std::floor(x), qa = 1;  // current convergent
  long pb = 1, qb = 0;                    // previous convergent
  double frac = x - std::floor(x);
  for (int step = 0; step < 64; ++step) {
    if (std::abs((double)pa / (double)qa - x) <= tol) return Rational(Int(pa), Int(qa));
    if (frac < 1e-15) break;
    double y = 1.0 / frac;
    long a = (long)std::floor(y);
    frac = y - std::floor(y);
    long pn = a * pa + pb, qn = a * qa + qb;
    if (qn > den_bound) break;
    pb = pa;
    qb = qa;
    pa = pn;
    qa = qn;
  }
  if (std::abs((double)pa / (double)qa - x) <= tol) return Rational(Int(pa), Int(qa));
  throw std::domain_error("rational reconstruction failed");
}

inline AmplitudeResult amplitude_pk_float(int k, int n) {
  AmplitudeResult res;
  res.k = k;
  res.n = n;
  res.catalan = catalan_number(k, n - k);
  KinematicPoint s = pk_point(k, n);
  Rational norm = normalization_constant(k);
  std::complex<double> total(0.0, 0.0);
  for (const auto& sol : solutions(k, n)) {
    Chart<std::complex<double>> c = solution_chart_float(sol.label, n);
    auto frame = find_frame(c);
    std::vector<int> deleted =
        frame ? frame_gauge(k, *frame) : greedy_gauge(null_space_matrix(c));
    std::complex<double> value = amplitude_summand(c, s, deleted, norm);
    total += value;
    res.per_solution.push_back({sol.label, frame.has_value(), CyclotomicNumber(0)});
  }
  if (std::abs(total.imag()) > 1e-6 * std::max(1.0, std::abs(total.real())))
    throw std::domain_error("float amplitude has a large imaginary part");
  res.float_total = total.real();
  // The float backend certifies agreement with the expected count to relative
  // 1e-6; only the exact backend proves equality.  Continued fractions are no
  // help once the absolute tolerance passes 1/2 (several integers qualify), so
  // reconstruct only when the certification fails.
  double target = res.catalan.convert_to<double>();
  res.match =
      std::abs(total.real() - target) <= 1e-6 * std::max(1.0, std::abs(target));
  res.amplitude = res.match ? Rational(res.catalan)
                            : reconstruct_rational(
                                  total.real(), 1000000,
                                  1e-6 * std::max(1.0, std::abs(total.real())));
  return res;
}

}  // namespace pk
