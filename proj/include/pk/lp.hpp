#pragma once
// Exact linear programming over the rationals.  Dense two-phase tableau
// simplex with Bland's rule: with exact arithmetic there is no need for
// scaling or tolerance heuristics, and Bland guarantees termination.  The
// programs solved here are tiny (tens of rows and columns), so the textbook
// algorithm is the right tool.

#include <optional>
#include <stdexcept>
#include <vector>

#include "pk/matrix.hpp"
#include "pk/rational.hpp"

namespace pk {

struct LpResult {
  enum Status { Optimal, Unbounded, Infeasible };
  Status status = Infeasible;
  Rational value;          // objective at the optimum (when status == Optimal)
  std::vector<Rational> x; // optimal structural variables
};

namespace lp_detail {

class Tableau {
 public:
  Tableau(int rows, int cols) : t_(rows, std::vector<Rational>(cols)) {}
  std::vector<Rational>& operator[](int r) { return t_[r]; }
  const std::vector<Rational>& operator[](int r) const { return t_[r]; }
  int rows() const { return static_cast<int>(t_.size()); }
  int cols() const { return static_cast<int>(t_[0].size()); }

  void pivot(int pr, int pc) {
    Rational inv = Rational(1) / t_[pr][pc];
    for (auto& v : t_[pr]) v *= inv;
    for (int r = 0; r < rows(); ++r) {
      if (r == pr) continue;
      Rational f = t_[r][pc];
      if (f == 0) continue;
      for (int c = 0; c < cols(); ++c) t_[r][c] -= f * t_[pr][c];
    }
  }

 private:
  std::vector<std::vector<Rational>> t_;
};

// One round of Bland's rule on a feasible tableau.  The objective row is the
// last row and holds reduced costs; `avoid` is a column that must never enter
// (the retired phase-one artificial).  Returns false when the current basis
// is optimal, throws on unboundedness.
inline bool bland_step(Tableau& t, std::vector<int>& basis, int rhs, int avoid,
                       bool* unbounded) {
  int obj = t.rows() - 1;
  int enter = -1;
  for (int j = 0; j < rhs; ++j) {
    if (j == avoid) continue;
    if (t[obj][j] > 0) { enter = j; break; }
  }
  if (enter < 0) return false;
  int leave = -1;
  Rational best;
  for (int i = 0; i < obj; ++i) {
    if (t[i][enter] <= 0) continue;
    Rational ratio = t[i][rhs] / t[i][enter];
    if (leave < 0 || ratio < best ||
        (ratio == best && basis[i] < basis[leave])) {
      best = ratio;
      leave = i;
    }
  }
  if (leave < 0) {
    *unbounded = true;
    return false;
  }
  t.pivot(leave, enter);
  basis[leave] = enter;
  return true;
}

}  // namespace lp_detail

// Maximize c.x subject to A x <= b, x >= 0.
inline LpResult lp_maximize(const Matrix<Rational>& A,
                            const std::vector<Rational>& b,
                            const std::vector<Rational>& c) {
  int m = A.rows(), n = A.cols();
  if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n)
    throw std::invalid_argument("lp_maximize: dimension mismatch");

  // Columns: n structural, m slacks, one artificial, rhs.
  int art = n + m, rhs = n + m + 1;
  lp_detail::Tableau t(m + 1, rhs + 1);
  std::vector<int> basis(m);
  bool need_phase1 = false;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = A(i, j);
    t[i][n + i] = 1;
    t[i][art] = -1;
    t[i][rhs] = b[i];
    basis[i] = n + i;
    if (b[i] < 0) need_phase1 = true;
  }

  bool unbounded = false;
  if (need_phase1) {
    t[m][art] = -1;  // maximize -x0
    int worst = 0;
    for (int i = 1; i < m; ++i)
      if (t[i][rhs] < t[worst][rhs]) worst = i;
    t.pivot(worst, art);
    basis[worst] = art;
    while (lp_detail::bland_step(t, basis, rhs, -1, &unbounded)) {}
    if (unbounded) throw std::logic_error("lp_maximize: phase one unbounded");
    if (t[m][rhs] != 0) {  // objective row rhs = -(value of -x0) = x0
      LpResult r;
      r.status = LpResult::Infeasible;
      return r;
    }
    for (int i = 0; i < m; ++i) {
      if (basis[i] != art) continue;
      // Artificial basic at zero: pivot it out on any usable column, or leave
      // it pinned in a vacuous row (the column is barred from re-entering).
      for (int j = 0; j < n + m; ++j) {
        if (t[i][j] != 0) {
          t.pivot(i, j);
          basis[i] = j;
          break;
        }
      }
    }
  }

  // Install the real objective and cancel the basic columns.
  for (int j = 0; j <= rhs; ++j) t[m][j] = 0;
  for (int j = 0; j < n; ++j) t[m][j] = c[j];
  for (int i = 0; i < m; ++i) {
    Rational f = t[m][basis[i]];
    if (f == 0) continue;
    for (int j = 0; j <= rhs; ++j) t[m][j] -= f * t[i][j];
  }

  while (lp_detail::bland_step(t, basis, rhs, art, &unbounded)) {}
  LpResult r;
  if (unbounded) {
    r.status = LpResult::Unbounded;
    return r;
  }
  r.status = LpResult::Optimal;
  r.value = -t[m][rhs];
  r.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) r.x[basis[i]] = t[i][rhs];
  return r;
}

// Strict interior point of the cone {x : B x <= 0}: returns x with
// B x <= -1 componentwise (homogeneity lets any strictly feasible point be
// rescaled to that), or nullopt when the cone has empty interior.  Solved as
// max delta subject to B(u - v) + delta * 1 <= 0, delta <= 1, u, v >= 0;
// the interior is nonempty exactly when the optimum is 1.
inline std::optional<std::vector<Rational>> cone_strict_interior(
    const Matrix<Rational>& B) {
  int m = B.rows(), d = B.cols();
  if (m == 0) return std::vector<Rational>(d, Rational(0));
  Matrix<Rational> A(m + 1, 2 * d + 1);
  std::vector<Rational> b(m + 1, Rational(0)), c(2 * d + 1, Rational(0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) {
      A(i, j) = B(i, j);
      A(i, d + j) = -B(i, j);
    }
    A(i, 2 * d) = 1;
  }
  A(m, 2 * d) = 1;
  b[m] = 1;
  c[2 * d] = 1;
  LpResult r = lp_maximize(A, b, c);
  if (r.status != LpResult::Optimal || r.value != 1) return std::nullopt;
  std::vector<Rational> x(d);
  for (int j = 0; j < d; ++j) x[j] = r.x[j] - r.x[d + j];
  return x;
}

// A functional w with w.u <= -1 for every given generator, certifying that
// the cone spanned by them is pointed and providing a cross-section
// hyperplane {w.x = -1}.  nullopt when no such w exists (cone not pointed).
inline std::optional<std::vector<Rational>> separating_functional(
    const std::vector<std::vector<Rational>>& rays) {
  if (rays.empty()) return std::nullopt;
  int m = static_cast<int>(rays.size());
  int d = static_cast<int>(rays[0].size());
  Matrix<Rational> A(m, 2 * d);
  std::vector<Rational> b(m, Rational(-1)), c(2 * d, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < d; ++j) {
      A(i, j) = rays[i][j];
      A(i, d + j) = -rays[i][j];
    }
  LpResult r = lp_maximize(A, b, c);
  if (r.status != LpResult::Optimal) return std::nullopt;
  std::vector<Rational> w(d);
  for (int j = 0; j < d; ++j) w[j] = r.x[j] - r.x[d + j];
  return w;
}

}  // namespace pk
