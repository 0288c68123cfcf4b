#pragma once

// Dense matrices over an exact scalar (Rational or CyclotomicNumber) with
// fraction-free determinants, exact linear solves and rank.  Pivoting is
// "first nonzero in fixed row order" so results are deterministic; floating
// scalars switch to largest-magnitude pivots for stability.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pk {

struct SingularSystem : std::runtime_error {
  SingularSystem() : std::runtime_error("singular linear system") {}
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T(0)) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  // Keeps the listed rows/columns, in the order given.
  Matrix select(const std::vector<int>& rows, const std::vector<int>& cols) const {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = (*this)(rows[i], cols[j]);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == T(0)) continue;
        for (int j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
      }
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

namespace pivot {

template <class T>
int choose(const Matrix<T>& m, int col, int from) {
  for (int r = from; r < m.rows(); ++r)
    if (!(m(r, col) == T(0))) return r;
  return -1;
}

inline int choose(const Matrix<std::complex<double>>& m, int col, int from) {
  int best = -1;
  double mag = 0.0;
  for (int r = from; r < m.rows(); ++r) {
    double v = std::abs(m(r, col));
    if (v > mag) {
      mag = v;
      best = r;
    }
  }
  return best;
}

}  // namespace pivot

// Bareiss fraction-free elimination.  All divisions are exact, intermediate
// entries are minors of the input.
template <class T>
T det_exact(Matrix<T> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  int n = m.rows();
  if (n == 0) return T(1);
  T prev = T(1);
  bool flip = false;
  for (int k = 0; k + 1 < n; ++k) {
    int piv = pivot::choose(m, k, k);
    if (piv < 0) return T(0);
    if (piv != k) {
      m.swap_rows(piv, k);
      flip = !flip;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return flip ? -d : d;
}

// Row echelon reduction used by rank and kernel computations; returns the
// pivot columns.  The matrix is modified in place (Gauss, exact division).
template <class T>
std::vector<int> echelonize(Matrix<T>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!(m(i, c) == T(0))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    m.swap_rows(piv, r);
    T inv = T(1) / m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) * inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == T(0)) continue;
      T f = m(i, c);
      for (int j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
int rank_exact(Matrix<T> m) {
  return static_cast<int>(echelonize(m).size());
}

// LU-style factorization (first-nonzero partial pivoting) cached for reuse
// against many right-hand sides.
template <class T>
class LinearSolver {
 public:
  explicit LinearSolver(Matrix<T> a) : lu_(std::move(a)) {
    if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LinearSolver needs a square matrix");
    int n = lu_.rows();
    perm_.resize(n);
    for (int i = 0; i < n; ++i) perm_[i] = i;
    for (int k = 0; k < n; ++k) {
      int piv = pivot::choose(lu_, k, k);
      if (piv < 0) throw SingularSystem();
      if (piv != k) {
        lu_.swap_rows(piv, k);
        std::swap(perm_[piv], perm_[k]);
      }
      T inv = T(1) / lu_(k, k);
      for (int i = k + 1; i < n; ++i) {
        if (lu_(i, k) == T(0)) continue;
        T f = lu_(i, k) * inv;
        lu_(i, k) = f;  // store the multiplier
        for (int j = k + 1; j < n; ++j) lu_(i, j) = lu_(i, j) - f * lu_(k, j);
      }
    }
  }

  std::vector<T> solve(const std::vector<T>& b) const {
    int n = lu_.rows();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("rhs size mismatch");
    std::vector<T> y(n);
    for (int i = 0; i < n; ++i) {
      T s = b[perm_[i]];
      for (int j = 0; j < i; ++j) s = s - lu_(i, j) * y[j];
      y[i] = s;
    }
    std::vector<T> x(n);
    for (int i = n - 1; i >= 0; --i) {
      T s = y[i];
      for (int j = i + 1; j < n; ++j) s = s - lu_(i, j) * x[j];
      x[i] = s / lu_(i, i);
    }
    return x;
  }

 private:
  Matrix<T> lu_;
  std::vector<int> perm_;
};

template <class T>
std::vector<T> solve_linear_exact(const Matrix<T>& a, const std::vector<T>& b) {
  return LinearSolver<T>(a).solve(b);
}

}  // namespace pk
