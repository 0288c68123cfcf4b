#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pk/ksubset.hpp"
#include "pk/matrix.hpp"
#include "pk/rational.hpp"

namespace pk {

// A point of the kinematic space K(k,n): Mandelstam values s_J indexed by
// k-subsets, with momentum conservation sum_{J : a in J} s_J = 0 for every
// label a.  Stored sparsely; absent subsets are zero.
class KinematicPoint {
 public:
  KinematicPoint(int k, int n) : k_(k), n_(n) {
    if (k < 1 || n < 2 || k > n) throw std::invalid_argument("KinematicPoint: bad (k,n)");
  }

  int k() const { return k_; }
  int n() const { return n_; }
  const std::map<Subset, Rational>& values() const { return s_; }

  Rational value(const Subset& J) const {
    auto it = s_.find(J);
    return it == s_.end() ? Rational(0) : it->second;
  }

  void set(const Subset& J, const Rational& v) {
    if ((int)J.size() != k_) throw std::invalid_argument("KinematicPoint::set: wrong subset size");
    check_subset(J, n_);
    if (v == 0)
      s_.erase(J);
    else
      s_[J] = v;
  }

  bool conserves() const {
    std::vector<Rational> sums(n_ + 1, Rational(0));
    for (const auto& [J, v] : s_)
      for (int a : J) sums[a] += v;
    for (int a = 1; a <= n_; ++a)
      if (sums[a] != 0) return false;
    return true;
  }

  bool operator==(const KinematicPoint& o) const {
    return k_ == o.k_ && n_ == o.n_ && s_ == o.s_;
  }

 private:
  int k_, n_;
  std::map<Subset, Rational> s_;
};

// L_j(x) = x_{j+1} + 2 x_{j+2} + ... + (n-1) x_{j-1}, indices cyclic mod n.
inline Rational L_functional(int j, const std::vector<Rational>& x) {
  int n = (int)x.size();
  Rational acc(0);
  for (int r = 1; r < n; ++r) acc += Rational(r) * x[mod1(j + r, n) - 1];
  return acc;
}

namespace detail {

// Integer core: sum over a in J of the coefficient of x_a in L_j, i.e. (a-j) mod n.
inline long l_weight(const Subset& J, int j, int n) {
  long acc = 0;
  for (int a : J) acc += ((a - j) % n + n) % n;
  return acc;
}

inline long min_l_gap(const Subset& I, const Subset& J, int n) {
  long best = 0;
  bool first = true;
  for (int j = 1; j <= n; ++j) {
    long v = l_weight(I, j, n) - l_weight(J, j, n);
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  return best;
}

}  // namespace detail

// rho_v(x) = (1/n) min_j L_j(x - v) for integer lattice vectors v, x.
inline Rational rho(const std::vector<long>& v, const std::vector<long>& x) {
  if (v.size() != x.size() || v.empty()) throw std::invalid_argument("rho: size mismatch");
  int n = (int)v.size();
  long best = 0;
  bool first = true;
  for (int j = 1; j <= n; ++j) {
    long acc = 0;
    for (int t = 1; t <= n; ++t) acc += (long)(((t - j) % n + n) % n) * (x[t - 1] - v[t - 1]);
    if (first || acc < best) {
      best = acc;
      first = false;
    }
  }
  return Rational(Int(best), Int(n));
}

// Blade height vector h_J localized to the vertices of the hypersimplex:
// coefficient of e^I is (1/n) min_j L_j(e_I - e_J).
inline std::map<Subset, Rational> height_vector(int k, int n, const Subset& J) {
  if ((int)J.size() != k) throw std::invalid_argument("height_vector: wrong subset size");
  check_subset(J, n);
  std::map<Subset, Rational> h;
  for (const Subset& I : all_ksubsets(n, k)) {
    long m = detail::min_l_gap(I, J, n);
    if (m != 0) h[I] = Rational(Int(m), Int(n));
  }
  return h;
}

// Planar basis functional eta_J(s) = -h_J . s.
inline Rational eta(const KinematicPoint& s, const Subset& J) {
  if ((int)J.size() != s.k()) throw std::invalid_argument("eta: wrong subset size");
  int n = s.n();
  check_subset(J, n);
  Rational acc(0);
  for (const auto& [I, v] : s.values()) {
    long m = detail::min_l_gap(I, J, n);
    if (m != 0) acc += Rational(Int(m), Int(n)) * v;
  }
  return -acc;
}

namespace detail {

// Square system in the s_J unknowns: n momentum-conservation rows followed by
// one eta row per nonfrozen subset.  The factorization is kept for reuse.
struct EtaSystem {
  const SubsetTable* table;
  std::unique_ptr<LinearSolver<Rational>> solver;
};

inline const EtaSystem& eta_system(int k, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<EtaSystem>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{k, n}];
  if (!slot) {
    auto sys = std::make_unique<EtaSystem>();
    sys->table = &subset_table(k, n);
    const auto& tab = *sys->table;
    int m = (int)tab.subsets.size();
    if ((int)tab.nonfrozen.size() != m - n)
      throw std::logic_error("eta_system: unexpected frozen count");
    // Precompute the L weights once: w[i][j] = sum_{a in subsets[i]} (a-j) mod n.
    std::vector<std::vector<long>> w(m, std::vector<long>(n + 1, 0));
    for (int i = 0; i < m; ++i)
      for (int j = 1; j <= n; ++j) w[i][j] = l_weight(tab.subsets[i], j, n);
    Matrix<Rational> A(m, m);
    for (int a = 1; a <= n; ++a)
      for (int i = 0; i < m; ++i)
        if (std::binary_search(tab.subsets[i].begin(), tab.subsets[i].end(), a))
          A(a - 1, i) = Rational(1);
    for (int r = 0; r < (int)tab.nonfrozen.size(); ++r) {
      int jrow = tab.nonfrozen[r];
      for (int i = 0; i < m; ++i) {
        long best = w[i][1] - w[jrow][1];
        for (int j = 2; j <= n; ++j) best = std::min(best, w[i][j] - w[jrow][j]);
        if (best != 0) A(n + r, i) = -Rational(Int(best), Int(n));
      }
    }
    sys->solver = std::make_unique<LinearSolver<Rational>>(A);
    slot = std::move(sys);
  }
  return *slot;
}

}  // namespace detail

// Unique conserving point with prescribed eta values on the nonfrozen subsets.
inline KinematicPoint solve_eta_system(int k, int n, const std::map<Subset, Rational>& targets) {
  const auto& sys = detail::eta_system(k, n);
  const auto& tab = *sys.table;
  if (targets.size() != tab.nonfrozen.size())
    throw std::invalid_argument("solve_eta_system: need one target per nonfrozen subset");
  int m = (int)tab.subsets.size();
  std::vector<Rational> rhs(m, Rational(0));
  for (int r = 0; r < (int)tab.nonfrozen.size(); ++r) {
    const Subset& J = tab.subsets[tab.nonfrozen[r]];
    auto it = targets.find(J);
    if (it == targets.end())
      throw std::invalid_argument("solve_eta_system: missing target for " + subset_key(J));
    rhs[n + r] = it->second;
  }
  std::vector<Rational> x = sys.solver->solve(rhs);
  KinematicPoint p(k, n);
  for (int i = 0; i < m; ++i)
    if (x[i] != 0) p.set(tab.subsets[i], x[i]);
  return p;
}

// Closed form of the planar kinematics point, valid for n > 2k: +1 on the n
// cyclic windows, -1 on the n one-step-gap windows, zero elsewhere.
inline KinematicPoint pk_closed_form(int k, int n) {
  if (n <= 2 * k) throw std::invalid_argument("pk_closed_form: requires n > 2k");
  KinematicPoint p(k, n);
  for (int i = 1; i <= n; ++i) {
    p.set(window_subset(i, k, n), Rational(1));
    p.set(gap_window_subset(i, k, n), Rational(-1));
  }
  return p;
}

// Planar kinematics point: the unique conserving s with eta_J(s) = 1 on every
// nonfrozen subset.  For n > 2k this equals the closed form above.
inline KinematicPoint pk_point(int k, int n) {
  if (k < 2 || k > n - 2) throw std::invalid_argument("pk_point: need 2 <= k <= n-2");
  if (n > 2 * k) return pk_closed_form(k, n);
  const auto& tab = subset_table(k, n);
  std::map<Subset, Rational> targets;
  for (int idx : tab.nonfrozen) targets[tab.subsets[idx]] = Rational(1);
  return solve_eta_system(k, n, targets);
}

// Relabel j -> n+1-j on all subsets.
inline KinematicPoint flip_point(const KinematicPoint& s) {
  KinematicPoint out(s.k(), s.n());
  for (const auto& [J, v] : s.values()) out.set(flip_subset(J, s.n()), v);
  return out;
}

// Conical kinematics functionals.  For a nonfrozen J = {j_1 < ... < j_k}:
//   gamma_J  (alpha is (k-1) x (n-k+1)):  sum_l alpha_{l, j_l-l+1} - alpha_{l, j_{l+1}-l}
//   gamma'_J (alpha is (k-1) x (n-k)):    sum_i sum_{j=j_i-i+1}^{j_{i+1}-i-1} alpha_{i,j}
inline Rational gamma_functional(int k, int n, const Matrix<Rational>& alpha, const Subset& J,
                                 bool primed) {
  if ((int)J.size() != k) throw std::invalid_argument("gamma_functional: wrong subset size");
  check_subset(J, n);
  if (is_frozen(J, n)) throw std::invalid_argument("gamma_functional: frozen subset");
  int cols = primed ? n - k : n - k + 1;
  if (alpha.rows() != k - 1 || alpha.cols() != cols)
    throw std::invalid_argument("gamma_functional: alpha has wrong shape");
  Rational acc(0);
  for (int i = 1; i <= k - 1; ++i) {
    if (primed) {
      for (int j = J[i - 1] - i + 1; j <= J[i] - i - 1; ++j) acc += alpha(i - 1, j - 1);
    } else {
      acc += alpha(i - 1, J[i - 1] - i) - alpha(i - 1, J[i] - i - 1);
    }
  }
  return acc;
}

inline KinematicPoint conical_point(int k, int n, const Matrix<Rational>& alpha, bool primed) {
  const auto& tab = subset_table(k, n);
  std::map<Subset, Rational> targets;
  for (int idx : tab.nonfrozen) {
    const Subset& J = tab.subsets[idx];
    targets[J] = gamma_functional(k, n, alpha, J, primed);
  }
  return solve_eta_system(k, n, targets);
}

}  // namespace pk
