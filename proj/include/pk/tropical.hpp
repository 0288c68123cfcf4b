#pragma once
// Piecewise-linear (tropical) form of the scattering potential on the
// positive web chart, and exact evaluation of the resulting Laplace-type
// integral: symbolic web minors, their tropicalizations, the linearity
// regions of the potential, and per-region integrals summed into an
// amplitude together with a histogram of region values.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pk/kinematics.hpp"
#include "pk/ksubset.hpp"
#include "pk/lp.hpp"
#include "pk/matrix.hpp"
#include "pk/polyhedra.hpp"
#include "pk/rational.hpp"

namespace pk {

struct Divergent : std::runtime_error {
  explicit Divergent(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Symbolic polynomials over the web variables x_{i,j}, (i,j) in
// [1,k-1] x [1,n-k]; variable (i,j) sits at flat index (i-1)*(n-k) + (j-1).

using ExpVec = std::vector<int>;

struct SparsePoly {
  int vars = 0;
  std::map<ExpVec, Int> terms;

  explicit SparsePoly(int nvars = 0) : vars(nvars) {}

  static SparsePoly constant(int nvars, const Int& c) {
    SparsePoly p(nvars);
    if (c != 0) p.terms[ExpVec(nvars, 0)] = c;
    return p;
  }
  static SparsePoly monomial(int nvars, const ExpVec& e, const Int& c) {
    SparsePoly p(nvars);
    if (c != 0) p.terms[e] = c;
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  void add_term(const ExpVec& e, const Int& c) {
    if (c == 0) return;
    auto it = terms.emplace(e, Int(0)).first;
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    for (const auto& [e, c] : o.terms) add_term(e, c);
    return *this;
  }
  SparsePoly operator-() const {
    SparsePoly p(vars);
    for (const auto& [e, c] : terms) p.terms[e] = -c;
    return p;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) {
    a += b;
    return a;
  }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) {
    a += -b;
    return a;
  }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly p(a.vars);
    ExpVec e(a.vars);
    for (const auto& [ea, ca] : a.terms)
      for (const auto& [eb, cb] : b.terms) {
        for (int i = 0; i < a.vars; ++i) e[i] = ea[i] + eb[i];
        p.add_term(e, ca * cb);
      }
    return p;
  }
  bool operator==(const SparsePoly& o) const { return vars == o.vars && terms == o.terms; }
};

// The k x n web matrix: first k columns are the identity, row k of every
// later column is 1, and row r of column k+m is the sum over weakly
// decreasing position chains m >= j_1 >= ... >= j_{k-r} >= 1 of
// x_{1,j_1} x_{2,j_2} ... x_{k-r,j_{k-r}}.  Setting the first column of
// variables to 1 recovers the familiar partial-sum / staircase entries.
inline const std::vector<std::vector<SparsePoly>>& web_matrix(int k, int n) {
  if (k < 2 || n < k + 2) throw std::invalid_argument("web_matrix: need 2 <= k <= n-2");
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<std::vector<SparsePoly>>>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{k, n}];
  if (slot) return *slot;

  int vars = (k - 1) * (n - k);
  auto var_index = [&](int family, int pos) { return (family - 1) * (n - k) + (pos - 1); };
  auto w = std::make_unique<std::vector<std::vector<SparsePoly>>>(
      k, std::vector<SparsePoly>(n, SparsePoly(vars)));
  for (int a = 0; a < k; ++a) (*w)[a][a] = SparsePoly::constant(vars, 1);
  for (int m = 1; m <= n - k; ++m)
    for (int r = 1; r <= k; ++r) {
      SparsePoly entry(vars);
      int len = k - r;
      ExpVec e(vars, 0);
      std::function<void(int, int)> chains = [&](int t, int maxpos) {
        if (t > len) {
          entry.add_term(e, 1);
          return;
        }
        for (int j = 1; j <= maxpos; ++j) {
          ++e[var_index(t, j)];
          chains(t + 1, j);
          --e[var_index(t, j)];
        }
      };
      chains(1, m);
      (*w)[r - 1][k + m - 1] = std::move(entry);
    }
  slot = std::move(w);
  return *slot;
}

// Determinant by cofactor expansion along columns (sizes here are k <= 6).
inline SparsePoly poly_det(const std::vector<std::vector<SparsePoly>>& m) {
  int sz = static_cast<int>(m.size());
  int vars = m[0][0].vars;
  std::function<SparsePoly(const std::vector<int>&, int)> rec =
      [&](const std::vector<int>& rows, int col) -> SparsePoly {
    if (col == sz) return SparsePoly::constant(vars, 1);
    SparsePoly acc(vars);
    for (std::size_t p = 0; p < rows.size(); ++p) {
      if (m[rows[p]][col].is_zero()) continue;
      std::vector<int> rest;
      rest.reserve(rows.size() - 1);
      for (std::size_t q = 0; q < rows.size(); ++q)
        if (q != p) rest.push_back(rows[q]);
      SparsePoly term = m[rows[p]][col] * rec(rest, col + 1);
      acc += (p % 2 == 0) ? term : -term;
    }
    return acc;
  };
  std::vector<int> all(sz);
  for (int i = 0; i < sz; ++i) all[i] = i;
  return rec(all, 0);
}

// Maximal minor of the web matrix on the columns of J (sorted ascending).
inline SparsePoly web_minor(int k, int n, const Subset& J) {
  if (static_cast<int>(J.size()) != k) throw std::invalid_argument("web_minor: need a k-subset");
  const auto& w = web_matrix(k, n);
  std::vector<std::vector<SparsePoly>> sub(k, std::vector<SparsePoly>(k, SparsePoly((k - 1) * (n - k))));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) sub[r][c] = w[r][J[c] - 1];
  return poly_det(sub);
}

// A polynomial all of whose coefficients share one sign, stored with the
// sign split off.  Every web minor satisfies this; the constructor checks.
struct PositiveLaurent {
  int vars = 0;
  int sign = 1;
  std::map<ExpVec, Int> terms;  // coefficients, all positive

  explicit PositiveLaurent(const SparsePoly& p) : vars(p.vars) {
    if (p.terms.empty()) throw std::invalid_argument("PositiveLaurent: zero polynomial");
    sign = p.terms.begin()->second > 0 ? 1 : -1;
    for (const auto& [e, c] : p.terms) {
      if ((c > 0) != (sign > 0)) throw std::invalid_argument("PositiveLaurent: mixed signs");
      terms[e] = sign > 0 ? c : Int(-c);
    }
  }
};

// min over the exponent vectors of the support; coefficients are irrelevant
// in the tropical limit.
struct TropicalExpression {
  std::vector<ExpVec> forms;
};

inline TropicalExpression tropicalize(const PositiveLaurent& p) {
  TropicalExpression t;
  for (const auto& [e, c] : p.terms) t.forms.push_back(e);
  return t;
}

// Row sums P_i = sum_j x_{i,j} and staircase sums
// Q_j = sum_{t=0}^{k-1} prod_{i>t} x_{i,j} * prod_{i<=t} x_{i,j+1}.
inline SparsePoly web_P(int k, int n, int i) {
  int vars = (k - 1) * (n - k);
  SparsePoly p(vars);
  for (int j = 1; j <= n - k; ++j) {
    ExpVec e(vars, 0);
    e[(i - 1) * (n - k) + (j - 1)] = 1;
    p.add_term(e, 1);
  }
  return p;
}

inline SparsePoly web_Q(int k, int n, int j) {
  int vars = (k - 1) * (n - k);
  SparsePoly q(vars);
  for (int t = 0; t < k; ++t) {
    ExpVec e(vars, 0);
    for (int i = t + 1; i <= k - 1; ++i) ++e[(i - 1) * (n - k) + (j - 1)];
    for (int i = 1; i <= t; ++i) ++e[(i - 1) * (n - k) + j];
    q.add_term(e, 1);
  }
  return q;
}

// The product of the gap-window minors times the product of all web
// variables equals, up to a global sign, the product of the window minors
// times prod_i P_i * prod_j Q_j.  Both cyclic products run over all n
// starting positions, so coincident sorted subsets (as happens for n = 2k)
// enter with their multiplicity.
inline bool web_factorization_identity(int k, int n) {
  int vars = (k - 1) * (n - k);
  SparsePoly lhs = SparsePoly::constant(vars, 1);
  for (int a = 1; a <= n; ++a) lhs = lhs * web_minor(k, n, gap_window_subset(a, k, n));
  lhs = lhs * SparsePoly::monomial(vars, ExpVec(vars, 1), 1);
  SparsePoly rhs = SparsePoly::constant(vars, 1);
  for (int a = 1; a <= n; ++a) rhs = rhs * web_minor(k, n, window_subset(a, k, n));
  for (int i = 1; i <= k - 1; ++i) rhs = rhs * web_P(k, n, i);
  for (int j = 1; j <= n - k - 1; ++j) rhs = rhs * web_Q(k, n, j);
  return lhs == rhs || lhs == -rhs;
}

// ---------------------------------------------------------------------------
// The tropical potential of a conserving kinematic point: for each s_J != 0
// the term -s_J * trop(p_J), evaluated on the torus where one column of web
// variables is frozen to 1 (coordinates x~_{i,j} with j != fixed_column, so
// dim = (k-1)(n-k-1)).  Single-support terms fold into the linear part.

struct MinTerm {
  Rational weight;
  std::vector<std::vector<Rational>> forms;  // distinct linear forms
};

struct TropicalIntegrand {
  int k = 0, n = 0, dim = 0, fixed_column = 1;
  std::vector<Rational> linear;
  std::vector<MinTerm> mins;
};

inline TropicalIntegrand build_integrand(const KinematicPoint& s, int fixed_column = 1) {
  int k = s.k(), n = s.n();
  if (k < 2 || n < k + 2) throw std::invalid_argument("build_integrand: need 2 <= k <= n-2");
  if (fixed_column < 1 || fixed_column > n - k)
    throw std::invalid_argument("build_integrand: fixed column out of range");
  if (!s.conserves())
    throw std::invalid_argument("build_integrand: kinematics must conserve momentum");
  int d = (k - 1) * (n - k - 1);
  auto reduced_index = [&](int i, int j) {
    return (i - 1) * (n - k - 1) + (j < fixed_column ? j - 1 : j - 2);
  };
  TropicalIntegrand F;
  F.k = k;
  F.n = n;
  F.dim = d;
  F.fixed_column = fixed_column;
  F.linear.assign(d, Rational(0));
  for (const auto& [J, sJ] : s.values()) {
    PositiveLaurent minor(web_minor(k, n, J));
    std::set<std::vector<Rational>> forms;
    for (const auto& [e, c] : minor.terms) {
      std::vector<Rational> f(d, Rational(0));
      for (int i = 1; i <= k - 1; ++i)
        for (int j = 1; j <= n - k; ++j) {
          if (j == fixed_column) continue;
          int expo = e[(i - 1) * (n - k) + (j - 1)];
          if (expo != 0) f[reduced_index(i, j)] = expo;
        }
      forms.insert(std::move(f));
    }
    Rational weight = -sJ;
    if (forms.size() == 1) {
      const auto& f = *forms.begin();
      for (int c = 0; c < d; ++c) F.linear[c] += weight * f[c];
    } else {
      MinTerm t;
      t.weight = weight;
      t.forms.assign(forms.begin(), forms.end());
      F.mins.push_back(std::move(t));
    }
  }
  return F;
}

inline Rational evaluate_integrand(const TropicalIntegrand& F, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != F.dim)
    throw std::invalid_argument("evaluate_integrand: dimension mismatch");
  Rational v = 0;
  for (int c = 0; c < F.dim; ++c) v += F.linear[c] * x[c];
  for (const auto& t : F.mins) {
    bool first = true;
    Rational best;
    for (const auto& f : t.forms) {
      Rational fx = 0;
      for (int c = 0; c < F.dim; ++c) fx += f[c] * x[c];
      if (first || fx < best) {
        best = fx;
        first = false;
      }
    }
    v += t.weight * best;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Linearity regions: one full-dimensional cone per simultaneous argmin
// choice that is strictly feasible, certified by an exact interior point.

struct LinearityRegion {
  std::vector<std::vector<Rational>> constraints;  // primitive rows r, r.x <= 0
  std::vector<Rational> interior;                  // r.x < 0 for every row
  std::vector<Rational> form;                      // the potential on this region
};

inline std::vector<LinearityRegion> enumerate_regions(const TropicalIntegrand& F) {
  int d = F.dim;
  int nm = static_cast<int>(F.mins.size());
  std::vector<LinearityRegion> out;
  std::set<std::vector<std::vector<Rational>>> seen;
  std::vector<int> choice(nm, 0);
  std::vector<std::vector<Rational>> rows;

  std::function<void(int, std::vector<Rational>)> rec = [&](int level,
                                                            std::vector<Rational> witness) {
    if (level == nm) {
      std::set<std::vector<Rational>> canon;
      for (const auto& r : rows) canon.insert(primitive(r));
      std::vector<std::vector<Rational>> cvec(canon.begin(), canon.end());
      if (!seen.insert(cvec).second) return;
      LinearityRegion reg;
      reg.constraints = std::move(cvec);
      reg.interior = std::move(witness);
      reg.form = F.linear;
      for (int t = 0; t < nm; ++t)
        for (int c = 0; c < d; ++c) reg.form[c] += F.mins[t].weight * F.mins[t].forms[choice[t]][c];
      out.push_back(std::move(reg));
      return;
    }
    const auto& forms = F.mins[level].forms;
    for (int pick = 0; pick < static_cast<int>(forms.size()); ++pick) {
      std::size_t mark = rows.size();
      bool witness_ok = true;
      for (int other = 0; other < static_cast<int>(forms.size()); ++other) {
        if (other == pick) continue;
        std::vector<Rational> r(d);
        Rational at = 0;
        for (int c = 0; c < d; ++c) {
          r[c] = forms[pick][c] - forms[other][c];
          at += r[c] * witness[c];
        }
        if (at >= 0) witness_ok = false;
        rows.push_back(std::move(r));
      }
      choice[level] = pick;
      if (witness_ok) {
        rec(level + 1, witness);
      } else {
        Matrix<Rational> B(static_cast<int>(rows.size()), d);
        for (std::size_t i = 0; i < rows.size(); ++i)
          for (int c = 0; c < d; ++c) B(static_cast<int>(i), c) = rows[i][c];
        auto inter = cone_strict_interior(B);
        if (inter) rec(level + 1, *inter);
      }
      rows.resize(mark);
    }
  };
  rec(0, std::vector<Rational>(d, Rational(0)));
  return out;
}

// ---------------------------------------------------------------------------
// Exact integral of exp(form . x) over a region.  The cone is triangulated
// through a cross-section, and each simplicial piece contributes
// |det(u_1..u_d)| / prod_i(-form(u_i)) over its primitive extreme rays.
// Rays annihilated by the form are handled by a deformation form + eps*mu
// expanded as a truncated Laurent series in eps: the value is the eps^0
// coefficient, and any surviving pole reports divergence.

inline Rational integrate_region(const LinearityRegion& region) {
  int d = static_cast<int>(region.form.size());
  Matrix<Rational> B(static_cast<int>(region.constraints.size()), d);
  for (std::size_t i = 0; i < region.constraints.size(); ++i)
    for (int c = 0; c < d; ++c) B(static_cast<int>(i), c) = region.constraints[i][c];
  ConeRep cone = cone_rays(B);
  if (!cone.lineality.empty()) throw Divergent("region contains a line");
  int nr = static_cast<int>(cone.rays.size());
  if (nr < d) throw std::logic_error("integrate_region: region not full-dimensional");

  std::vector<Rational> phi(nr);
  bool need_eps = false;
  for (int i = 0; i < nr; ++i) {
    Rational ell = 0;
    for (int c = 0; c < d; ++c) ell += region.form[c] * cone.rays[i][c];
    phi[i] = -ell;
    if (phi[i] < 0) throw Divergent("exponential grows along an extreme ray");
    if (phi[i] == 0) need_eps = true;
  }

  std::vector<std::vector<int>> pieces;
  if (nr == d) {
    std::vector<int> all(d);
    for (int i = 0; i < d; ++i) all[i] = i;
    pieces.push_back(all);
  } else {
    auto w = separating_functional(cone.rays);
    if (!w) throw std::logic_error("integrate_region: no cross-section for a pointed cone");
    Matrix<Rational> wrow(1, d);
    for (int c = 0; c < d; ++c) wrow(0, c) = (*w)[c];
    auto K = kernel_basis(wrow);  // d-1 independent directions in the section
    int q = static_cast<int>(K.size());
    Matrix<Rational> G(q, q);
    for (int r = 0; r < q; ++r)
      for (int s = 0; s < q; ++s) {
        Rational dot = 0;
        for (int c = 0; c < d; ++c) dot += K[r][c] * K[s][c];
        G(r, s) = dot;
      }
    LinearSolver<Rational> gram(G);
    std::vector<std::vector<Rational>> local;
    std::vector<Rational> v0(d);
    for (int i = 0; i < nr; ++i) {
      Rational sc = 0;
      for (int c = 0; c < d; ++c) sc -= (*w)[c] * cone.rays[i][c];
      std::vector<Rational> v(d);
      for (int c = 0; c < d; ++c) v[c] = cone.rays[i][c] / sc;
      if (i == 0) v0 = v;
      std::vector<Rational> rhs(q);
      for (int r = 0; r < q; ++r) {
        Rational dot = 0;
        for (int c = 0; c < d; ++c) dot += K[r][c] * (v[c] - v0[c]);
        rhs[r] = dot;
      }
      local.push_back(gram.solve(rhs));
    }
    pieces = convex_hull(local).simplices;
  }

  long t = 1;
  if (need_eps) {
    for (;; ++t) {
      bool ok = true;
      for (int i = 0; i < nr && ok; ++i) {
        if (phi[i] != 0) continue;
        Rational mu = 0, p = 1;
        for (int c = 0; c < d; ++c) {
          mu += p * cone.rays[i][c];
          p *= t;
        }
        ok = mu != 0;
      }
      if (ok) break;
    }
  }
  auto mu_of = [&](const std::vector<Rational>& u) {
    Rational mu = 0, p = 1;
    for (int c = 0; c < d; ++c) {
      mu += p * u[c];
      p *= t;
    }
    return mu;
  };

  // Laurent coefficients of eps^{e-d} at index e, e = 0..d.
  std::vector<Rational> total(d + 1, Rational(0));
  for (const auto& piece : pieces) {
    Matrix<Rational> U(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) U(r, c) = cone.rays[piece[c]][r];
    Rational det = det_exact(U);
    if (det == 0) throw std::logic_error("integrate_region: degenerate triangulation piece");
    if (det < 0) det = -det;
    std::vector<Rational> series(d + 1, Rational(0));
    series[d] = det;
    for (int c = 0; c < d; ++c) {
      const Rational& ph = phi[piece[c]];
      std::vector<Rational> next(d + 1, Rational(0));
      if (ph > 0) {
        Rational mu = mu_of(cone.rays[piece[c]]);
        for (int e = 0; e <= d; ++e) {
          Rational acc = 0, fac = Rational(1) / ph;
          for (int b = 0; e - b >= 0; ++b) {
            acc += series[e - b] * fac;
            fac *= mu / ph;
          }
          next[e] = acc;
        }
      } else {
        Rational mu = mu_of(cone.rays[piece[c]]);
        if (series[0] != 0) throw std::logic_error("integrate_region: pole deeper than eps^-dim");
        for (int e = 0; e < d; ++e) next[e] = series[e + 1] * (Rational(-1) / mu);
      }
      series = std::move(next);
    }
    for (int e = 0; e <= d; ++e) total[e] += series[e];
  }
  for (int e = 0; e < d; ++e)
    if (total[e] != 0) throw Divergent("regularized integral keeps an eps pole");
  return total[d];
}

// ---------------------------------------------------------------------------

struct TropicalAmplitude {
  Rational total;
  std::map<Rational, long> histogram;  // region value -> number of regions
  std::vector<LinearityRegion> regions;
};

inline TropicalAmplitude evaluate_amplitude(const KinematicPoint& s, int fixed_column = 1) {
  TropicalIntegrand F = build_integrand(s, fixed_column);
  TropicalAmplitude out;
  out.total = 0;
  out.regions = enumerate_regions(F);
  for (const auto& region : out.regions) {
    Rational v = integrate_region(region);
    out.total += v;
    ++out.histogram[v];
  }
  return out;
}

}  // namespace pk
