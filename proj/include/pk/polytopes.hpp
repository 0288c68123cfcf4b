#pragma once
// Lattice polytopes attached to the planar kinematics point: the bounding
// polytope of eta-deformations with its facet description, and the rank-graded
// root polytopes given by their vertices.  Conversions between the two
// descriptions, f-vectors from vertex-facet incidence, relative volumes in the
// canonical unimodular chart, and the duality / Newton-polytope /
// graded-embedding checks connecting the two families.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pk/kinematics.hpp"
#include "pk/ksubset.hpp"
#include "pk/lp.hpp"
#include "pk/matrix.hpp"
#include "pk/polyhedra.hpp"
#include "pk/rational.hpp"
#include "pk/tropical.hpp"

namespace pk {

// A bounded polyhedron with both exact descriptions.  Inequalities are pairs
// (a, b) meaning a.x + b >= 0.  When families > 0 the polytope lives in the
// subspace where each of the "families" consecutive blocks of "cols" ambient
// coordinates sums to zero; the canonical chart drops the last coordinate of
// every block (a unimodular change for the induced lattice).  families == 0
// means no implicit equalities and the chart is the identity.
struct ExactPolyhedron {
  int ambient = 0;
  int families = 0, cols = 0;
  std::vector<std::pair<std::vector<Rational>, Rational>> inequalities;
  std::vector<std::vector<Rational>> vertices;
  std::vector<std::vector<Rational>> rays;
};

using FVector = std::vector<long>;  // (f_{-1}, f_0, ..., f_d)

namespace poly_detail {

inline int chart_dim(const ExactPolyhedron& P) {
  return P.families > 0 ? P.families * (P.cols - 1) : P.ambient;
}

inline std::vector<Rational> to_chart(const ExactPolyhedron& P, const std::vector<Rational>& x) {
  if (P.families == 0) return x;
  std::vector<Rational> y;
  y.reserve(chart_dim(P));
  for (int i = 0; i < P.families; ++i) {
    Rational sum = 0;
    for (int j = 0; j < P.cols; ++j) sum += x[i * P.cols + j];
    if (sum != 0) throw std::invalid_argument("to_chart: point outside the block subspace");
    for (int j = 0; j + 1 < P.cols; ++j) y.push_back(x[i * P.cols + j]);
  }
  return y;
}

inline std::vector<Rational> from_chart(const ExactPolyhedron& P, const std::vector<Rational>& y) {
  if (P.families == 0) return y;
  std::vector<Rational> x(P.ambient);
  for (int i = 0; i < P.families; ++i) {
    Rational sum = 0;
    for (int j = 0; j + 1 < P.cols; ++j) {
      x[i * P.cols + j] = y[i * (P.cols - 1) + j];
      sum += x[i * P.cols + j];
    }
    x[i * P.cols + (P.cols - 1)] = -sum;
  }
  return x;
}

// Inequality row rewritten in chart coordinates (offset unchanged).
inline std::vector<Rational> chart_row(const ExactPolyhedron& P, const std::vector<Rational>& a) {
  if (P.families == 0) return a;
  std::vector<Rational> r;
  r.reserve(chart_dim(P));
  for (int i = 0; i < P.families; ++i)
    for (int j = 0; j + 1 < P.cols; ++j)
      r.push_back(a[i * P.cols + j] - a[i * P.cols + (P.cols - 1)]);
  return r;
}

// max c.y subject to the chart inequalities of P (y free), with an optional
// cap row c.y <= cap to keep the program bounded.
inline LpResult chart_lp(const ExactPolyhedron& P, const std::vector<Rational>& c,
                         const Rational* cap = nullptr, int skip_inequality = -1) {
  int d = chart_dim(P);
  int m = static_cast<int>(P.inequalities.size());
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (int t = 0; t < m; ++t) {
    if (t == skip_inequality) continue;
    auto r = chart_row(P, P.inequalities[t].first);
    for (auto& v : r) v = -v;  // a.y + b >= 0  ->  (-a).y <= b
    rows.push_back(std::move(r));
    rhs.push_back(P.inequalities[t].second);
  }
  if (cap) {
    rows.push_back(c);
    rhs.push_back(*cap);
  }
  // free variables split into positive and negative parts
  Matrix<Rational> A(static_cast<int>(rows.size()), 2 * d);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < d; ++j) {
      A(static_cast<int>(i), j) = rows[i][j];
      A(static_cast<int>(i), d + j) = -rows[i][j];
    }
  std::vector<Rational> obj(2 * d);
  for (int j = 0; j < d; ++j) {
    obj[j] = c[j];
    obj[d + j] = -c[j];
  }
  LpResult r = lp_maximize(A, rhs, obj);
  if (r.status == LpResult::Optimal) {
    std::vector<Rational> y(d);
    for (int j = 0; j < d; ++j) y[j] = r.x[j] - r.x[d + j];
    r.x = std::move(y);
  }
  return r;
}

inline long int_floor(const Rational& r) {
  Int num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  Int q = num / den;
  if (num % den != 0 && num < 0) --q;
  return static_cast<long>(q);
}

inline long int_ceil(const Rational& r) { return -int_floor(-r); }

// Canonical (normal, offset) key for a facet hyperplane, scale-invariant.
inline std::pair<std::vector<Rational>, Rational> facet_key(const std::vector<Rational>& normal,
                                                            const Rational& offset) {
  std::vector<Rational> p = primitive(normal);
  Rational scale = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) {
      scale = normal[i] / p[i];
      break;
    }
  return {std::move(p), offset / scale};
}

}  // namespace poly_detail

// V-rep (and facet H-rep) of the convex hull of the given ambient points.
inline ExactPolyhedron polytope_from_points(const std::vector<std::vector<Rational>>& points,
                                            int families = 0, int cols = 0) {
  ExactPolyhedron P;
  if (points.empty()) throw std::invalid_argument("polytope_from_points: no points");
  P.ambient = static_cast<int>(points[0].size());
  P.families = families;
  P.cols = cols;
  std::vector<std::vector<Rational>> chart;
  chart.reserve(points.size());
  for (const auto& p : points) chart.push_back(poly_detail::to_chart(P, p));
  std::sort(chart.begin(), chart.end(), [](const auto& a, const auto& b) {
    Rational sa = 0, sb = 0;
    for (const auto& v : a) sa += v;
    for (const auto& v : b) sb += v;
    if (sa != sb) return sa < sb;
    return a < b;
  });
  chart.erase(std::unique(chart.begin(), chart.end()), chart.end());

  Hull hull = convex_hull(chart);
  std::set<int> used;
  std::map<std::pair<std::vector<Rational>, Rational>, char> planes;
  for (const auto& f : hull.boundary) {
    for (int v : f.verts) used.insert(v);
    planes[poly_detail::facet_key(f.normal, f.offset)] = 1;
  }
  // The triangulation may keep points interior to a facet or an edge; an
  // actual vertex is tight on a full-rank set of facet normals.
  int d = hull.dim;
  std::set<std::vector<Rational>> verts;
  for (int v : used) {
    std::vector<const std::vector<Rational>*> tight;
    for (const auto& [key, unused] : planes) {
      Rational acc = 0;
      for (int j = 0; j < d; ++j) acc += key.first[j] * chart[v][j];
      if (acc == key.second) tight.push_back(&key.first);
    }
    Matrix<Rational> N(static_cast<int>(tight.size()), d);
    for (std::size_t r = 0; r < tight.size(); ++r)
      for (int j = 0; j < d; ++j) N(static_cast<int>(r), j) = (*tight[r])[j];
    if (rank_exact(N) == d) verts.insert(chart[v]);
  }
  for (const auto& v : verts) P.vertices.push_back(poly_detail::from_chart(P, v));
  for (const auto& [key, unused] : planes) {
    // normal.y <= offset  ->  (-normal).y + offset >= 0, padded back to ambient
    std::vector<Rational> a(P.ambient, Rational(0));
    if (families == 0) {
      for (int j = 0; j < P.ambient; ++j) a[j] = -key.first[j];
    } else {
      for (int i = 0; i < families; ++i)
        for (int j = 0; j + 1 < cols; ++j) a[i * cols + j] = -key.first[i * (cols - 1) + j];
    }
    P.inequalities.push_back({std::move(a), key.second});
  }
  return P;
}

// Fill the V-rep of an H-rep polyhedron by double description on the
// homogenization; unbounded directions land in rays.
inline void vertex_enumerate(ExactPolyhedron& P) {
  int d = poly_detail::chart_dim(P);
  int m = static_cast<int>(P.inequalities.size());
  Matrix<Rational> B(m + 1, d + 1);
  for (int t = 0; t < m; ++t) {
    auto r = poly_detail::chart_row(P, P.inequalities[t].first);
    B(t, 0) = -P.inequalities[t].second;
    for (int j = 0; j < d; ++j) B(t, j + 1) = -r[j];
  }
  B(m, 0) = -1;  // homogenizing coordinate is nonnegative
  ConeRep cone = cone_rays(B);
  P.vertices.clear();
  P.rays.clear();
  std::set<std::vector<Rational>> verts, dirs;
  for (const auto& u : cone.rays) {
    std::vector<Rational> y(u.begin() + 1, u.end());
    if (u[0] > 0) {
      for (auto& v : y) v /= u[0];
      verts.insert(poly_detail::from_chart(P, y));
    } else {
      dirs.insert(poly_detail::from_chart(P, y));
    }
  }
  for (const auto& v : cone.lineality) {
    std::vector<Rational> y(v.begin() + 1, v.end());
    dirs.insert(poly_detail::from_chart(P, y));
    for (auto& w : y) w = -w;
    dirs.insert(poly_detail::from_chart(P, y));
  }
  P.vertices.assign(verts.begin(), verts.end());
  P.rays.assign(dirs.begin(), dirs.end());
}

// ---------------------------------------------------------------------------
// The eta-deformation polytope: one inequality per nonfrozen subset J, with
// 0/1 coefficient vector supported on the column intervals
// [j_i - i + 1, j_{i+1} - i - 1] of each row i.

inline std::vector<Rational> facet_functional(int k, int n, const Subset& J) {
  std::vector<Rational> c((k - 1) * (n - k), Rational(0));
  for (int i = 1; i <= k - 1; ++i)
    for (int j = J[i - 1] - i + 1; j <= J[i] - i - 1; ++j) c[(i - 1) * (n - k) + (j - 1)] = 1;
  return c;
}

inline ExactPolyhedron pi_polytope(int k, int n) {
  if (k < 2 || n < k + 2) throw std::invalid_argument("pi_polytope: need 2 <= k <= n-2");
  ExactPolyhedron P;
  P.ambient = (k - 1) * (n - k);
  P.families = k - 1;
  P.cols = n - k;
  const auto& tab = subset_table(k, n);
  for (int idx : tab.nonfrozen)
    P.inequalities.push_back({facet_functional(k, n, tab.subsets[idx]), Rational(1)});
  return P;
}

// Vertex of the root polytope attached to a nonfrozen subset; hat = true gives
// the unprojected version on n-k+1 columns, otherwise column indices wrap
// modulo n-k.
inline std::vector<Rational> root_vertex(int k, int n, const Subset& J, bool hat) {
  int cols = hat ? n - k + 1 : n - k;
  std::vector<Rational> v((k - 1) * cols, Rational(0));
  auto at = [&](int family, int col) -> Rational& {
    if (!hat) col = (col - 1) % (n - k) + 1;
    return v[(family - 1) * cols + (col - 1)];
  };
  for (int lam = 1; lam <= k - 1; ++lam) {
    at(lam, J[lam - 1] - lam + 1) += 1;
    at(lam, J[lam] - lam) -= 1;
  }
  return v;
}

inline ExactPolyhedron root_polytope(int k, int n, bool projected) {
  if (k < 2 || n < k + 2) throw std::invalid_argument("root_polytope: need 2 <= k <= n-2");
  const auto& tab = subset_table(k, n);
  std::vector<std::vector<Rational>> pts;
  for (int idx : tab.nonfrozen) pts.push_back(root_vertex(k, n, tab.subsets[idx], !projected));
  if (!projected) {
    int cols = n - k + 1;
    pts.push_back(std::vector<Rational>((k - 1) * cols, Rational(0)));
    for (int i = 0; i < k - 1; ++i) {
      std::vector<Rational> e((k - 1) * cols, Rational(0));
      e[i * cols] = 1;
      e[i * cols + (cols - 1)] = -1;
      pts.push_back(std::move(e));
    }
  }
  return polytope_from_points(pts, k - 1, projected ? n - k : n - k + 1);
}

// ---------------------------------------------------------------------------

// Number of irredundant inequalities: inequality t bounds a facet exactly when
// points beyond its hyperplane satisfy all the others.
inline int facet_count(const ExactPolyhedron& P) {
  int count = 0;
  for (int t = 0; t < static_cast<int>(P.inequalities.size()); ++t) {
    std::vector<Rational> c = poly_detail::chart_row(P, P.inequalities[t].first);
    for (auto& v : c) v = -v;  // push past  a.y + b = 0, i.e. maximize -a.y
    Rational cap = P.inequalities[t].second + 1;
    LpResult r = poly_detail::chart_lp(P, c, &cap, t);
    if (r.status == LpResult::Optimal && r.value > P.inequalities[t].second) ++count;
  }
  return count;
}

// All lattice points of the chart lattice strictly inside P, reported in
// ambient coordinates.  P must be bounded.
inline std::vector<std::vector<Rational>> interior_lattice_points(const ExactPolyhedron& P) {
  int d = poly_detail::chart_dim(P);
  std::vector<long> lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    std::vector<Rational> c(d, Rational(0));
    c[j] = 1;
    LpResult up = poly_detail::chart_lp(P, c);
    c[j] = -1;
    LpResult dn = poly_detail::chart_lp(P, c);
    if (up.status == LpResult::Infeasible || dn.status == LpResult::Infeasible) return {};
    if (up.status != LpResult::Optimal || dn.status != LpResult::Optimal)
      throw std::invalid_argument("interior_lattice_points: unbounded polyhedron");
    hi[j] = poly_detail::int_floor(up.value);
    lo[j] = -poly_detail::int_floor(dn.value);
    if (lo[j] > hi[j]) return {};
  }
  int m = static_cast<int>(P.inequalities.size());
  std::vector<std::vector<Rational>> rows(m);
  for (int t = 0; t < m; ++t) rows[t] = poly_detail::chart_row(P, P.inequalities[t].first);
  // value of inequality t so far, plus the largest possible remainder
  std::vector<Rational> val(m), slack(m);
  for (int t = 0; t < m; ++t) {
    val[t] = P.inequalities[t].second;
    slack[t] = 0;
    for (int j = 0; j < d; ++j)
      slack[t] += std::max(rows[t][j] * lo[j], rows[t][j] * hi[j]);
  }
  std::vector<long> y(d);
  std::vector<std::vector<Rational>> out;
  std::function<void(int)> rec = [&](int j) {
    for (int t = 0; t < m; ++t)
      if (val[t] + slack[t] <= 0) return;
    if (j == d) {
      std::vector<Rational> p(d);
      for (int c = 0; c < d; ++c) p[c] = y[c];
      out.push_back(poly_detail::from_chart(P, p));
      return;
    }
    for (long v = lo[j]; v <= hi[j]; ++v) {
      y[j] = v;
      for (int t = 0; t < m; ++t) {
        val[t] += rows[t][j] * v;
        slack[t] -= std::max(rows[t][j] * lo[j], rows[t][j] * hi[j]);
      }
      rec(j + 1);
      for (int t = 0; t < m; ++t) {
        val[t] -= rows[t][j] * v;
        slack[t] += std::max(rows[t][j] * lo[j], rows[t][j] * hi[j]);
      }
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// f-vector from vertex-facet incidence: every face is an intersection of
// facets, closed under intersecting vertex sets; dimensions by affine rank.

inline FVector f_vector(ExactPolyhedron& P) {
  constexpr int kMaxVerts = 192;
  if (P.vertices.empty()) vertex_enumerate(P);
  if (!P.rays.empty()) throw std::invalid_argument("f_vector: polytope is unbounded");
  if (P.inequalities.empty()) throw std::invalid_argument("f_vector: no facet description");
  int nv = static_cast<int>(P.vertices.size());
  if (nv > kMaxVerts) throw std::invalid_argument("f_vector: too many vertices");
  std::vector<std::vector<Rational>> chart(nv);
  for (int v = 0; v < nv; ++v) chart[v] = poly_detail::to_chart(P, P.vertices[v]);
  int d = 0;
  {
    Matrix<Rational> D(nv - 1, poly_detail::chart_dim(P));
    for (int v = 1; v < nv; ++v)
      for (int c = 0; c < D.cols(); ++c) D(v - 1, c) = chart[v][c] - chart[0][c];
    d = rank_exact(D);
  }
  using Mask = std::bitset<kMaxVerts>;
  std::vector<Mask> facets;
  for (const auto& [a, b] : P.inequalities) {
    auto r = poly_detail::chart_row(P, a);
    Mask m;
    for (int v = 0; v < nv; ++v) {
      Rational acc = b;
      for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * chart[v][j];
      if (acc == 0) m.set(v);
    }
    facets.push_back(m);
  }
  Mask full;
  for (int v = 0; v < nv; ++v) full.set(v);
  std::unordered_set<Mask> faces;
  faces.insert(full);
  faces.insert(Mask());
  std::vector<Mask> queue = {full};
  while (!queue.empty()) {
    Mask f = queue.back();
    queue.pop_back();
    for (const Mask& g : facets) {
      Mask c = f & g;
      if (c == f) continue;
      if (faces.insert(c).second) queue.push_back(c);
    }
  }
  FVector counts(d + 2, 0);
  for (const Mask& f : faces) {
    int cnt = static_cast<int>(f.count());
    if (cnt == 0) {
      ++counts[0];
      continue;
    }
    std::vector<int> idx;
    for (int v = 0; v < nv; ++v)
      if (f.test(v)) idx.push_back(v);
    Matrix<Rational> D(cnt - 1, poly_detail::chart_dim(P));
    for (int r = 1; r < cnt; ++r)
      for (int c = 0; c < D.cols(); ++c) D(r - 1, c) = chart[idx[r]][c] - chart[idx[0]][c];
    ++counts[rank_exact(D) + 1];
  }
  return counts;
}

// Lattice-normalized volume: d! times the Euclidean volume in the chart,
// computed from a placing triangulation with exact determinants.
inline Rational relative_volume(ExactPolyhedron& P) {
  if (P.vertices.empty()) vertex_enumerate(P);
  if (!P.rays.empty()) throw std::invalid_argument("relative_volume: polytope is unbounded");
  std::vector<std::vector<Rational>> chart;
  chart.reserve(P.vertices.size());
  for (const auto& v : P.vertices) chart.push_back(poly_detail::to_chart(P, v));
  int d = poly_detail::chart_dim(P);
  Hull hull = convex_hull(chart);
  Rational vol = 0;
  for (const auto& s : hull.simplices) {
    Matrix<Rational> E(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c) E(r, c) = chart[s[r + 1]][c] - chart[s[0]][c];
    Rational det = det_exact(E);
    vol += det < 0 ? -det : det;
  }
  return vol;
}

// ---------------------------------------------------------------------------
// Checks tying the two polytope families together.

// The root-polytope vertices, rewritten in the difference basis
// f_{i,j} = e_{i,j} - e_{i,j+1 (cyclic)}, must carry exactly the 0/1 interval
// coefficients of the corresponding facet functional.
inline bool duality_check(int k, int n) {
  const auto& tab = subset_table(k, n);
  int cols = n - k;
  for (int idx : tab.nonfrozen) {
    const Subset& J = tab.subsets[idx];
    std::vector<Rational> c = facet_functional(k, n, J);
    std::vector<Rational> v = root_vertex(k, n, J, false);
    for (int i = 0; i < k - 1; ++i)
      for (int j = 0; j < cols; ++j) {
        int prev = (j + cols - 1) % cols;
        if (v[i * cols + j] != c[i * cols + j] - c[i * cols + prev]) return false;
      }
  }

  // Independent polar computation: the dual of the root polytope, cut out by
  // one inequality per vertex (coefficients recovered by prefix sums), must
  // reproduce the eta-deformation polytope vertex for vertex.
  ExactPolyhedron R = root_polytope(k, n, true);
  if (static_cast<int>(R.vertices.size()) != static_cast<int>(tab.nonfrozen.size())) return false;
  ExactPolyhedron dual;
  dual.ambient = (k - 1) * cols;
  dual.families = k - 1;
  dual.cols = cols;
  for (const auto& v : R.vertices) {
    std::vector<Rational> c(dual.ambient);
    for (int i = 0; i < k - 1; ++i) {
      Rational acc = 0;
      for (int j = 0; j < cols; ++j) {
        acc += v[i * cols + j];
        c[i * cols + j] = acc;
      }
    }
    dual.inequalities.push_back({std::move(c), Rational(1)});
  }
  vertex_enumerate(dual);
  ExactPolyhedron Pi = pi_polytope(k, n);
  vertex_enumerate(Pi);
  return dual.vertices == Pi.vertices && dual.rays.empty() && Pi.rays.empty();
}

// The Newton polytope of prod_i P_i prod_j Q_j / prod x_{i,j} must coincide
// with the eta-deformation polytope.  The staircase factors index their rows
// from the bottom of the web matrix while the deformation parameters index
// from the top, so the family order reverses between the two coordinate
// systems.
inline bool newton_polytope_check(int k, int n) {
  int vars = (k - 1) * (n - k);
  SparsePoly prod = SparsePoly::constant(vars, 1);
  for (int i = 1; i <= k - 1; ++i) prod = prod * web_P(k, n, i);
  for (int j = 1; j <= n - k - 1; ++j) prod = prod * web_Q(k, n, j);
  std::vector<std::vector<Rational>> pts;
  for (const auto& term : prod.terms) {
    std::vector<Rational> p(vars);
    for (int i = 0; i < k - 1; ++i)
      for (int j = 0; j < n - k; ++j)
        p[i * (n - k) + j] = term.first[(k - 2 - i) * (n - k) + j] - 1;
    pts.push_back(std::move(p));
  }
  ExactPolyhedron newton;
  try {
    newton = polytope_from_points(pts, k - 1, n - k);
  } catch (const std::invalid_argument&) {
    return false;  // a monomial outside the block subspace, or a flat hull
  }
  ExactPolyhedron Pi = pi_polytope(k, n);
  vertex_enumerate(Pi);
  return newton.vertices == Pi.vertices;
}

// Slice of the projected root polytope at one vanishing family of
// coordinates: must be the next-lower root polytope, vertex for vertex.
inline bool graded_embedding_check(int k, int n, int i) {
  if (k < 3 || i < 1 || i > k - 1) throw std::invalid_argument("graded_embedding_check: bad family");
  int cols = n - k;
  auto drop_family = [&](const std::vector<Rational>& v) {
    std::vector<Rational> u;
    u.reserve((k - 2) * cols);
    for (int f = 0; f < k - 1; ++f) {
      if (f == i - 1) continue;
      for (int j = 0; j < cols; ++j) u.push_back(v[f * cols + j]);
    }
    return u;
  };

  // Vertices with the predicted gap pattern, with the i-th family deleted.
  const auto& tab = subset_table(k, n);
  std::set<std::vector<Rational>> sliced;
  for (int idx : tab.nonfrozen) {
    const Subset& J = tab.subsets[idx];
    if (J[i - 1] + 1 != J[i]) continue;
    std::vector<Rational> v = root_vertex(k, n, J, false);
    for (int j = 0; j < cols; ++j)
      if (v[(i - 1) * cols + j] != 0) return false;
    sliced.insert(drop_family(v));
  }

  // They must be exactly the vertices of the lower polytope.
  const auto& low = subset_table(k - 1, n - 1);
  std::set<std::vector<Rational>> expect;
  for (int idx : low.nonfrozen) expect.insert(root_vertex(k - 1, n - 1, low.subsets[idx], false));
  if (sliced != expect) return false;

  // No other vertex of the big polytope lies on the slice subspace, and the
  // slice of the polytope itself stays inside the lower polytope: maximizing
  // each lower facet functional over convex combinations of the big polytope's
  // vertices, constrained to the subspace, must respect the facet offset.
  ExactPolyhedron R = root_polytope(k, n, true);
  for (const auto& v : R.vertices) {
    bool flat = true;
    for (int j = 0; j < cols && flat; ++j)
      if (v[(i - 1) * cols + j] != 0) flat = false;
    if (flat && !sliced.count(drop_family(v))) return false;
  }
  ExactPolyhedron low_poly = root_polytope(k - 1, n - 1, true);
  int nv = static_cast<int>(R.vertices.size());
  int subspace_rows = cols - 1;  // chart coordinates of family i
  for (const auto& [a, b] : low_poly.inequalities) {
    auto arow = poly_detail::chart_row(low_poly, a);
    // objective per big vertex: the facet functional on the dropped-family image
    std::vector<Rational> obj(nv);
    ExactPolyhedron shim;
    shim.ambient = (k - 2) * cols;
    shim.families = k - 2;
    shim.cols = cols;
    for (int v = 0; v < nv; ++v) {
      auto img = poly_detail::to_chart(shim, drop_family(R.vertices[v]));
      Rational acc = 0;
      for (std::size_t j = 0; j < arow.size(); ++j) acc += arow[j] * img[j];
      obj[v] = -acc;  // maximize the violation of a.x + b >= 0
    }
    // rows: convex combination, and vanishing of family-i chart coordinates
    ExactPolyhedron bigchart;
    bigchart.ambient = (k - 1) * cols;
    bigchart.families = k - 1;
    bigchart.cols = cols;
    int rows_n = 2 + 2 * subspace_rows;
    Matrix<Rational> A(rows_n, nv);
    std::vector<Rational> rhs(rows_n);
    for (int v = 0; v < nv; ++v) {
      A(0, v) = 1;
      A(1, v) = -1;
      auto ch = poly_detail::to_chart(bigchart, R.vertices[v]);
      for (int j = 0; j < subspace_rows; ++j) {
        Rational coord = ch[(i - 1) * (cols - 1) + j];
        A(2 + 2 * j, v) = coord;
        A(3 + 2 * j, v) = -coord;
      }
    }
    rhs[0] = 1;
    rhs[1] = -1;
    LpResult r = lp_maximize(A, rhs, obj);
    if (r.status != LpResult::Optimal) return false;
    if (r.value > b) return false;  // some slice point falls outside the facet
  }
  return true;
}

// Kinematic embedding: eta values prescribed by the facet functionals plus
// one.  The origin goes to the planar kinematics point.
inline KinematicPoint psi_embedding(int k, int n, const Matrix<Rational>& alpha) {
  if (alpha.rows() != k - 1 || alpha.cols() != n - k)
    throw std::invalid_argument("psi_embedding: alpha has wrong shape");
  const auto& tab = subset_table(k, n);
  std::map<Subset, Rational> targets;
  for (int idx : tab.nonfrozen) {
    const Subset& J = tab.subsets[idx];
    targets[J] = gamma_functional(k, n, alpha, J, true) + 1;
  }
  return solve_eta_system(k, n, targets);
}

}  // namespace pk
