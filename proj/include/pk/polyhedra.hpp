#pragma once
// Exact polyhedral kernel: extreme rays of rational cones (double
// description) and convex hulls with placing triangulations
// (beneath-beyond).  All arithmetic is rational; directions are normalized
// to primitive integer vectors so representations are canonical.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "pk/matrix.hpp"
#include "pk/rational.hpp"

namespace pk {

// Scale a nonzero rational vector to the primitive integer vector with the
// same direction (clears denominators, divides by the content).
inline std::vector<Rational> primitive(std::vector<Rational> v) {
  Int lcm = 1;
  for (const auto& q : v)
    lcm = boost::multiprecision::lcm(lcm, Int(boost::multiprecision::denominator(q)));
  Int g = 0;
  for (auto& q : v) {
    q *= Rational(lcm);
    g = boost::multiprecision::gcd(g, Int(boost::multiprecision::numerator(q)));
  }
  if (g != 0)
    for (auto& q : v) q /= Rational(g);
  return v;
}

// Basis of {x : M x = 0}, read off the reduced row echelon form: one
// generator per free column.
inline std::vector<std::vector<Rational>> kernel_basis(Matrix<Rational> m) {
  std::vector<int> pivots = echelonize(m);
  int d = m.cols();
  std::vector<bool> is_pivot(d, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < d; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(d, Rational(0));
    v[free] = 1;
    for (int r = 0; r < static_cast<int>(pivots.size()); ++r)
      v[pivots[r]] = -m(r, free);
    basis.push_back(primitive(std::move(v)));
  }
  return basis;
}

namespace dd_detail {

// Tight-row sets as dynamic bitmasks.
using Mask = std::vector<std::uint64_t>;

inline void mask_set(Mask& m, int bit) { m[bit >> 6] |= std::uint64_t(1) << (bit & 63); }

inline bool mask_subset(const Mask& a, const Mask& b) {
  for (std::size_t w = 0; w < a.size(); ++w)
    if (a[w] & ~b[w]) return false;
  return true;
}

inline Mask mask_and(const Mask& a, const Mask& b) {
  Mask r(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) r[w] = a[w] & b[w];
  return r;
}

}  // namespace dd_detail

struct ConeRep {
  std::vector<std::vector<Rational>> rays;       // extreme rays, primitive
  std::vector<std::vector<Rational>> lineality;  // basis of the lineal part
};

// Extreme rays and lineality of {x : B x <= 0} by double description.  The
// lineality (kernel of B) is split off first so the double-description loop
// runs on a pointed cone, where the combinatorial adjacency test is valid:
// the pointed part lives in the coordinate subspace spanned by the
// non-pivot-free completion below, starting from a simplicial cone cut out
// by a maximal independent row set.
inline ConeRep cone_rays(const Matrix<Rational>& B) {
  int d = B.cols(), m = B.rows();
  ConeRep rep;
  rep.lineality = kernel_basis(B);
  int q = d - static_cast<int>(rep.lineality.size());
  if (q == 0) return rep;

  // Coordinates spanning a complement of the lineality: append identity rows
  // to the lineality basis and keep the ones that raise the rank.
  std::vector<int> coords;
  {
    Matrix<Rational> probe(static_cast<int>(rep.lineality.size()), d);
    for (int r = 0; r < static_cast<int>(rep.lineality.size()); ++r)
      for (int c = 0; c < d; ++c) probe(r, c) = rep.lineality[r][c];
    int rank = rank_exact(probe);
    for (int j = 0; j < d && static_cast<int>(coords.size()) < q; ++j) {
      Matrix<Rational> t(probe.rows() + static_cast<int>(coords.size()) + 1, d);
      int rr = 0;
      for (int r = 0; r < probe.rows(); ++r, ++rr)
        for (int c = 0; c < d; ++c) t(rr, c) = probe(r, c);
      for (int cj : coords) {
        t(rr, cj) = 1;
        ++rr;
      }
      t(rr, j) = 1;
      if (rank_exact(t) == rank + static_cast<int>(coords.size()) + 1) coords.push_back(j);
    }
  }

  // Projected system: rows of B restricted to the chosen coordinates.
  Matrix<Rational> P(m, q);
  for (int i = 0; i < m; ++i)
    for (int c = 0; c < q; ++c) P(i, c) = B(i, coords[c]);

  // Maximal independent row set -> initial simplicial cone.
  std::vector<int> base;
  {
    Matrix<Rational> acc(q, q);
    int rank = 0;
    for (int i = 0; i < m && rank < q; ++i) {
      Matrix<Rational> t(rank + 1, q);
      for (int r = 0; r < rank; ++r)
        for (int c = 0; c < q; ++c) t(r, c) = acc(r, c);
      for (int c = 0; c < q; ++c) t(rank, c) = P(i, c);
      if (rank_exact(t) == rank + 1) {
        for (int c = 0; c < q; ++c) acc(rank, c) = P(i, c);
        base.push_back(i);
        ++rank;
      }
    }
    if (rank < q) throw std::logic_error("cone_rays: kernel split left dependent rows");
  }

  Matrix<Rational> S = P.select(base, [&] {
    std::vector<int> all(q);
    for (int c = 0; c < q; ++c) all[c] = c;
    return all;
  }());
  LinearSolver<Rational> solver(S);

  struct Ray {
    std::vector<Rational> v;  // in projected coordinates
    dd_detail::Mask tight;    // over all m rows of B
  };
  int words = (m + 63) / 64;
  auto make_ray = [&](std::vector<Rational> v, const std::vector<bool>& processed) {
    Ray r{primitive(std::move(v)), dd_detail::Mask(words, 0)};
    for (int i = 0; i < m; ++i) {
      if (!processed[i]) continue;
      Rational dot = 0;
      for (int c = 0; c < q; ++c) dot += P(i, c) * r.v[c];
      if (dot == 0) dd_detail::mask_set(r.tight, i);
    }
    return r;
  };

  std::vector<bool> processed(m, false);
  for (int i : base) processed[i] = true;
  std::vector<Ray> rays;
  for (int j = 0; j < q; ++j) {
    std::vector<Rational> e(q, Rational(0)), col;
    e[j] = -1;
    col = solver.solve(e);
    rays.push_back(make_ray(std::move(col), processed));
  }

  for (int i = 0; i < m; ++i) {
    if (processed[i]) continue;
    std::vector<Rational> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      Rational dot = 0;
      for (int c = 0; c < q; ++c) dot += P(i, c) * rays[r].v[c];
      val[r] = dot;
    }
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (val[r] <= 0) {
        Ray keep = rays[r];
        if (val[r] == 0) dd_detail::mask_set(keep.tight, i);
        next.push_back(std::move(keep));
      }
    processed[i] = true;
    for (std::size_t p = 0; p < rays.size(); ++p) {
      if (val[p] <= 0) continue;
      for (std::size_t n = 0; n < rays.size(); ++n) {
        if (val[n] >= 0) continue;
        // Combinatorial adjacency: no third ray is tight on everything the
        // pair shares.
        dd_detail::Mask common = dd_detail::mask_and(rays[p].tight, rays[n].tight);
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size(); ++o) {
          if (o == p || o == n) continue;
          if (dd_detail::mask_subset(common, rays[o].tight)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        std::vector<Rational> comb(q);
        for (int c = 0; c < q; ++c) comb[c] = val[p] * rays[n].v[c] - val[n] * rays[p].v[c];
        next.push_back(make_ray(std::move(comb), processed));
      }
    }
    rays = std::move(next);
  }

  for (const Ray& r : rays) {
    std::vector<Rational> full(d, Rational(0));
    for (int c = 0; c < q; ++c) full[coords[c]] = r.v[c];
    rep.rays.push_back(primitive(std::move(full)));
  }
  std::sort(rep.rays.begin(), rep.rays.end());
  return rep;
}

struct HullFacet {
  std::vector<int> verts;        // exactly dim point indices (a boundary simplex)
  std::vector<Rational> normal;  // outward: normal . x <= offset on the hull
  Rational offset;
};

struct Hull {
  int dim = 0;
  std::vector<std::vector<int>> simplices;  // placing triangulation, full-dim
  std::vector<HullFacet> boundary;          // triangulated boundary complex
};

namespace hull_detail {

// Normal of the hyperplane through d points in R^d by cofactor expansion of
// the (d-1) x d matrix of edge vectors; zero vector means degenerate input.
inline std::vector<Rational> hyperplane_normal(const std::vector<std::vector<Rational>>& pts,
                                               const std::vector<int>& verts) {
  int d = static_cast<int>(pts[verts[0]].size());
  std::vector<Rational> normal(d);
  Matrix<Rational> edges(d - 1, d);
  for (int r = 0; r + 1 < d; ++r)
    for (int c = 0; c < d; ++c) edges(r, c) = pts[verts[r + 1]][c] - pts[verts[0]][c];
  std::vector<int> rows(d - 1);
  for (int r = 0; r + 1 < d; ++r) rows[r] = r;
  for (int skip = 0; skip < d; ++skip) {
    std::vector<int> cols;
    for (int c = 0; c < d; ++c)
      if (c != skip) cols.push_back(c);
    Rational minor = det_exact(edges.select(rows, cols));
    normal[skip] = (skip % 2 == 0) ? minor : -minor;
  }
  return normal;
}

}  // namespace hull_detail

// Convex hull of a full-dimensional point set with the placing (beneath-
// beyond) triangulation.  Points are inserted in input order; later
// duplicates and interior points simply never contribute.  Throws
// std::invalid_argument when the input is not full-dimensional.
inline Hull convex_hull(const std::vector<std::vector<Rational>>& pts) {
  if (pts.empty()) throw std::invalid_argument("convex_hull: no points");
  int d = static_cast<int>(pts[0].size());
  int m = static_cast<int>(pts.size());
  if (m < d + 1) throw std::invalid_argument("convex_hull: input not full-dimensional");

  // Greedy affinely independent seed simplex.
  std::vector<int> seed{0};
  {
    Matrix<Rational> diffs(d, d);
    int rank = 0;
    for (int i = 1; i < m && rank < d; ++i) {
      Matrix<Rational> t(rank + 1, d);
      for (int r = 0; r < rank; ++r)
        for (int c = 0; c < d; ++c) t(r, c) = diffs(r, c);
      for (int c = 0; c < d; ++c) t(rank, c) = pts[i][c] - pts[0][c];
      if (rank_exact(t) == rank + 1) {
        for (int c = 0; c < d; ++c) diffs(rank, c) = pts[i][c] - pts[0][c];
        seed.push_back(i);
        ++rank;
      }
    }
    if (rank < d) throw std::invalid_argument("convex_hull: input not full-dimensional");
  }

  std::vector<Rational> center(d, Rational(0));
  for (int i : seed)
    for (int c = 0; c < d; ++c) center[c] += pts[i][c];
  for (int c = 0; c < d; ++c) center[c] /= Rational(d + 1);

  Hull hull;
  hull.dim = d;
  hull.simplices.push_back(seed);

  auto oriented_facet = [&](std::vector<int> verts) {
    std::sort(verts.begin(), verts.end());
    HullFacet f;
    f.normal = hull_detail::hyperplane_normal(pts, verts);
    bool zero = true;
    for (const auto& v : f.normal) zero = zero && v == 0;
    if (zero) throw std::logic_error("convex_hull: degenerate facet simplex");
    f.offset = 0;
    for (int c = 0; c < d; ++c) f.offset += f.normal[c] * pts[verts[0]][c];
    Rational at_center = 0;
    for (int c = 0; c < d; ++c) at_center += f.normal[c] * center[c];
    if (at_center > f.offset) {
      for (auto& v : f.normal) v = -v;
      f.offset = -f.offset;
    }
    f.verts = std::move(verts);
    return f;
  };

  std::vector<HullFacet> facets;
  for (int skip = 0; skip <= d; ++skip) {
    std::vector<int> verts;
    for (int j = 0; j <= d; ++j)
      if (j != skip) verts.push_back(seed[j]);
    facets.push_back(oriented_facet(std::move(verts)));
  }

  std::vector<bool> in_seed(m, false);
  for (int i : seed) in_seed[i] = true;
  for (int p = 0; p < m; ++p) {
    if (in_seed[p]) continue;
    std::vector<char> visible(facets.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      Rational at = 0;
      for (int c = 0; c < d; ++c) at += facets[f].normal[c] * pts[p][c];
      if (at > facets[f].offset) {
        visible[f] = 1;
        any = true;
      }
    }
    if (!any) continue;  // inside or on the current hull

    // Ridge -> incident facets (boundary complex is a closed pseudomanifold,
    // so every ridge lies in exactly two facet simplices).
    std::map<std::vector<int>, std::vector<std::size_t>> ridges;
    for (std::size_t f = 0; f < facets.size(); ++f)
      for (int skip = 0; skip < d; ++skip) {
        std::vector<int> r;
        for (int j = 0; j < d; ++j)
          if (j != skip) r.push_back(facets[f].verts[j]);
        ridges[r].push_back(f);
      }

    std::vector<HullFacet> next;
    for (std::size_t f = 0; f < facets.size(); ++f) {
      if (visible[f]) {
        std::vector<int> cell = facets[f].verts;
        cell.push_back(p);
        std::sort(cell.begin(), cell.end());
        hull.simplices.push_back(std::move(cell));
      } else {
        next.push_back(facets[f]);
      }
    }
    for (const auto& [ridge, inc] : ridges) {
      if (inc.size() != 2) throw std::logic_error("convex_hull: open boundary complex");
      if (visible[inc[0]] == visible[inc[1]]) continue;
      std::vector<int> verts = ridge;
      verts.push_back(p);
      next.push_back(oriented_facet(std::move(verts)));
    }
    facets = std::move(next);
  }

  hull.boundary = std::move(facets);
  return hull;
}

}  // namespace pk
