#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pk/amplitude.hpp"
#include "pk/kinematics.hpp"
#include "pk/ksubset.hpp"
#include "pk/tropical.hpp"

using namespace pk;

namespace {

Rational rat(long p, long q = 1) { return Rational(p, q); }

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Exponent vector with ones at the listed positions.
ExpVec expvec(int vars, std::initializer_list<int> ones) {
  ExpVec e(vars, 0);
  for (int i : ones) ++e[i];
  return e;
}

std::vector<Rational> random_point(std::mt19937& rng, int dim) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  std::vector<Rational> x(dim);
  for (auto& v : x) v = rat(num(rng), den(rng));
  return x;
}

Rational rmin(std::initializer_list<Rational> vals) { return std::min(vals); }

}  // namespace

TEST_CASE("web minors match hand-computed determinants") {
  SECTION("k=2: windows are units, others are interval sums") {
    // vars X_{1,1}..X_{1,4} at indices 0..3
    CHECK(web_minor(2, 6, {1, 2}) == SparsePoly::constant(4, 1));
    CHECK(web_minor(2, 6, {1, 5}) == SparsePoly::constant(4, 1));
    CHECK(web_minor(2, 6, {3, 4}) == SparsePoly::monomial(4, expvec(4, {1}), -1));
    SparsePoly p35(4);  // -(X_{1,2} + X_{1,3})
    p35.add_term(expvec(4, {1}), -1);
    p35.add_term(expvec(4, {2}), -1);
    CHECK(web_minor(2, 6, {3, 5}) == p35);
    SparsePoly p26(4);  // -(X_{1,1} + ... + X_{1,4})
    for (int j = 0; j < 4; ++j) p26.add_term(expvec(4, {j}), -1);
    CHECK(web_minor(2, 6, {2, 6}) == p26);
  }
  SECTION("k=3, n=6 gap minors") {
    // vars X_{1,1..3} at indices 0..2 and X_{2,1..3} at 3..5.  On the torus
    // X_{1,1} = X_{2,1} = 1 these restrict to the familiar expressions in
    // x_a = X_{1,a+1}, y_a = X_{2,a+1}.
    const int V = 6;
    CHECK(web_minor(3, 6, {1, 2, 4}) == SparsePoly::constant(V, 1));
    SparsePoly p235(V);  // X11 X21 + X12 X21 + X12 X22  ->  1 + x1 + x1 y1
    p235.add_term(expvec(V, {0, 3}), 1);
    p235.add_term(expvec(V, {1, 3}), 1);
    p235.add_term(expvec(V, {1, 4}), 1);
    CHECK(web_minor(3, 6, {2, 3, 5}) == p235);
    SparsePoly p346(V);  // -X11 (X12 X22 + X13 X22 + X13 X23)  ->  -(x1 y1 + x2 y1 + x2 y2)
    p346.add_term(expvec(V, {0, 1, 4}), -1);
    p346.add_term(expvec(V, {0, 2, 4}), -1);
    p346.add_term(expvec(V, {0, 2, 5}), -1);
    CHECK(web_minor(3, 6, {3, 4, 6}) == p346);
    CHECK(web_minor(3, 6, {1, 4, 5}) == SparsePoly::monomial(V, expvec(V, {1}), -1));
    SparsePoly p256(V);  // X13 (X21 + X22 + X23)  ->  x2 (1 + y1 + y2)
    p256.add_term(expvec(V, {2, 3}), 1);
    p256.add_term(expvec(V, {2, 4}), 1);
    p256.add_term(expvec(V, {2, 5}), 1);
    CHECK(web_minor(3, 6, {2, 5, 6}) == p256);
    SparsePoly p136(V);  // -(X11 + X12 + X13)  ->  -(1 + x1 + x2)
    p136.add_term(expvec(V, {0}), -1);
    p136.add_term(expvec(V, {1}), -1);
    p136.add_term(expvec(V, {2}), -1);
    CHECK(web_minor(3, 6, {1, 3, 6}) == p136);
  }
  SECTION("k=3, n=6 window minors are monomials") {
    const int V = 6;
    CHECK(web_minor(3, 6, {1, 2, 3}) == SparsePoly::constant(V, 1));
    CHECK(web_minor(3, 6, {2, 3, 4}) == SparsePoly::monomial(V, expvec(V, {0, 3}), 1));
    CHECK(web_minor(3, 6, {1, 2, 6}) == SparsePoly::constant(V, 1));
    CHECK(web_minor(3, 6, {3, 4, 5}) == SparsePoly::monomial(V, expvec(V, {0, 1, 4}), -1));
    CHECK(web_minor(3, 6, {4, 5, 6}) == SparsePoly::monomial(V, expvec(V, {1, 2, 5}), -1));
    CHECK(web_minor(3, 6, {1, 5, 6}) == SparsePoly::monomial(V, expvec(V, {2}), -1));
  }
  SECTION("every maximal minor is one-signed") {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {2, 6}, {3, 6}, {3, 7}, {4, 7}})
      for (const Subset& J : all_ksubsets(n, k)) {
        CAPTURE(k, n, subset_key(J));
        CHECK_NOTHROW(PositiveLaurent(web_minor(k, n, J)));
      }
  }
}

TEST_CASE("tropicalization keeps the support only") {
  SparsePoly p(3);
  p.add_term(expvec(3, {0}), 7);
  p.add_term(expvec(3, {1, 2}), 5);
  auto t = tropicalize(PositiveLaurent(p));
  REQUIRE(t.forms.size() == 2);
  // exponent vectors come back in lexicographic order
  CHECK(t.forms[0] == expvec(3, {1, 2}));
  CHECK(t.forms[1] == expvec(3, {0}));

  SparsePoly mixed(2);
  mixed.add_term(expvec(2, {0}), 1);
  mixed.add_term(expvec(2, {1}), -1);
  CHECK_THROWS_AS(PositiveLaurent(mixed), std::invalid_argument);
  CHECK_THROWS_AS(PositiveLaurent(SparsePoly(2)), std::invalid_argument);
}

TEST_CASE("window-gap factorization of the web variables") {
  for (int n = 4; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(web_factorization_identity(2, n));
  }
  for (int n = 5; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(web_factorization_identity(3, n));
  }
  for (int n = 6; n <= 8; ++n) {
    CAPTURE(n);
    CHECK(web_factorization_identity(4, n));
  }
}

TEST_CASE("potential agrees with closed forms") {
  std::mt19937 rng(2024);
  SECTION("k=2 chains of pairwise minima") {
    for (int n : {6, 7}) {
      TropicalIntegrand F = build_integrand(pk_point(2, n));
      int d = n - 3;
      REQUIRE(F.dim == d);
      CHECK(static_cast<int>(F.mins.size()) == n - 2);
      for (int trial = 0; trial < 20; ++trial) {
        auto u = random_point(rng, d);
        Rational expect = 0;
        for (const auto& v : u) expect -= v;
        expect += rmin({rat(0), u[0]});
        for (int a = 0; a + 1 < d; ++a) expect += rmin({u[a], u[a + 1]});
        Rational all = 0;
        for (const auto& v : u) all = std::min(all, v);
        expect += all;
        CHECK(evaluate_integrand(F, u) == expect);
      }
    }
  }
  SECTION("(3,6) in the chart x_a, y_a") {
    TropicalIntegrand F = build_integrand(pk_point(3, 6));
    REQUIRE(F.dim == 4);
    CHECK(F.mins.size() == 4);
    for (int trial = 0; trial < 20; ++trial) {
      auto p = random_point(rng, 4);
      const Rational &x1 = p[0], &x2 = p[1], &y1 = p[2], &y2 = p[3];
      Rational expect = -x1 - x2 - y1 - y2;
      expect += rmin({rat(0), x1, x1 + y1});
      expect += rmin({rat(0), y1, y2});
      expect += rmin({x1 + y1, x2 + y1, x2 + y2});
      expect += rmin({rat(0), x1, x2});
      CHECK(evaluate_integrand(F, p) == expect);
    }
  }
  SECTION("zero kinematics give the zero potential") {
    TropicalIntegrand F = build_integrand(KinematicPoint(2, 6));
    CHECK(F.mins.empty());
    CHECK(evaluate_integrand(F, random_point(rng, 3)) == 0);
  }
  SECTION("bad inputs are rejected") {
    KinematicPoint bad(2, 6);
    bad.set({1, 3}, rat(1));  // violates conservation
    CHECK_THROWS_AS(build_integrand(bad), std::invalid_argument);
    CHECK_THROWS_AS(build_integrand(pk_point(2, 6), 0), std::invalid_argument);
    CHECK_THROWS_AS(build_integrand(pk_point(2, 6), 5), std::invalid_argument);
    TropicalIntegrand F = build_integrand(pk_point(2, 6));
    CHECK_THROWS_AS(evaluate_integrand(F, {rat(0)}), std::invalid_argument);
  }
}

TEST_CASE("linearity regions partition the chart") {
  TropicalIntegrand F = build_integrand(pk_point(3, 6));
  auto regions = enumerate_regions(F);
  REQUIRE(regions.size() == 27);
  for (const auto& reg : regions) {
    // The witness lies strictly inside and the affine form matches there.
    for (const auto& r : reg.constraints) CHECK(dot(r, reg.interior) < 0);
    CHECK(evaluate_integrand(F, reg.interior) == dot(reg.form, reg.interior));
  }
  for (std::size_t a = 0; a < regions.size(); ++a)
    for (std::size_t b = 0; b < regions.size(); ++b) {
      if (a == b) continue;
      // Interiors are pairwise disjoint: some wall of b excludes a's witness.
      bool excluded = false;
      for (const auto& r : regions[b].constraints)
        if (dot(r, regions[a].interior) > 0) {
          excluded = true;
          break;
        }
      CHECK(excluded);
    }
}

TEST_CASE("cone integrals against direct evaluations") {
  SECTION("orthant") {
    LinearityRegion r;
    r.constraints = {{rat(-1), rat(0), rat(0)}, {rat(0), rat(-1), rat(0)}, {rat(0), rat(0), rat(-1)}};
    r.form = {rat(-1), rat(-1), rat(-1)};
    CHECK(integrate_region(r) == 1);
    r.form = {rat(-2), rat(-3), rat(-5)};
    CHECK(integrate_region(r) == rat(1, 30));
  }
  SECTION("wedge 0 <= y <= x") {
    LinearityRegion r;
    r.constraints = {{rat(0), rat(-1)}, {rat(-1), rat(1)}};
    // rays (1,0) and (1,1): integral is 1/((-a)(-a-b))
    Rational a = rat(-3, 2), b = rat(1, 3);
    r.form = {a, b};
    CHECK(integrate_region(r) == 1 / (-a) / (-a - b));
  }
  SECTION("square cone needs a triangulated cross-section") {
    LinearityRegion r;
    r.constraints = {{rat(1), rat(0), rat(-1)},
                     {rat(-1), rat(0), rat(-1)},
                     {rat(0), rat(1), rat(-1)},
                     {rat(0), rat(-1), rat(-1)}};
    r.form = {rat(0), rat(0), rat(-1)};
    // slice at height z is a square of area 4z^2, so int 4 z^2 e^{-z} dz = 8
    CHECK(integrate_region(r) == 8);
  }
  SECTION("diamond cone") {
    LinearityRegion r;
    r.constraints = {{rat(1), rat(1), rat(-1)},
                     {rat(1), rat(-1), rat(-1)},
                     {rat(-1), rat(1), rat(-1)},
                     {rat(-1), rat(-1), rat(-1)}};
    r.form = {rat(0), rat(0), rat(-1)};
    // slice at height z is a diamond of area 2z^2, so int 2 z^2 e^{-z} dz = 4
    CHECK(integrate_region(r) == 4);
  }
}

TEST_CASE("divergent cone integrals are reported") {
  SECTION("region with a line") {
    LinearityRegion r;
    r.constraints = {{rat(1), rat(0)}};
    r.form = {rat(-1), rat(0)};
    CHECK_THROWS_AS(integrate_region(r), Divergent);
  }
  SECTION("growth along a ray") {
    LinearityRegion r;
    r.constraints = {{rat(-1), rat(0)}, {rat(0), rat(-1)}};
    r.form = {rat(1), rat(-1)};
    CHECK_THROWS_AS(integrate_region(r), Divergent);
  }
  SECTION("flat direction leaves a pole") {
    LinearityRegion r;
    r.constraints = {{rat(-1), rat(0)}, {rat(0), rat(-1)}};
    r.form = {rat(-1), rat(0)};
    CHECK_THROWS_AS(integrate_region(r), Divergent);
  }
}

TEST_CASE("amplitudes at the uniform point") {
  struct Expect {
    int k, n;
    long total;
    long regions;
    std::map<Rational, long> histogram;
  };
  const std::vector<Expect> cases = {
      {2, 4, 2, 2, {{rat(1), 2}}},
      {2, 5, 5, 5, {{rat(1), 5}}},
      {2, 6, 14, 12, {{rat(1), 10}, {rat(2), 2}}},
      {2, 7, 42, 28, {{rat(1), 18}, {rat(2), 6}, {rat(3), 4}}},
      {3, 6, 42, 27, {{rat(1), 16}, {rat(2), 10}, {rat(6), 1}}},
  };
  for (const auto& e : cases) {
    CAPTURE(e.k, e.n);
    auto amp = evaluate_amplitude(pk_point(e.k, e.n));
    CHECK(amp.total == e.total);
    CHECK(amp.regions.size() == static_cast<std::size_t>(e.regions));
    CHECK(amp.histogram == e.histogram);
  }
}

TEST_CASE("amplitude totals equal the two-parameter Catalan numbers") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{
           {2, 8}, {2, 9}, {2, 10}, {3, 5}, {4, 6}, {4, 7}}) {
    CAPTURE(k, n);
    auto amp = evaluate_amplitude(pk_point(k, n));
    CHECK(amp.total == Rational(catalan_number(k, n - k)));
  }
}

TEST_CASE("region counts for k=2 follow n 2^(n-5)") {
  for (int n = 5; n <= 10; ++n) {
    CAPTURE(n);
    auto amp = evaluate_amplitude(pk_point(2, n));
    CHECK(amp.regions.size() == static_cast<std::size_t>(n) << (n - 5));
    CHECK(amp.total == Rational(catalan_number(2, n - 2)));
  }
}

TEST_CASE("region histogram for (3,7)") {
  auto amp = evaluate_amplitude(pk_point(3, 7));
  CHECK(amp.total == 462);
  CHECK(amp.regions.size() == 128);
  std::map<Rational, long> expect = {{rat(1), 21}, {rat(2), 38}, {rat(3), 32}, {rat(4), 8},
                                     {rat(5), 14}, {rat(6), 2},  {rat(8), 6},  {rat(11), 3},
                                     {rat(12), 2}, {rat(25), 2}};
  CHECK(amp.histogram == expect);
}

TEST_CASE("region histogram for (3,8)") {
  auto amp = evaluate_amplitude(pk_point(3, 8));
  CHECK(amp.total == 6006);
  CHECK(amp.regions.size() == 557);
  std::map<Rational, long> expect = {
      {rat(1), 23},  {rat(2), 42},  {rat(3), 46},  {rat(4), 57},  {rat(5), 64},  {rat(6), 47},
      {rat(7), 26},  {rat(8), 18},  {rat(9), 52},  {rat(10), 26}, {rat(11), 11}, {rat(12), 20},
      {rat(14), 18}, {rat(15), 6},  {rat(16), 8},  {rat(17), 10}, {rat(18), 8},  {rat(20), 10},
      {rat(21), 10}, {rat(24), 4},  {rat(25), 10}, {rat(26), 6},  {rat(28), 2},  {rat(30), 7},
      {rat(32), 2},  {rat(33), 2},  {rat(40), 4},  {rat(42), 2},  {rat(49), 4},  {rat(54), 2},
      {rat(57), 2},  {rat(75), 2},  {rat(77), 2},  {rat(93), 1},  {rat(98), 2},  {rat(169), 1}};
  CHECK(amp.histogram == expect);
}

TEST_CASE("the amplitude does not depend on bookkeeping choices") {
  auto reference = evaluate_amplitude(pk_point(3, 6));
  SECTION("choice of frozen torus column") {
    for (int col = 2; col <= 3; ++col) {
      auto amp = evaluate_amplitude(pk_point(3, 6), col);
      CHECK(amp.total == reference.total);
      CHECK(amp.regions.size() == reference.regions.size());
      CHECK(amp.histogram == reference.histogram);
    }
  }
  SECTION("order of the min terms") {
    TropicalIntegrand F = build_integrand(pk_point(3, 6));
    std::reverse(F.mins.begin(), F.mins.end());
    auto regions = enumerate_regions(F);
    CHECK(regions.size() == reference.regions.size());
    Rational total = 0;
    std::map<Rational, long> hist;
    for (const auto& reg : regions) {
      Rational v = integrate_region(reg);
      total += v;
      ++hist[v];
    }
    CHECK(total == reference.total);
    CHECK(hist == reference.histogram);
  }
}

namespace {

// All triangulations of the polygon on contiguous labels i..j (edge (i,j)
// closes it), each reported as its list of diagonals.
std::vector<std::vector<std::pair<int, int>>> polygon_triangulations(int i, int j) {
  if (j - i < 2) return {{}};
  std::vector<std::vector<std::pair<int, int>>> out;
  for (int t = i + 1; t < j; ++t) {
    auto L = polygon_triangulations(i, t);
    auto R = polygon_triangulations(t, j);
    for (const auto& l : L)
      for (const auto& r : R) {
        std::vector<std::pair<int, int>> d;
        if (t - i >= 2) d.emplace_back(i, t);
        if (j - t >= 2) d.emplace_back(t, j);
        d.insert(d.end(), l.begin(), l.end());
        d.insert(d.end(), r.begin(), r.end());
        out.push_back(std::move(d));
      }
  }
  return out;
}

// (p_i + ... + p_{j-1})^2 expanded in Mandelstam invariants.
Rational planar_invariant(const KinematicPoint& s, int i, int j) {
  Rational acc = 0;
  for (int a = i; a < j; ++a)
    for (int b = a + 1; b < j; ++b) acc += s.value(Subset{a, b});
  return acc;
}

}  // namespace

TEST_CASE("k=2 amplitude equals the sum over polygon triangulations") {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> pos(1, 9);
  for (int n : {5, 6, 7}) {
    auto tris = polygon_triangulations(1, n);
    REQUIRE(Rational(static_cast<long>(tris.size())) == Rational(catalan_number(2, n - 2)));
    const auto& tab = subset_table(2, n);
    int points = n == 5 ? 6 : 7;
    for (int trial = 0; trial < points; ++trial) {
      std::map<Subset, Rational> targets;
      for (int idx : tab.nonfrozen) targets[tab.subsets[idx]] = rat(pos(rng), pos(rng));
      KinematicPoint s = solve_eta_system(2, n, targets);
      // The planar coordinates are the eta values with labels shifted by one.
      for (const auto& [J, v] : targets) {
        Subset shifted = {mod1(J[0] + 1, n), mod1(J[1] + 1, n)};
        std::sort(shifted.begin(), shifted.end());
        CHECK(planar_invariant(s, shifted[0], shifted[1]) == v);
      }
      Rational feynman = 0;
      for (const auto& T : tris) {
        Rational term = 1;
        for (auto [a, b] : T) term /= planar_invariant(s, a, b);
        feynman += term;
      }
      CHECK(evaluate_amplitude(s).total == feynman);
    }
  }
}

TEST_CASE("conical kinematics integrate to the product formula") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> pos(1, 9);
  SECTION("unit weights") {
    Matrix<Rational> alpha(1, 3, rat(1));
    auto amp = evaluate_amplitude(conical_point(2, 5, alpha, true));
    CHECK(amp.total == 3);
  }
  SECTION("random positive weights") {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {2, 6}, {3, 6}})
      for (int trial = 0; trial < 10; ++trial) {
        Matrix<Rational> alpha(k - 1, n - k);
        Rational expect = 1;
        for (int i = 0; i < k - 1; ++i) {
          Rational row_sum = 0;
          for (int j = 0; j < n - k; ++j) {
            alpha(i, j) = rat(pos(rng), pos(rng));
            row_sum += alpha(i, j);
            expect /= alpha(i, j);
          }
          expect *= row_sum;
        }
        CAPTURE(k, n, trial);
        auto amp = evaluate_amplitude(conical_point(k, n, alpha, true));
        CHECK(amp.total == expect);
      }
  }
}
