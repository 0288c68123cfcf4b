#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "pk/io.hpp"
#include "pk/kinematics.hpp"

using namespace pk;

namespace {

std::mt19937 rng(20240823);

int rand_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational rand_rational() {
  return Rational(Int(rand_int(-9, 9)), Int(rand_int(1, 7)));
}

KinematicPoint random_conserving_point(int k, int n) {
  std::map<Subset, Rational> targets;
  const auto& tab = subset_table(k, n);
  for (int idx : tab.nonfrozen) targets[tab.subsets[idx]] = rand_rational();
  return solve_eta_system(k, n, targets);
}

using HeightMap = std::map<Subset, Rational>;

HeightMap scaled_heights(int k, int n, const Subset& J) { return height_vector(k, n, J); }

HeightMap combine(const HeightMap& a, const HeightMap& b, int sign_b) {
  HeightMap out = a;
  for (const auto& [key, v] : b) {
    out[key] += Rational(sign_b) * v;
    if (out[key] == 0) out.erase(key);
  }
  return out;
}

}  // namespace

TEST_CASE("planar functionals on lattice vectors") {
  std::vector<Rational> zero(6, Rational(0));
  for (int j = 1; j <= 6; ++j) REQUIRE(L_functional(j, zero) == 0);

  // x = e_3 - e_2 in R^4
  std::vector<Rational> x = {Rational(0), Rational(-1), Rational(1), Rational(0)};
  REQUIRE(L_functional(1, x) == 1);
  REQUIRE(L_functional(2, x) == 1);
  REQUIRE(L_functional(3, x) == -3);
  REQUIRE(L_functional(4, x) == 1);

  REQUIRE(rho({0, 1, 0, 0}, {0, 0, 1, 0}) == Rational(-3, 4));
  REQUIRE(rho({2, -1, 3, 0, 1}, {2, -1, 3, 0, 1}) == 0);
}

TEST_CASE("height vectors reproduce the octahedron table") {
  auto H = [](std::map<std::string, Rational> entries) {
    HeightMap h;
    for (auto& [key, v] : entries) h[parse_subset_key(key)] = v / 4;
    return h;
  };
  std::map<Subset, HeightMap> expected;
  expected[{1, 3}] = H({{"1,2", -1}, {"1,4", -3}, {"2,3", -3}, {"2,4", -2}, {"3,4", -1}});
  expected[{2, 4}] = H({{"1,2", -3}, {"1,3", -2}, {"1,4", -1}, {"2,3", -1}, {"3,4", -3}});
  expected[{1, 2}] = H({{"1,3", -3}, {"1,4", -2}, {"2,3", -2}, {"2,4", -1}, {"3,4", -4}});
  expected[{3, 4}] = H({{"1,2", -4}, {"1,3", -3}, {"1,4", -2}, {"2,3", -2}, {"2,4", -1}});
  expected[{1, 4}] = H({{"1,2", -2}, {"1,3", -1}, {"2,3", -4}, {"2,4", -3}, {"3,4", -2}});
  expected[{2, 3}] = H({{"1,2", -2}, {"1,3", -1}, {"1,4", -4}, {"2,4", -3}, {"3,4", -2}});

  for (const auto& [J, want] : expected) {
    HeightMap got = scaled_heights(2, 4, J);
    REQUIRE(got == want);
    REQUIRE(got.count(J) == 0);  // pinned vertex sits at height zero
    for (const auto& [I, v] : got) REQUIRE(v < 0);
  }

  // The crossing pair dominates each planar pair, with defect supported on a
  // single vertex: (h_13 + h_24) - (h_12 + h_34) = e^{13} and
  // (h_13 + h_24) - (h_14 + h_23) = e^{24}.  Disjoint supports make the
  // crossing sum the pointwise maximum of the two planar sums.
  HeightMap s_channel = combine(combine(expected[{1, 3}], expected[{2, 4}], +1),
                                combine(expected[{1, 2}], expected[{3, 4}], +1), -1);
  REQUIRE(s_channel == HeightMap{{{1, 3}, Rational(1)}});
  HeightMap t_channel = combine(combine(expected[{1, 3}], expected[{2, 4}], +1),
                                combine(expected[{1, 4}], expected[{2, 3}], +1), -1);
  REQUIRE(t_channel == HeightMap{{{2, 4}, Rational(1)}});
}

TEST_CASE("octahedron recurrence on random lattice translates") {
  for (int trial = 0; trial < 200; ++trial) {
    int n = rand_int(4, 7);
    int r = rand_int(-3, 3);
    std::vector<long> v(n), x(n);
    long sv = 0, sx = 0;
    for (int i = 0; i + 1 < n; ++i) {
      v[i] = rand_int(-4, 4);
      x[i] = rand_int(-4, 4);
      sv += v[i];
      sx += x[i];
    }
    v[n - 1] = (r - 2) - sv;
    x[n - 1] = r - sx;

    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = i + 1;
    std::shuffle(labels.begin(), labels.end(), rng);
    std::vector<int> abcd(labels.begin(), labels.begin() + 4);
    std::sort(abcd.begin(), abcd.end());
    int a = abcd[0], b = abcd[1], c = abcd[2], d = abcd[3];

    auto translate = [&](int p, int q) {
      std::vector<long> u = v;
      u[p - 1] += 1;
      u[q - 1] += 1;
      return u;
    };
    Rational lhs = rho(translate(a, c), x) + rho(translate(b, d), x);
    Rational s = rho(translate(a, b), x) + rho(translate(c, d), x);
    Rational t = rho(translate(a, d), x) + rho(translate(b, c), x);
    REQUIRE(lhs == std::max(s, t));
  }
}

TEST_CASE("planar kinematics points") {
  SECTION("(2,4) solved entrywise") {
    KinematicPoint p = pk_point(2, 4);
    std::map<Subset, Rational> want = {{{1, 2}, Rational(1)},  {{2, 3}, Rational(1)},
                                       {{3, 4}, Rational(1)},  {{1, 4}, Rational(1)},
                                       {{1, 3}, Rational(-2)}, {{2, 4}, Rational(-2)}};
    REQUIRE(p.values() == want);
    REQUIRE(p.conserves());
    REQUIRE(eta(p, {1, 3}) == 1);
    REQUIRE(eta(p, {2, 4}) == 1);
    for (Subset frozen : {Subset{1, 2}, {2, 3}, {3, 4}, {1, 4}}) REQUIRE(eta(p, frozen) == 0);
  }
  SECTION("(2,5) closed form") {
    KinematicPoint p = pk_point(2, 5);
    std::map<Subset, Rational> want;
    for (int i = 1; i <= 5; ++i) {
      want[window_subset(i, 2, 5)] = Rational(1);
      want[gap_window_subset(i, 2, 5)] = Rational(-1);
    }
    REQUIRE(p.values() == want);
    REQUIRE(p.value({1, 3}) == -1);
    REQUIRE(p.value({4, 5}) == 1);
    REQUIRE(p.conserves());
  }
  SECTION("(3,6) has unit eta on all nonfrozen triples") {
    KinematicPoint p = pk_point(3, 6);
    REQUIRE(p.conserves());
    const auto& tab = subset_table(3, 6);
    REQUIRE(tab.nonfrozen.size() == 14);
    for (int i = 0; i < (int)tab.subsets.size(); ++i)
      REQUIRE(eta(p, tab.subsets[i]) == (tab.frozen[i] ? 0 : 1));
  }
}

TEST_CASE("closed form equals the eta-system solution beyond n = 2k") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {2, 7}, {3, 7}, {4, 9}}) {
    const auto& tab = subset_table(k, n);
    std::map<Subset, Rational> ones;
    for (int idx : tab.nonfrozen) ones[tab.subsets[idx]] = Rational(1);
    KinematicPoint solved = solve_eta_system(k, n, ones);
    REQUIRE(solved.values() == pk_closed_form(k, n).values());
  }
}

TEST_CASE("unit eta at the planar point across k and n") {
  std::vector<std::pair<int, int>> pairs;
  for (int n = 5; n <= 12; ++n)
    for (int k = 2; k <= 5; ++k)
      if (n > 2 * k) pairs.push_back({k, n});
  for (auto [k, n] : pairs) {
    KinematicPoint p = pk_point(k, n);
    REQUIRE(p.conserves());
    const auto& tab = subset_table(k, n);
    for (int i = 0; i < (int)tab.subsets.size(); ++i)
      REQUIRE(eta(p, tab.subsets[i]) == (tab.frozen[i] ? 0 : 1));
  }
}

TEST_CASE("eta functional identities on the octahedron") {
  // eta_13 = s_23 and eta_24 = s_12 as functionals on K(2,4)
  for (int trial = 0; trial < 10; ++trial) {
    Rational t13 = rand_rational(), t24 = rand_rational();
    KinematicPoint s = solve_eta_system(2, 4, {{{1, 3}, t13}, {{2, 4}, t24}});
    REQUIRE(s.conserves());
    REQUIRE(eta(s, {1, 3}) == t13);
    REQUIRE(eta(s, {2, 4}) == t24);
    REQUIRE(s.value({2, 3}) == t13);
    REQUIRE(s.value({1, 2}) == t24);
  }
}

TEST_CASE("frozen eta vanishes on conserving points") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {3, 6}}) {
    for (int trial = 0; trial < 5; ++trial) {
      KinematicPoint s = random_conserving_point(k, n);
      REQUIRE(s.conserves());
      const auto& tab = subset_table(k, n);
      for (int i = 0; i < (int)tab.subsets.size(); ++i)
        if (tab.frozen[i]) REQUIRE(eta(s, tab.subsets[i]) == 0);
    }
  }
}

TEST_CASE("flip") {
  SECTION("involution on random conserving points") {
    for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {3, 6}, {4, 8}}) {
      for (int trial = 0; trial < (k == 2 ? 60 : 20); ++trial) {
        KinematicPoint s = random_conserving_point(k, n);
        KinematicPoint f = flip_point(s);
        REQUIRE(f.conserves());
        REQUIRE(flip_point(f) == s);
      }
    }
  }
  SECTION("fixes the planar point at k = 2") {
    for (int n : {5, 6, 7}) REQUIRE(flip_point(pk_point(2, n)) == pk_point(2, n));
  }
  SECTION("(3,6) flip has eta equal to interval count minus one") {
    KinematicPoint f = flip_point(pk_point(3, 6));
    REQUIRE(f.conserves());
    const auto& tab = subset_table(3, 6);
    for (const Subset& J : tab.subsets)
      REQUIRE(eta(f, J) == cyclic_intervals(J, 6) - 1);
  }
}

TEST_CASE("conical functionals match the planar chart on (3,6)") {
  auto chart = [](const Matrix<Rational>& a, const Subset& J) -> Rational {
    auto v = [&](int i, int j) { return a(i - 1, j - 1); };
    std::map<Subset, Rational> c;
    c[{1, 3, 4}] = v(1, 1);
    c[{2, 4, 5}] = v(1, 2);
    c[{3, 5, 6}] = v(1, 3);
    c[{1, 4, 5}] = v(1, 1) + v(1, 2);
    c[{2, 5, 6}] = v(1, 2) + v(1, 3);
    c[{1, 2, 4}] = v(2, 1);
    c[{2, 3, 5}] = v(2, 2);
    c[{3, 4, 6}] = v(2, 3);
    c[{1, 2, 5}] = v(2, 1) + v(2, 2);
    c[{2, 3, 6}] = v(2, 2) + v(2, 3);
    c[{1, 3, 5}] = v(1, 1) + v(2, 2);
    c[{1, 3, 6}] = v(1, 1) + v(2, 2) + v(2, 3);
    c[{1, 4, 6}] = v(1, 1) + v(1, 2) + v(2, 3);
    c[{2, 4, 6}] = v(1, 2) + v(2, 3);
    return c.at(J);
  };

  const auto& tab = subset_table(3, 6);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<Rational> a(2, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = rand_rational();
    for (int idx : tab.nonfrozen) {
      const Subset& J = tab.subsets[idx];
      REQUIRE(gamma_functional(3, 6, a, J, true) == chart(a, J));
    }
  }

  SECTION("embedding chart: eta = gamma' + 1 after solving") {
    Matrix<Rational> a(2, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = rand_rational();
    std::map<Subset, Rational> targets;
    for (int idx : tab.nonfrozen) {
      const Subset& J = tab.subsets[idx];
      targets[J] = gamma_functional(3, 6, a, J, true) + 1;
    }
    KinematicPoint s = solve_eta_system(3, 6, targets);
    for (int idx : tab.nonfrozen) {
      const Subset& J = tab.subsets[idx];
      REQUIRE(eta(s, J) == chart(a, J) + 1);
    }
  }

  SECTION("all-ones alpha gives eta_135 = 2") {
    Matrix<Rational> ones(2, 3);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) ones(i, j) = Rational(1);
    REQUIRE(gamma_functional(3, 6, ones, {1, 3, 5}, true) == 2);
    KinematicPoint s = conical_point(3, 6, ones, true);
    REQUIRE(eta(s, {1, 3, 5}) == 2);
    REQUIRE(eta(s, {1, 3, 4}) == 1);
  }

  SECTION("zero alpha gives the zero point") {
    Matrix<Rational> zero(2, 3);
    KinematicPoint s = conical_point(3, 6, zero, true);
    REQUIRE(s.values().empty());
  }
}

TEST_CASE("gamma and gamma' agree through successive differences") {
  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 6}, {3, 6}, {4, 8}}) {
    for (int trial = 0; trial < 10; ++trial) {
      Matrix<Rational> a(k - 1, n - k + 1);
      for (int i = 0; i < k - 1; ++i)
        for (int j = 0; j < n - k + 1; ++j) a(i, j) = rand_rational();
      Matrix<Rational> b(k - 1, n - k);
      for (int i = 0; i < k - 1; ++i)
        for (int j = 0; j < n - k; ++j) b(i, j) = a(i, j) - a(i, j + 1);
      const auto& tab = subset_table(k, n);
      for (int idx : tab.nonfrozen) {
        const Subset& J = tab.subsets[idx];
        REQUIRE(gamma_functional(k, n, a, J, false) == gamma_functional(k, n, b, J, true));
      }
    }
  }
}

TEST_CASE("eta system is nonsingular whenever it is small enough to solve") {
  auto binom = [](int n, int k) {
    long b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  for (int n = 4; n <= 20; ++n) {
    for (int k = 2; k <= n - 2; ++k) {
      if (binom(n, k) > 200) continue;
      const auto& tab = subset_table(k, n);
      std::map<Subset, Rational> ones;
      for (int idx : tab.nonfrozen) ones[tab.subsets[idx]] = Rational(1);
      KinematicPoint p(k, n);
      REQUIRE_NOTHROW(p = solve_eta_system(k, n, ones));
      REQUIRE(p.conserves());
      for (int t = 0; t < std::min<int>(5, (int)tab.nonfrozen.size()); ++t)
        REQUIRE(eta(p, tab.subsets[tab.nonfrozen[t]]) == 1);
    }
  }
}

TEST_CASE("json round trip") {
  std::string text = kinematic_to_json(pk_point(2, 4));
  REQUIRE(text ==
          "{\"k\":2,\"n\":4,\"s\":{\"1,2\":\"1\",\"1,3\":\"-2\",\"1,4\":\"1\","
          "\"2,3\":\"1\",\"2,4\":\"-2\",\"3,4\":\"1\"}}");
  REQUIRE(kinematic_from_json(text) == pk_point(2, 4));

  for (auto [k, n] : std::vector<std::pair<int, int>>{{2, 5}, {3, 6}}) {
    KinematicPoint s = random_conserving_point(k, n);
    KinematicPoint back = kinematic_from_json(kinematic_to_json(s));
    REQUIRE(back == s);
    REQUIRE(kinematic_to_json(back) == kinematic_to_json(s));
  }
}
