#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "pk/cyclotomic.hpp"
#include "pk/matrix.hpp"
#include "pk/rational.hpp"

using pk::CyclotomicNumber;
using pk::Matrix;
using pk::Rational;

namespace {

std::mt19937 rng(20240817);

Rational random_rational(int max_num = 10, int max_den = 10) {
  std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
  return Rational(num(rng), den(rng));
}

CyclotomicNumber random_cyc(int n, int max_height = 10) {
  const pk::CycField* f = pk::cyc_field(n);
  std::vector<Rational> c(f->phi);
  for (auto& x : c) x = random_rational(max_height, max_height);
  return CyclotomicNumber(f, std::move(c));
}

// Independent determinant oracle: recursive cofactor expansion.
template <class T>
T det_cofactor(const Matrix<T>& m) {
  int n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  std::vector<int> all_rows, all_cols;
  for (int i = 1; i < n; ++i) all_rows.push_back(i);
  T acc = T(0);
  for (int j = 0; j < n; ++j) {
    if (m(0, j) == T(0)) continue;
    std::vector<int> cols;
    for (int c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    T term = m(0, j) * det_cofactor(m.select(all_rows, cols));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

TEST_CASE("rational parsing and formatting round-trip") {
  CHECK(pk::format_rational(pk::parse_rational("-1")) == "-1");
  CHECK(pk::format_rational(pk::parse_rational("4/6")) == "2/3");
  CHECK(pk::format_rational(pk::parse_rational("-12/8")) == "-3/2");
  CHECK(pk::format_rational(pk::parse_rational("+7")) == "7");
  CHECK(pk::parse_rational("3/4") == Rational(3, 4));
  CHECK_THROWS_AS(pk::parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(pk::parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(pk::parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(pk::parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(pk::parse_rational("1/-2"), std::invalid_argument);
  for (int i = 0; i < 100; ++i) {
    Rational r = random_rational(1000, 1000);
    CHECK(pk::parse_rational(pk::format_rational(r)) == r);
  }
}

TEST_CASE("cyclotomic polynomials") {
  auto coeffs = [](std::initializer_list<int> v) {
    std::vector<pk::Int> out;
    for (int x : v) out.emplace_back(x);
    return out;
  };
  CHECK(pk::cyclotomic_polynomial(1) == coeffs({-1, 1}));
  CHECK(pk::cyclotomic_polynomial(2) == coeffs({1, 1}));
  CHECK(pk::cyclotomic_polynomial(3) == coeffs({1, 1, 1}));
  CHECK(pk::cyclotomic_polynomial(7) == coeffs({1, 1, 1, 1, 1, 1, 1}));
  // Phi_12 = x^4 - x^2 + 1 (hand value, also the dividend check below).
  CHECK(pk::cyclotomic_polynomial(12) == coeffs({1, 0, -1, 0, 1}));

  // sum of deg Phi_d over d | n must be n.
  for (int n = 1; n <= 64; ++n) {
    int total = 0;
    for (int d = 1; d <= n; ++d)
      if (n % d == 0) total += static_cast<int>(pk::cyclotomic_polynomial(d).size()) - 1;
    CHECK(total == n);
  }
}

TEST_CASE("vanishing root-of-unity sums") {
  auto sum_of_powers = [](int n, std::initializer_list<int> exps) {
    CyclotomicNumber s(0);
    for (int e : exps) s += CyclotomicNumber::root_power(n, e);
    return s;
  };
  CHECK(pk::cyc_is_zero(sum_of_powers(8, {0, 1, 4, 5})));
  CHECK(pk::cyc_is_zero(sum_of_powers(8, {0, 2, 4, 6})));
  CHECK(pk::cyc_is_zero(sum_of_powers(12, {1, 4, 7, 8, 12})));
  CHECK_FALSE(pk::cyc_is_zero(sum_of_powers(8, {0, 1, 4, 6})));
  CHECK_FALSE(pk::cyc_is_zero(sum_of_powers(12, {1, 4, 6, 8, 12})));
}

TEST_CASE("cyclotomic field operations") {
  for (int n : {5, 7, 8, 9, 12}) {
    for (int rep = 0; rep < 25; ++rep) {
      CyclotomicNumber z = random_cyc(n), w = random_cyc(n);
      // conjugation is a ring homomorphism
      CHECK((z * w).conj() == z.conj() * w.conj());
      CHECK((z + w).conj() == z.conj() + w.conj());
      CHECK(z.conj().conj() == z);
      // q -> q^j for every unit j is an automorphism
      for (int j = 2; j < n; ++j) {
        if (std::gcd(j, n) != 1) continue;
        CHECK((z * w).galois(j) == z.galois(j) * w.galois(j));
      }
      if (!z.is_zero()) {
        CHECK(z * z.inverse() == CyclotomicNumber(1));
        CHECK((w / z) * z == w);
      }
    }
  }
  // q^a * q^b = q^{a+b mod n}
  for (int n : {6, 9}) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        CHECK(CyclotomicNumber::root_power(n, a) * CyclotomicNumber::root_power(n, b) ==
              CyclotomicNumber::root_power(n, a + b));
  }
}

TEST_CASE("embedding mirrors exact arithmetic") {
  for (int n : {5, 8, 12}) {
    for (int rep = 0; rep < 50; ++rep) {
      CyclotomicNumber z = random_cyc(n, 3);
      std::complex<double> e = z.embed();
      // z * conj(z) embeds to |embed(z)|^2
      double diff = std::abs(((z * z.conj()).embed()) - std::norm(e));
      CHECK(diff < 1e-12);
    }
  }
}

TEST_CASE("zero test agrees with the numeric embedding") {
  int checked = 0;
  for (int n : {5, 7, 8, 9, 12, 15}) {
    for (int rep = 0; rep < 167 && checked < 1000; ++rep, ++checked) {
      CyclotomicNumber z = random_cyc(n, 10);
      bool numeric_zero = std::abs(z.embed()) < 1e-10;
      CHECK(pk::cyc_is_zero(z) == numeric_zero);
      // exact cancellations must also embed to zero
      CyclotomicNumber d = z - z;
      CHECK(pk::cyc_is_zero(d));
      CHECK(std::abs(d.embed()) < 1e-10);
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("Bareiss determinant against cofactor oracle") {
  for (int rep = 0; rep < 20; ++rep) {
    Matrix<Rational> m(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) m(i, j) = random_rational();
    CHECK(pk::det_exact(m) == det_cofactor(m));
  }
  for (int rep = 0; rep < 5; ++rep) {
    Matrix<CyclotomicNumber> m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = random_cyc(5, 3);
    CHECK(pk::det_exact(m) == det_cofactor(m));
  }
  // singular input
  Matrix<Rational> s(3, 3);
  for (int j = 0; j < 3; ++j) {
    s(0, j) = Rational(j + 1);
    s(1, j) = Rational(2 * (j + 1));
    s(2, j) = random_rational();
  }
  CHECK(pk::det_exact(s) == Rational(0));
}

TEST_CASE("Vandermonde determinant factors over roots of unity") {
  // rows (1, w_a, w_a^2, ...) for distinct n-th roots: det = prod_{a<b} (w_b - w_a)
  int n = 7;
  std::vector<int> exps{1, 2, 4};
  int k = static_cast<int>(exps.size());
  Matrix<CyclotomicNumber> m(k, k);
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < k; ++j) m(a, j) = CyclotomicNumber::root_power(n, exps[a] * j);
  CyclotomicNumber expected(1);
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      expected *= CyclotomicNumber::root_power(n, exps[b]) - CyclotomicNumber::root_power(n, exps[a]);
  CHECK(pk::det_exact(m) == expected);
  CHECK(det_cofactor(m) == expected);
}

TEST_CASE("exact linear solve") {
  for (int rep = 0; rep < 10; ++rep) {
    int n = 6;
    Matrix<Rational> a(n, n);
    std::vector<Rational> x_true(n);
    for (int i = 0; i < n; ++i) {
      x_true[i] = random_rational();
      for (int j = 0; j < n; ++j) a(i, j) = random_rational();
    }
    if (pk::det_exact(a) == Rational(0)) continue;
    std::vector<Rational> b(n, Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b[i] += a(i, j) * x_true[j];
    CHECK(pk::solve_linear_exact(a, b) == x_true);
    // factorization reuse
    pk::LinearSolver<Rational> solver(a);
    CHECK(solver.solve(b) == x_true);
    std::vector<Rational> b2(n, Rational(1));
    auto x2 = solver.solve(b2);
    std::vector<Rational> check(n, Rational(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) check[i] += a(i, j) * x2[j];
    CHECK(check == b2);
  }

  Matrix<Rational> sing(2, 2);
  sing(0, 0) = 1;
  sing(0, 1) = 2;
  sing(1, 0) = 2;
  sing(1, 1) = 4;
  CHECK_THROWS_AS(pk::solve_linear_exact(sing, std::vector<Rational>{Rational(1), Rational(0)}),
                  pk::SingularSystem);
}

TEST_CASE("rank") {
  Matrix<Rational> m(3, 4);
  // row3 = row1 + row2
  for (int j = 0; j < 4; ++j) {
    m(0, j) = Rational(j + 1);
    m(1, j) = Rational((j * j) % 5);
    m(2, j) = m(0, j) + m(1, j);
  }
  CHECK(pk::rank_exact(m) == 2);
  CHECK(pk::rank_exact(Matrix<Rational>::identity(5)) == 5);
}
