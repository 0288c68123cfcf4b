#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_n).  An element is a
// polynomial in q = exp(2*pi*i/n) stored in the canonical basis
// 1, q, ..., q^{phi(n)-1} (reduced modulo the n-th cyclotomic polynomial),
// so equality and the zero test are plain coefficient checks.  A complex
// double embedding is kept alongside for cross-checking and for the
// floating-point backend.

#include <algorithm>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "pk/rational.hpp"

namespace pk {

namespace poly {

// Dense little-endian polynomials.  Integer version is only used to build
// cyclotomic polynomials; everything else runs over Rational.

inline void trim(std::vector<Int>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials (used where b | a and b is monic).
inline std::vector<Int> div_exact(std::vector<Int> a, const std::vector<Int>& b) {
  trim(a);
  if (a.empty()) return {};
  if (a.size() < b.size()) throw std::logic_error("poly::div_exact: degree underflow");
  std::vector<Int> q(a.size() - b.size() + 1, Int(0));
  for (int i = static_cast<int>(a.size()) - 1; i >= static_cast<int>(b.size()) - 1; --i) {
    if (a[i] == 0) continue;
    Int f = a[i] / b.back();
    q[i - (b.size() - 1)] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[i - (b.size() - 1) + j] -= f * b[j];
  }
  trim(a);
  if (!a.empty()) throw std::logic_error("poly::div_exact: nonzero remainder");
  return q;
}

inline void trim(std::vector<Rational>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int degree(const std::vector<Rational>& p) { return static_cast<int>(p.size()) - 1; }

// Division with remainder over Q.
inline void divmod(std::vector<Rational> a, const std::vector<Rational>& b,
                   std::vector<Rational>& quot, std::vector<Rational>& rem) {
  trim(a);
  quot.assign(a.size() >= b.size() && !a.empty() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    quot[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
    a.pop_back();  // leading term cancels exactly
    trim(a);
  }
  rem = std::move(a);
}

}  // namespace poly

// Coefficients of Phi_n, little-endian, computed as (x^n - 1) / prod Phi_d
// over the proper divisors d of n.  Memoized.
inline const std::vector<Int>& cyclotomic_polynomial(int n) {
  static std::map<int, std::vector<Int>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Build recursively without re-entering the lock.
  std::vector<int> todo{n};
  while (!todo.empty()) {
    int m = todo.back();
    if (cache.count(m)) {
      todo.pop_back();
      continue;
    }
    bool ready = true;
    for (int d = 1; d < m; ++d)
      if (m % d == 0 && !cache.count(d)) {
        todo.push_back(d);
        ready = false;
      }
    if (!ready) continue;
    std::vector<Int> f(m + 1, Int(0));
    f[0] = -1;
    f[m] = 1;
    for (int d = 1; d < m; ++d)
      if (m % d == 0) f = poly::div_exact(std::move(f), cache[d]);
    cache[m] = std::move(f);
    todo.pop_back();
  }
  return cache[n];
}

// Immutable per-n data: reduction tables for powers of q and the complex
// embedding of each power.  Owned by a global registry.
struct CycField {
  int n = 1;
  int phi = 1;
  std::vector<Rational> modulus;                 // Phi_n, monic, size phi+1
  std::vector<std::vector<Rational>> qpow;       // q^m in the basis, m = 0..maxpow
  std::vector<std::complex<double>> embed_pow;   // exp(2 pi i m / n), m = 0..n-1

  explicit CycField(int order) : n(order) {
    const auto& phi_n = cyclotomic_polynomial(n);
    phi = static_cast<int>(phi_n.size()) - 1;
    modulus.assign(phi_n.begin(), phi_n.end());
    int maxpow = std::max(2 * phi - 2, n - 1);
    qpow.assign(maxpow + 1, {});
    qpow[0].assign(phi, Rational(0));
    qpow[0][0] = 1;
    for (int m = 1; m <= maxpow; ++m) {
      std::vector<Rational> v(phi, Rational(0));
      const auto& prev = qpow[m - 1];
      for (int t = 0; t + 1 < phi; ++t) v[t + 1] = prev[t];
      if (prev[phi - 1] != 0) {
        // x^phi = -(lower part of Phi_n)
        for (int t = 0; t < phi; ++t) v[t] -= prev[phi - 1] * modulus[t];
      }
      qpow[m] = std::move(v);
    }
    embed_pow.resize(n);
    for (int m = 0; m < n; ++m) {
      double a = 2.0 * std::numbers::pi * m / n;
      embed_pow[m] = {std::cos(a), std::sin(a)};
    }
  }
};

inline const CycField* cyc_field(int n) {
  static std::map<int, std::unique_ptr<CycField>> registry;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[n];
  if (!slot) slot = std::make_unique<CycField>(n);
  return slot.get();
}

class CyclotomicNumber {
 public:
  CyclotomicNumber() : c_(1, Rational(0)) {}
  CyclotomicNumber(int v) : c_(1, Rational(v)) {}                      // NOLINT
  CyclotomicNumber(const Rational& v) : c_(1, v) {}                    // NOLINT
  CyclotomicNumber(const CycField* f, std::vector<Rational> coeffs) : f_(f), c_(std::move(coeffs)) {
    if (static_cast<int>(c_.size()) != f_->phi) throw std::invalid_argument("coefficient count != phi(n)");
  }

  // q^e in Q(zeta_n).
  static CyclotomicNumber root_power(int n, long e) {
    const CycField* f = cyc_field(n);
    long m = e % n;
    if (m < 0) m += n;
    return CyclotomicNumber(f, f->qpow[m]);
  }

  static CyclotomicNumber constant(const CycField* f, const Rational& v) {
    std::vector<Rational> c(f->phi, Rational(0));
    c[0] = v;
    return CyclotomicNumber(f, std::move(c));
  }

  const CycField* field() const { return f_; }
  int order() const { return f_ ? f_->n : 1; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t t = 1; t < c_.size(); ++t)
      if (c_[t] != 0) return false;
    return true;
  }

  // Requires is_rational().
  Rational to_rational() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational: " + str());
    return c_[0];
  }

  std::complex<double> embed() const {
    if (!f_) return {to_double(c_[0]), 0.0};
    std::complex<double> z{0.0, 0.0};
    for (int t = 0; t < f_->phi; ++t)
      if (c_[t] != 0) z += to_double(c_[t]) * f_->embed_pow[t];
    return z;
  }

  CyclotomicNumber operator-() const {
    CyclotomicNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    auto [x, y] = promote(a, b);
    for (std::size_t t = 0; t < x.c_.size(); ++t) x.c_[t] += y.c_[t];
    return x;
  }
  friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    auto [x, y] = promote(a, b);
    for (std::size_t t = 0; t < x.c_.size(); ++t) x.c_[t] -= y.c_[t];
    return x;
  }
  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    auto [x, y] = promote(a, b);
    if (!x.f_) return CyclotomicNumber(x.c_[0] * y.c_[0]);
    const CycField* f = x.f_;
    std::vector<Rational> conv(2 * f->phi - 1, Rational(0));
    for (int s = 0; s < f->phi; ++s) {
      if (x.c_[s] == 0) continue;
      for (int t = 0; t < f->phi; ++t) {
        if (y.c_[t] == 0) continue;
        conv[s + t] += x.c_[s] * y.c_[t];
      }
    }
    std::vector<Rational> out(conv.begin(), conv.begin() + f->phi);
    for (int m = f->phi; m < static_cast<int>(conv.size()); ++m) {
      if (conv[m] == 0) continue;
      const auto& rep = f->qpow[m];
      for (int t = 0; t < f->phi; ++t) out[t] += conv[m] * rep[t];
    }
    return CyclotomicNumber(f, std::move(out));
  }
  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return a * b.inverse();
  }
  CyclotomicNumber& operator+=(const CyclotomicNumber& o) { return *this = *this + o; }
  CyclotomicNumber& operator-=(const CyclotomicNumber& o) { return *this = *this - o; }
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }
  CyclotomicNumber& operator/=(const CyclotomicNumber& o) { return *this = *this / o; }

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    return (a - b).is_zero();
  }
  friend bool operator!=(const CyclotomicNumber& a, const CyclotomicNumber& b) { return !(a == b); }

  CyclotomicNumber inverse() const {
    if (is_zero()) throw std::domain_error("division by zero cyclotomic");
    if (!f_) return CyclotomicNumber(Rational(1) / c_[0]);
    // Extended Euclid in Q[x] against the (irreducible) modulus:
    // maintain t_i * this == r_i (mod Phi_n).
    std::vector<Rational> r0 = f_->modulus, r1 = c_;
    poly::trim(r1);
    std::vector<Rational> t0, t1{Rational(1)};
    while (!r1.empty() && poly::degree(r1) > 0) {
      std::vector<Rational> q, r2;
      poly::divmod(r0, r1, q, r2);
      // t2 = t0 - q * t1
      std::vector<Rational> t2 = t0;
      t2.resize(std::max(t2.size(), q.size() + t1.size()), Rational(0));
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (std::size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
      }
      poly::trim(t2);
      r0 = std::move(r1);
      r1 = std::move(r2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r1.empty()) throw std::logic_error("modulus not irreducible?");  // gcd hit Phi_n
    // r1 is a nonzero constant: inverse = t1 / r1, reduced into the basis.
    std::vector<Rational> out(f_->phi, Rational(0));
    for (std::size_t m = 0; m < t1.size(); ++m) {
      if (t1[m] == 0) continue;
      Rational c = t1[m] / r1[0];
      const auto& rep = f_->qpow[m];
      for (int t = 0; t < f_->phi; ++t) out[t] += c * rep[t];
    }
    return CyclotomicNumber(f_, std::move(out));
  }

  // Galois automorphism q -> q^j, gcd(j, n) = 1.
  CyclotomicNumber galois(int j) const {
    if (!f_) return *this;
    int n = f_->n;
    j %= n;
    if (j < 0) j += n;
    if (std::gcd(j, n) != 1) throw std::invalid_argument("galois exponent not coprime to order");
    std::vector<Rational> out(f_->phi, Rational(0));
    for (int t = 0; t < f_->phi; ++t) {
      if (c_[t] == 0) continue;
      const auto& rep = f_->qpow[(static_cast<long>(t) * j) % n];
      for (int s = 0; s < f_->phi; ++s) out[s] += c_[t] * rep[s];
    }
    return CyclotomicNumber(f_, std::move(out));
  }

  // Complex conjugation.
  CyclotomicNumber conj() const { return f_ ? galois(f_->n - 1) : *this; }

  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (int t = static_cast<int>(c_.size()) - 1; t >= 0; --t) {
      if (c_[t] == 0) continue;
      Rational a = c_[t];
      if (out.empty()) {
        if (a < 0) out += "-", a = -a;
      } else {
        out += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
      }
      if (t == 0) {
        out += format_rational(a);
      } else {
        if (a != 1) out += format_rational(a) + "*";
        out += t == 1 ? "q" : "q^" + std::to_string(t);
      }
    }
    return out;
  }

 private:
  // Align two operands into a common field (at most one side may carry one).
  static std::pair<CyclotomicNumber, CyclotomicNumber> promote(const CyclotomicNumber& a,
                                                               const CyclotomicNumber& b) {
    if (a.f_ == b.f_) return {a, b};
    if (!a.f_) return {constant(b.f_, a.c_[0]), b};
    if (!b.f_) return {a, constant(a.f_, b.c_[0])};
    throw std::invalid_argument("mixing cyclotomic fields of different order");
  }

  const CycField* f_ = nullptr;  // null = plain rational constant
  std::vector<Rational> c_;      // size phi(n), or 1 when f_ is null
};

// cyc_is_zero(z): exact zero test (the canonical-form invariant makes this a
// coefficient check; see the algebra tests for the numeric cross-check).
inline bool cyc_is_zero(const CyclotomicNumber& z) { return z.is_zero(); }

}  // namespace pk
