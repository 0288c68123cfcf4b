#pragma once

// Exact rational scalars shared by the whole library.  Backed by GMP through
// boost::multiprecision, so values are always reduced and denominators are
// always positive.  Also provides the "p/q" string form used by every
// serialization path.

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <complex>
#include <stdexcept>
#include <string>

namespace pk {

// Expression templates are disabled so these behave as plain value types in
// generic (templated-scalar) code.
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// "p", "-p" or "p/q" with q > 0 after reduction.
inline std::string format_rational(const Rational& r) { return r.str(); }

inline Rational parse_rational(const std::string& s) {
  auto bad = [&]() -> Rational {
    throw std::invalid_argument("malformed rational literal: '" + s + "'");
  };
  auto is_integer = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = (allow_sign && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) {
    if (!is_integer(s, true)) return bad();
    return Rational(Int(s[0] == '+' ? s.substr(1) : s));
  }
  std::string p = s.substr(0, slash), q = s.substr(slash + 1);
  if (!is_integer(p, true) || !is_integer(q, false)) return bad();
  if (p[0] == '+') p = p.substr(1);
  Int den(q);
  if (den == 0) return bad();
  return Rational(Int(p), den);  // canonicalized by the backend
}

}  // namespace pk
