#pragma once

// Exact rational scalars and vectors. Backed by GMP's mpq_class, which keeps
// every arithmetic result in lowest terms with a positive denominator.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mdl {

using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Formats as "p/q" with q > 0, including integers ("3/1", "0/1").
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "p/q", "p" and plain decimals such as "0.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(s.begin());
  Rational r;
  auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t decimals = s.size() - dot - 1;
    if (digits.empty() || digits == "-") throw ParseError("malformed decimal: " + s);
    Integer num;
    if (num.set_str(digits, 10) != 0) throw ParseError("malformed decimal: " + s);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, decimals);
    r = Rational(num, den);
  } else {
    if (r.set_str(s, 10) != 0) throw ParseError("malformed rational: " + s);
    if (r.get_den() == 0) throw ParseError("zero denominator: " + s);
  }
  r.canonicalize();
  return r;
}

inline Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

inline RationalVector to_rational(const IntegerVector& v) {
  return RationalVector(v.begin(), v.end());
}

inline std::vector<double> to_double(const RationalVector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

/// Smallest positive multiple of `v` with integer entries and gcd 1.
/// The zero vector maps to itself.
inline IntegerVector primitive_integer(const RationalVector& v) {
  Integer lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  IntegerVector out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer n = x.get_num() * (lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    out.push_back(std::move(n));
  }
  if (g > 1) {
    for (auto& n : out) n /= g;
  }
  return out;
}

/// Divides out the gcd of an integer vector in place.
inline void make_primitive(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

}  // namespace mdl
