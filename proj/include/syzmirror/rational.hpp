#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "syzmirror/errors.hpp"

namespace syz {

using Integer = mpz_class;
using Rational = mpq_class;
using ZVec = std::vector<Integer>;
using QVec = std::vector<Rational>;
using ZMat = std::vector<ZVec>;
using QMat = std::vector<QVec>;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

// "p/q" in lowest terms, plain "p" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& s) {
  auto bad = [&]() { return InputError("malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  auto check_int = [&](const std::string& t) {
    std::size_t i = 0;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) throw bad();
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw bad();
  };
  std::string num = s.substr(0, slash);
  check_int(num);
  if (num[0] == '+') num = num.substr(1);
  Integer p(num, 10);
  if (slash == std::string::npos) return Rational(p);
  std::string den = s.substr(slash + 1);
  check_int(den);
  if (den[0] == '+') den = den.substr(1);
  Integer q(den, 10);
  if (q == 0) throw bad();
  return make_rational(p, q);
}

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Integer content(const ZVec& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline bool is_zero(const ZVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

inline bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

inline ZVec primitive(ZVec v) {
  Integer g = content(v);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

inline QVec to_q(const ZVec& v) { return QVec(v.begin(), v.end()); }

inline bool is_integral(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.get_den() == 1; });
}

inline ZVec to_z(const QVec& v) {
  ZVec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x.get_den() != 1) throw InvariantError("expected an integral vector");
    out.push_back(x.get_num());
  }
  return out;
}

// Smallest positive integer multiple that is a primitive integer vector.
inline ZVec clear_denominators(const QVec& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  ZVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_num() * (l / x.get_den()));
  return primitive(std::move(out));
}

inline Integer dot(const ZVec& a, const ZVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const ZVec& a, const QVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational dot(const QVec& a, const ZVec& b) { return dot(b, a); }

template <class V>
V add(const V& a, const V& b) {
  V out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

template <class V>
V sub(const V& a, const V& b) {
  V out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

template <class V, class S>
V scale(const V& a, const S& s) {
  V out(a);
  for (auto& x : out) x *= s;
  return out;
}

inline QVec barycenter(const std::vector<QVec>& pts) {
  if (pts.empty()) throw InvariantError("barycenter of an empty set");
  QVec c(pts[0].size(), Rational(0));
  for (const auto& p : pts)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (auto& x : c) x /= static_cast<long>(pts.size());
  return c;
}

inline std::vector<double> to_double(const QVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.get_d());
  return out;
}

}  // namespace syz
