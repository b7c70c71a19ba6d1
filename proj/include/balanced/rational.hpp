// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "balanced/error.hpp"

namespace balanced {

using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int,
                                  boost::multiprecision::et_off>;
/// GMP-backed rational; always kept in lowest terms with a positive
/// denominator.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

/// Exact coordinate vector in a fixed basis of rank `size()`.
using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

inline Rational make_rational(const Integer &num, const Integer &den) {
  if (den == 0)
    throw Error(ErrorCode::ParseError, "zero denominator");
  return Rational(num, den);
}

/// Boost's two-machine-int constructor goes through mpq_set_si, which takes
/// an unsigned denominator; route through Integer instead.
inline Rational ratio(long long num, long long den) {
  return make_rational(Integer(num), Integer(den));
}

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational &r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1)
    return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {
inline bool is_integer_literal(std::string_view s) {
  if (s.empty())
    return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size())
    return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}
} // namespace detail

/// Accepts "p", "p/q" with optional sign on p. Rejects zero denominators.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  auto num_part = text.substr(0, slash);
  if (!detail::is_integer_literal(num_part))
    throw Error(ErrorCode::ParseError,
                "malformed rational '" + std::string(text) + "'");
  std::string num_str(num_part);
  if (num_str[0] == '+')
    num_str.erase(0, 1);
  Integer num(num_str);
  if (slash == std::string_view::npos)
    return Rational(num);
  auto den_part = text.substr(slash + 1);
  if (!detail::is_integer_literal(den_part) || den_part[0] == '-' ||
      den_part[0] == '+')
    throw Error(ErrorCode::ParseError,
                "malformed rational '" + std::string(text) + "'");
  Integer den{std::string(den_part)};
  if (den == 0)
    throw Error(ErrorCode::ParseError,
                "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline QVector zeros(std::size_t n) { return QVector(n, Rational(0)); }

inline QVector unit(std::size_t n, std::size_t i) {
  QVector v = zeros(n);
  v[i] = 1;
  return v;
}

inline QVector qvec(std::initializer_list<long> xs) {
  QVector v;
  v.reserve(xs.size());
  for (long x : xs)
    v.emplace_back(x);
  return v;
}

inline void require_length(std::span<const Rational> v, std::size_t n,
                           std::string_view what) {
  if (v.size() != n)
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has length " + std::to_string(v.size()) +
                    ", expected " + std::to_string(n));
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "dot product of unequal lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

inline bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational &x) { return x == 0; });
}

inline QVector operator+(QVector a, const QVector &b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "sum of unequal lengths");
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] += b[i];
  return a;
}

inline QVector operator-(QVector a, const QVector &b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::DimensionMismatch, "difference of unequal lengths");
  for (std::size_t i = 0; i < a.size(); ++i)
    a[i] -= b[i];
  return a;
}

inline QVector operator*(const Rational &c, QVector a) {
  for (auto &x : a)
    x *= c;
  return a;
}

inline QVector operator-(QVector a) {
  for (auto &x : a)
    x = -x;
  return a;
}

/// Clears denominators and divides by the content, so that the result is a
/// primitive integer vector on the same ray. The zero vector is returned as is.
inline QVector primitive(const QVector &v) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (is_zero(v))
    return v;
  Integer l = 1;
  for (const auto &x : v)
    l = boost::multiprecision::lcm(l, Integer(denominator(x)));
  Integer g = 0;
  std::vector<Integer> ints;
  ints.reserve(v.size());
  for (const auto &x : v) {
    Integer k = numerator(x) * (l / denominator(x));
    g = boost::multiprecision::gcd(g, k);
    ints.push_back(std::move(k));
  }
  QVector out;
  out.reserve(v.size());
  for (auto &k : ints)
    out.emplace_back(k / g);
  return out;
}

inline std::string to_string(std::span<const Rational> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

} // namespace balanced
