// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "balanced/rational.hpp"

namespace balanced::linalg {

namespace detail {
inline std::size_t common_width(const QMatrix &rows) {
  if (rows.empty())
    return 0;
  std::size_t n = rows.front().size();
  for (const auto &r : rows)
    if (r.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "rows of unequal length");
  return n;
}
} // namespace detail

/// Reduced row echelon form in place. Returns the pivot columns.
inline std::vector<std::size_t> rref(QMatrix &m) {
  const std::size_t cols = detail::common_width(m);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0)
      ++sel;
    if (sel == m.size())
      continue;
    std::swap(m[row], m[sel]);
    const Rational inv = Rational(1) / m[row][col];
    for (auto &x : m[row])
      x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0)
        continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < cols; ++c)
        m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

/// Rank of the matrix whose rows are `rows`.
inline std::size_t rank(QMatrix rows) { return rref(rows).size(); }

/// Basis of {x : row . x = 0 for every row}, one primitive integer vector per
/// free column.
inline QMatrix kernel(QMatrix rows, std::size_t width) {
  for (const auto &r : rows)
    require_length(r, width, "row");
  auto pivots = rref(rows);
  std::vector<bool> is_pivot(width, false);
  for (auto p : pivots)
    is_pivot[p] = true;
  QMatrix basis;
  for (std::size_t free = 0; free < width; ++free) {
    if (is_pivot[free])
      continue;
    QVector v = zeros(width);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -rows[i][free];
    basis.push_back(primitive(v));
  }
  return basis;
}

inline Rational determinant(QMatrix m) {
  const std::size_t n = m.size();
  for (const auto &r : m)
    require_length(r, n, "determinant row");
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m[sel][col] == 0)
      ++sel;
    if (sel == n)
      return Rational(0);
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0)
        continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c)
        m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

/// Solves A x = b for square nonsingular A; nullopt when A is singular.
inline std::optional<QVector> solve(const QMatrix &a, const QVector &b) {
  const std::size_t n = a.size();
  require_length(b, n, "right-hand side");
  QMatrix aug;
  aug.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    require_length(a[i], n, "system row");
    QVector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto pivots = rref(aug);
  if (pivots.size() != n || (n > 0 && pivots.back() != n - 1))
    return std::nullopt;
  QVector x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = aug[i][n];
  return x;
}

/// Leading principal minors det(M[0..k, 0..k]) for k = 1..n.
inline std::vector<Rational> leading_minors(const QMatrix &m) {
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= m.size(); ++k) {
    QMatrix sub(k);
    for (std::size_t i = 0; i < k; ++i)
      sub[i].assign(m[i].begin(), m[i].begin() + static_cast<std::ptrdiff_t>(k));
    out.push_back(determinant(std::move(sub)));
  }
  return out;
}

/// Sylvester's criterion for negative definiteness: (-1)^k det_k > 0.
inline bool is_negative_definite(const QMatrix &m) {
  auto minors = leading_minors(m);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const bool odd = (k % 2) == 0; // minor of order k+1
    if (odd ? !(minors[k] < 0) : !(minors[k] > 0))
      return false;
  }
  return true;
}

} // namespace balanced::linalg
