// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "balanced/rational.hpp"

namespace balanced {

/// Numerical divisor class in the basis {L_1, ..., L_rho}.
struct DivisorClass {
  QVector coords;

  std::size_t rank() const { return coords.size(); }
  friend bool operator==(const DivisorClass &, const DivisorClass &) = default;
};

inline DivisorClass operator+(const DivisorClass &a, const DivisorClass &b) {
  return {a.coords + b.coords};
}
inline DivisorClass operator-(const DivisorClass &a, const DivisorClass &b) {
  return {a.coords - b.coords};
}
inline DivisorClass operator-(const DivisorClass &a) { return {-a.coords}; }
inline DivisorClass operator*(const Rational &c, const DivisorClass &a) {
  return {c * a.coords};
}

/// Curve class together with the pairing P[i][j] = L_i . l_j of the model it
/// lives on. The pairing is carried explicitly: on rank-2 Fano models the
/// curve basis is dual to the divisor basis only after swapping indices.
struct CurveClass {
  QVector coords;
  QMatrix pairing;

  friend bool operator==(const CurveClass &, const CurveClass &) = default;
};

/// Symmetric n-linear form on a rank-rho lattice, stored once per sorted
/// multi-index. Missing entries are zero.
class IntersectionTensor {
public:
  using Index = std::vector<std::size_t>;

  IntersectionTensor() = default;
  IntersectionTensor(std::size_t dim, std::size_t rank) : dim_(dim), rank_(rank) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rank_; }
  const std::map<Index, Rational> &entries() const { return entries_; }

  void set(Index idx, Rational value) {
    check(idx);
    std::sort(idx.begin(), idx.end());
    if (value == 0)
      entries_.erase(idx);
    else
      entries_[std::move(idx)] = std::move(value);
  }

  Rational at(Index idx) const {
    check(idx);
    std::sort(idx.begin(), idx.end());
    auto it = entries_.find(idx);
    return it == entries_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const IntersectionTensor &,
                         const IntersectionTensor &) = default;

private:
  void check(const Index &idx) const {
    if (idx.size() != dim_)
      throw Error(ErrorCode::ArityMismatch,
                  "multi-index of length " + std::to_string(idx.size()) +
                      " for a dimension-" + std::to_string(dim_) + " form");
    for (auto i : idx)
      if (i >= rank_)
        throw Error(ErrorCode::RankMismatch,
                    "index " + std::to_string(i) + " out of range for rank " +
                        std::to_string(rank_));
  }

  std::size_t dim_ = 0;
  std::size_t rank_ = 0;
  std::map<Index, Rational> entries_;
};

/// Multilinear expansion of D_1 ... D_n against the tensor.
inline Rational eval_product(const IntersectionTensor &t,
                             const std::vector<DivisorClass> &classes) {
  if (classes.size() != t.dim())
    throw Error(ErrorCode::ArityMismatch,
                "expected " + std::to_string(t.dim()) + " classes, got " +
                    std::to_string(classes.size()));
  for (const auto &c : classes)
    if (c.rank() != t.rank())
      throw Error(ErrorCode::RankMismatch, "class rank differs from tensor rank");

  // Walk every index tuple in [0, rank)^n, skipping zero coefficients early.
  const std::size_t n = t.dim();
  if (n == 0)
    return t.at({});
  Rational total = 0;
  IntersectionTensor::Index idx(n, 0);
  std::vector<Rational> partial(n + 1);
  partial[0] = 1;
  std::size_t depth = 0;
  std::vector<std::size_t> next(n, 0);
  while (true) {
    if (depth == n) {
      total += partial[n] * t.at(idx);
      --depth;
      continue;
    }
    if (next[depth] >= t.rank()) {
      next[depth] = 0;
      if (depth == 0)
        break;
      --depth;
      continue;
    }
    const std::size_t i = next[depth]++;
    const Rational &c = classes[depth].coords[i];
    if (c == 0)
      continue;
    idx[depth] = i;
    partial[depth + 1] = partial[depth] * c;
    ++depth;
  }
  return total;
}

/// Top self-intersection D^n.
inline Rational self_power(const IntersectionTensor &t, const DivisorClass &d) {
  return eval_product(t, std::vector<DivisorClass>(t.dim(), d));
}

/// Coefficients (alpha, beta) of S -> L^2 . S for S = n L_1 + m L_2.
struct SurfaceForm {
  Rational alpha;
  Rational beta;

  Rational operator()(const Rational &n, const Rational &m) const {
    return alpha * n + beta * m;
  }
  friend bool operator==(const SurfaceForm &, const SurfaceForm &) = default;
};

inline SurfaceForm surface_restriction_form(const IntersectionTensor &t,
                                            const DivisorClass &l) {
  if (t.dim() != 3 || t.rank() != 2)
    throw Error(ErrorCode::RankMismatch,
                "surface restriction form needs a rank-2 threefold tensor");
  DivisorClass l1{unit(2, 0)}, l2{unit(2, 1)};
  return {eval_product(t, {l, l, l1}), eval_product(t, {l, l, l2})};
}

/// D^T P C.
inline Rational pair(const DivisorClass &d, const CurveClass &c) {
  const std::size_t r = d.rank();
  if (c.pairing.size() != r)
    throw Error(ErrorCode::RankMismatch, "pairing matrix rank differs from divisor");
  Rational s = 0;
  for (std::size_t i = 0; i < r; ++i) {
    if (c.pairing[i].size() != c.coords.size())
      throw Error(ErrorCode::RankMismatch, "pairing matrix shape differs from curve");
    for (std::size_t j = 0; j < c.coords.size(); ++j)
      s += d.coords[i] * c.pairing[i][j] * c.coords[j];
  }
  return s;
}

/// Pairing of the rank-2 Fano models: L_1 . l_2 = L_2 . l_1 = 1.
inline QMatrix swap_pairing() { return {qvec({0, 1}), qvec({1, 0})}; }

inline QMatrix identity_pairing(std::size_t r) {
  QMatrix p;
  for (std::size_t i = 0; i < r; ++i)
    p.push_back(unit(r, i));
  return p;
}

/// -K = mu_2 L_1 + mu_1 L_2 for ray lengths mu_1, mu_2 in {1, 2, 3}.
inline DivisorClass anticanonical_from_rays(int mu1, int mu2) {
  auto ok = [](int mu) { return mu >= 1 && mu <= 3; };
  if (!ok(mu1) || !ok(mu2))
    throw Error(ErrorCode::InvalidLength,
                "ray lengths must lie in {1,2,3}, got " + std::to_string(mu1) +
                    "," + std::to_string(mu2));
  return {qvec({mu2, mu1})};
}

} // namespace balanced
