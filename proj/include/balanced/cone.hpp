// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "balanced/linalg.hpp"
#include "balanced/rational.hpp"

namespace balanced {

namespace dd {

/// Output of the double description method on {x : a . x >= 0 for all a}.
/// `rays` are the extreme rays modulo the lineality space spanned by
/// `lineality`.
struct Generators {
  QMatrix rays;
  QMatrix lineality;
};

namespace detail {

struct Ray {
  QVector v;
  std::vector<std::size_t> zeros; // sorted indices of tight inequalities
};

inline std::vector<std::size_t> intersect(const std::vector<std::size_t> &a,
                                          const std::vector<std::size_t> &b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline bool includes(const std::vector<std::size_t> &super,
                     const std::vector<std::size_t> &sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

/// Reduces `v` against a lineality basis in reduced row echelon form so that
/// every ray has a unique representative modulo the lineality space.
inline QVector reduce_modulo(QVector v, const QMatrix &rref_basis,
                             const std::vector<std::size_t> &pivots) {
  for (std::size_t i = 0; i < rref_basis.size(); ++i) {
    const Rational f = v[pivots[i]];
    if (f == 0)
      continue;
    for (std::size_t c = 0; c < v.size(); ++c)
      v[c] -= f * rref_basis[i][c];
  }
  return v;
}

} // namespace detail

/// Incremental double description: starts from the whole space and inserts
/// one half-space at a time. Adjacency uses the combinatorial zero-set test.
inline Generators double_description(const QMatrix &inequalities,
                                     std::size_t dim) {
  using detail::Ray;
  for (const auto &a : inequalities)
    require_length(a, dim, "inequality");

  QMatrix lin;
  for (std::size_t i = 0; i < dim; ++i)
    lin.push_back(unit(dim, i));
  std::vector<Ray> rays;
  std::vector<std::size_t> processed;

  for (std::size_t k = 0; k < inequalities.size(); ++k) {
    const QVector &a = inequalities[k];
    if (is_zero(a))
      continue;

    auto hit = std::find_if(lin.begin(), lin.end(),
                            [&](const QVector &l) { return dot(a, l) != 0; });
    if (hit != lin.end()) {
      QVector l0 = *hit;
      lin.erase(hit);
      Rational s0 = dot(a, l0);
      if (s0 < 0) {
        l0 = -l0;
        s0 = -s0;
      }
      for (auto &l : lin) {
        const Rational s = dot(a, l);
        if (s != 0)
          l = primitive(l - (s / s0) * l0);
      }
      for (auto &r : rays) {
        const Rational s = dot(a, r.v);
        if (s != 0)
          r.v = primitive(r.v - (s / s0) * l0);
        r.zeros.push_back(k);
      }
      rays.push_back(Ray{primitive(l0), processed});
      processed.push_back(k);
      continue;
    }

    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      if (val[i] > 0)
        pos.push_back(i);
      else if (val[i] < 0)
        neg.push_back(i);
    }

    std::vector<Ray> next;
    next.reserve(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (val[i] > 0) {
        next.push_back(rays[i]);
      } else if (val[i] == 0) {
        Ray r = rays[i];
        r.zeros.push_back(k);
        next.push_back(std::move(r));
      }
    }
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        auto common = detail::intersect(rays[p].zeros, rays[n].zeros);
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o != p && o != n && detail::includes(rays[o].zeros, common))
            adjacent = false;
        }
        if (!adjacent)
          continue;
        QVector combo = val[p] * rays[n].v - val[n] * rays[p].v;
        common.push_back(k);
        next.push_back(Ray{primitive(combo), std::move(common)});
      }
    }
    rays = std::move(next);
    processed.push_back(k);
  }

  Generators out;
  QMatrix basis = lin;
  auto pivots = linalg::rref(basis);
  for (const auto &b : basis)
    out.lineality.push_back(primitive(b));
  std::set<QVector> uniq;
  for (const auto &r : rays) {
    QVector v = primitive(detail::reduce_modulo(r.v, basis, pivots));
    if (!is_zero(v))
      uniq.insert(std::move(v));
  }
  out.rays.assign(uniq.begin(), uniq.end());
  return out;
}

} // namespace dd

/// Rational polyhedral cone held in both descriptions.
///
/// `facet_normals()` are primitive integer functionals, sorted
/// lexicographically; `equations()` is a basis of the orthogonal complement of
/// the linear span (empty for full-dimensional cones).
class Cone {
public:
  std::size_t ambient_rank() const { return ambient_rank_; }
  /// Extreme rays followed by +/- each lineality basis vector.
  const QMatrix &generators() const { return generators_; }
  const QMatrix &extreme_rays() const { return rays_; }
  const QMatrix &lineality_basis() const { return lineality_; }
  const QMatrix &facet_normals() const { return facets_; }
  const QMatrix &equations() const { return equations_; }
  std::size_t lineality_rank() const { return lineality_.size(); }
  std::size_t dimension() const { return ambient_rank_ - equations_.size(); }
  bool is_pointed() const { return lineality_.empty(); }
  bool is_full_dimensional() const { return equations_.empty(); }

  friend bool operator==(const Cone &, const Cone &) = default;

private:
  friend Cone detail_make_cone(std::size_t, dd::Generators, dd::Generators);

  std::size_t ambient_rank_ = 0;
  QMatrix rays_, lineality_, generators_, facets_, equations_;
};

inline Cone detail_make_cone(std::size_t rank, dd::Generators primal,
                             dd::Generators dual) {
  Cone c;
  c.ambient_rank_ = rank;
  c.rays_ = std::move(primal.rays);
  c.lineality_ = std::move(primal.lineality);
  c.generators_ = c.rays_;
  for (const auto &l : c.lineality_) {
    c.generators_.push_back(l);
    c.generators_.push_back(-l);
  }
  c.facets_ = std::move(dual.rays);
  c.equations_ = std::move(dual.lineality);
  return c;
}

namespace detail {
inline QMatrix with_negations(QMatrix rows, const QMatrix &both_signs) {
  for (const auto &v : both_signs) {
    rows.push_back(v);
    rows.push_back(-v);
  }
  return rows;
}
} // namespace detail

/// Cone generated by `rays`; facets come from dualizing with the double
/// description method, then generators are re-minimized by dualizing back.
inline Cone cone_from_generators(const QMatrix &rays, std::size_t ambient_rank) {
  for (const auto &r : rays)
    require_length(r, ambient_rank, "ray");
  auto dual = dd::double_description(rays, ambient_rank);
  auto primal = dd::double_description(
      detail::with_negations(dual.rays, dual.lineality), ambient_rank);
  return detail_make_cone(ambient_rank, std::move(primal), std::move(dual));
}

/// Cone {x : n . x >= 0 for every normal n}. Zero normals impose nothing.
inline Cone cone_from_facets(const QMatrix &normals, std::size_t ambient_rank) {
  for (const auto &n : normals)
    require_length(n, ambient_rank, "facet normal");
  auto primal = dd::double_description(normals, ambient_rank);
  auto dual = dd::double_description(
      detail::with_negations(primal.rays, primal.lineality), ambient_rank);
  return detail_make_cone(ambient_rank, std::move(primal), std::move(dual));
}

/// Facet test plus the linear-span test.
inline bool contains(const Cone &c, const QVector &v) {
  require_length(v, c.ambient_rank(), "vector");
  for (const auto &e : c.equations())
    if (dot(e, v) != 0)
      return false;
  for (const auto &f : c.facet_normals())
    if (dot(f, v) < 0)
      return false;
  return true;
}

inline std::size_t span_rank(const QMatrix &vectors) {
  return linalg::rank(vectors);
}

struct SupportedFace {
  Cone face;
  std::size_t codim = 0;
  /// Indices into the parent's facet_normals() vanishing on the class.
  std::vector<std::size_t> active_facets;
};

/// Smallest face of `c` containing `v`, cut out by the facet normals that
/// vanish on `v`. Throws NotMember when v is outside the cone.
inline SupportedFace minimal_supported_face(const Cone &c, const QVector &v) {
  if (!contains(c, v))
    throw Error(ErrorCode::NotMember, to_string(v) + " is not in the cone");
  SupportedFace out;
  const auto &facets = c.facet_normals();
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (dot(facets[i], v) == 0)
      out.active_facets.push_back(i);
  QMatrix face_gens;
  for (const auto &g : c.generators()) {
    bool on_face = std::all_of(
        out.active_facets.begin(), out.active_facets.end(),
        [&](std::size_t i) { return dot(facets[i], g) == 0; });
    if (on_face)
      face_gens.push_back(g);
  }
  out.codim = c.ambient_rank() - span_rank(face_gens);
  out.face = cone_from_generators(face_gens, c.ambient_rank());
  return out;
}

/// Nonnegative coefficients expressing `target` in `rays`, found by a phase-one
/// simplex over exact rationals with Bland's rule. Independent of the facet
/// description, so it doubles as a membership oracle.
inline std::optional<QVector> nonneg_combination(const QVector &target,
                                                 const QMatrix &rays) {
  const std::size_t d = target.size();
  const std::size_t m = rays.size();
  for (const auto &r : rays)
    require_length(r, d, "ray");
  if (d == 0)
    return zeros(m);

  // Columns: m ray coefficients, then d artificials, then the right-hand side.
  const std::size_t width = m + d + 1;
  QMatrix t(d, zeros(width));
  std::vector<std::size_t> basis(d);
  for (std::size_t i = 0; i < d; ++i) {
    const bool flip = target[i] < 0;
    for (std::size_t j = 0; j < m; ++j)
      t[i][j] = flip ? -rays[j][i] : rays[j][i];
    t[i][m + i] = 1;
    t[i][width - 1] = flip ? -target[i] : target[i];
    basis[i] = m + i;
  }
  // Reduced costs of the phase-one objective (sum of artificials).
  QVector cost = zeros(width);
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= m && j < m + d)
      continue;
    for (std::size_t i = 0; i < d; ++i)
      cost[j] -= t[i][j];
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width)
      break;
    std::size_t leave = d;
    Rational best;
    for (std::size_t i = 0; i < d; ++i) {
      if (t[i][enter] <= 0)
        continue;
      Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == d || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == d)
      break; // unbounded direction; cannot happen for a bounded phase-one
    const Rational piv = t[leave][enter];
    for (auto &x : t[leave])
      x /= piv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == leave || t[i][enter] == 0)
        continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j)
        cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  // -cost[rhs] is the remaining artificial mass.
  if (cost[width - 1] != 0)
    return std::nullopt;
  QVector coeffs = zeros(m);
  for (std::size_t i = 0; i < d; ++i)
    if (basis[i] < m)
      coeffs[basis[i]] = t[i][width - 1];
  return coeffs;
}

} // namespace balanced
