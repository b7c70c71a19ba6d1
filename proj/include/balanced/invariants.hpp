// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "balanced/cone.hpp"
#include "balanced/intersection.hpp"
#include "balanced/linalg.hpp"

namespace balanced {

/// A Neron-Severi model: everything the invariants are computed from.
///
/// The effective cone is held with both descriptions already computed, so the
/// facet formula for a(X, L) never triggers a lazy dualization.
struct VarietyModel {
  std::string name;
  std::size_t dim = 0;
  std::size_t rank = 0;
  DivisorClass canonical;
  Cone eff_cone;
  std::optional<Cone> nef_cone;
  IntersectionTensor tensor;
  QMatrix curve_pairing;

  DivisorClass anticanonical() const { return -canonical; }
  CurveClass curve(QVector coords) const { return {std::move(coords), curve_pairing}; }

  friend bool operator==(const VarietyModel &, const VarietyModel &) = default;
};

struct InvariantReport {
  Rational a;
  int b = 0;
  DivisorClass adjoint;
  std::vector<std::size_t> witness_facets;
};

namespace detail {
inline void require_rank(const VarietyModel &x, const DivisorClass &d,
                         const char *what) {
  if (d.rank() != x.rank)
    throw Error(ErrorCode::RankMismatch,
                std::string(what) + " has rank " + std::to_string(d.rank()) +
                    " on a rank-" + std::to_string(x.rank) + " model");
}
} // namespace detail

/// Least t with tL + K_X in the effective cone, via the closed form
/// max_i -f_i(K) / f_i(L) over facet normals f_i. May be <= 0 when K_X is
/// itself pseudo-effective.
inline Rational a_invariant(const VarietyModel &x, const DivisorClass &l) {
  detail::require_rank(x, l, "L");
  const auto &facets = x.eff_cone.facet_normals();
  if (facets.empty())
    throw Error(ErrorCode::EmptyCone, "effective cone of " + x.name + " has no facets");
  for (const auto &e : x.eff_cone.equations())
    if (dot(e, l.coords) != 0)
      throw Error(ErrorCode::NotBig, to_string(l.coords) + " leaves the span of the cone");
  std::optional<Rational> best;
  for (const auto &f : facets) {
    const Rational fl = dot(f, l.coords);
    if (fl <= 0)
      throw Error(ErrorCode::NotBig,
                  to_string(l.coords) + " is not in the interior of the effective cone");
    Rational ratio = -dot(f, x.canonical.coords) / fl;
    if (!best || ratio > *best)
      best = std::move(ratio);
  }
  return *best;
}

inline DivisorClass adjoint_class(const VarietyModel &x, const DivisorClass &l,
                                  const Rational &a) {
  return a * l + x.canonical;
}

/// a, b and the facets certifying them.
inline InvariantReport compute_invariants(const VarietyModel &x,
                                          const DivisorClass &l) {
  InvariantReport r;
  r.a = a_invariant(x, l);
  if (r.a <= 0)
    throw Error(ErrorCode::NotUniruled,
                "a = " + to_string(r.a) + " <= 0; b is undefined when K_X is pseudo-effective");
  r.adjoint = adjoint_class(x, l, r.a);
  auto face = minimal_supported_face(x.eff_cone, r.adjoint.coords);
  r.b = static_cast<int>(face.codim);
  r.witness_facets = std::move(face.active_facets);
  return r;
}

/// Codimension of the minimal supported face containing a(X,L) L + K_X.
inline int b_invariant(const VarietyModel &x, const DivisorClass &l) {
  return compute_invariants(x, l).b;
}

/// a(C, L) = 2 / (L . C) for a rational curve; b is always 1.
inline Rational curve_a(const Rational &l_deg) {
  if (l_deg <= 0)
    throw Error(ErrorCode::NonpositiveDegree, "curve degree " + to_string(l_deg));
  return Rational(2) / l_deg;
}

struct ABPair {
  Rational a;
  int b = 0;
  friend bool operator==(const ABPair &, const ABPair &) = default;
};

/// Surface whose adjoint divisor has Iitaka dimension 1; `lf` is the L-degree
/// of a general fiber of the Iitaka fibration.
inline ABPair surface_invariants_kappa1(const Rational &lf) {
  if (lf <= 0)
    throw Error(ErrorCode::NonpositiveDegree, "fiber degree " + to_string(lf));
  return {Rational(2) / lf, 1};
}

/// Surface whose adjoint divisor has Iitaka dimension 0, computed on the
/// minimal model S': a = (-K_{S'} . C) / (L . C), b = rho(S').
inline ABPair surface_invariants_kappa0(const Rational &kc, const Rational &lc,
                                        int rho_min) {
  if (lc <= 0)
    throw Error(ErrorCode::NonpositiveDegree, "curve degree " + to_string(lc));
  return {kc / lc, rho_min};
}

/// rho minus the rank of the span of vertical and contracted divisors.
inline int b_via_vertical_divisors(const VarietyModel &x,
                                   const std::vector<DivisorClass> &vertical,
                                   const std::vector<DivisorClass> &contracted) {
  QMatrix rows;
  for (const auto *list : {&vertical, &contracted}) {
    for (const auto &d : *list) {
      detail::require_rank(x, d, "divisor");
      rows.push_back(d.coords);
    }
  }
  return static_cast<int>(x.rank) - static_cast<int>(span_rank(rows));
}

// --- Surfaces -----------------------------------------------------------

struct NegativeCurve {
  DivisorClass cls;
  Rational self_intersection;
  std::string label;
};

struct ZariskiDecomposition {
  DivisorClass positive;
  DivisorClass negative;
  std::vector<std::size_t> support; // indices into the supplied curve list
  QVector coefficients;             // parallel to `support`
  QMatrix gram;                     // intersection matrix of the support
};

inline Rational intersect(const VarietyModel &s, const DivisorClass &a,
                          const DivisorClass &b) {
  return eval_product(s.tensor, {a, b});
}

/// Zariski decomposition D = P + N by the iterative scheme: grow the support
/// with every curve meeting the current P negatively, then re-solve
/// N . C_i = D . C_i on the support.
inline ZariskiDecomposition
zariski_decompose(const VarietyModel &s, const DivisorClass &d,
                  const std::vector<NegativeCurve> &curves) {
  if (s.dim != 2)
    throw Error(ErrorCode::InvalidDimension, "Zariski decomposition needs a surface");
  detail::require_rank(s, d, "D");
  for (const auto &c : curves) {
    detail::require_rank(s, c.cls, "curve");
    if (intersect(s, c.cls, c.cls) != c.self_intersection)
      throw Error(ErrorCode::CorruptData,
                  "stated self-intersection of " + c.label + " disagrees with the tensor");
  }
  if (!contains(s.eff_cone, d.coords))
    throw Error(ErrorCode::NotPseudoEffective, to_string(d.coords));

  ZariskiDecomposition z;
  z.positive = d;
  z.negative = DivisorClass{zeros(s.rank)};
  for (;;) {
    bool grew = false;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (std::find(z.support.begin(), z.support.end(), i) != z.support.end())
        continue;
      if (intersect(s, z.positive, curves[i].cls) < 0) {
        z.support.push_back(i);
        grew = true;
      }
    }
    if (!grew)
      break;
    std::sort(z.support.begin(), z.support.end());

    const std::size_t k = z.support.size();
    z.gram.assign(k, zeros(k));
    QVector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto &ci = curves[z.support[i]].cls;
      rhs[i] = intersect(s, d, ci);
      for (std::size_t j = 0; j < k; ++j)
        z.gram[i][j] = intersect(s, ci, curves[z.support[j]].cls);
    }
    if (!linalg::is_negative_definite(z.gram))
      throw Error(ErrorCode::NonNegativeDefinite,
                  "support Gram matrix is not negative definite");
    auto x = linalg::solve(z.gram, rhs);
    if (!x)
      throw Error(ErrorCode::NonNegativeDefinite, "singular support Gram matrix");
    for (const auto &xi : *x)
      if (xi < 0)
        throw Error(ErrorCode::NonNegativeDefinite,
                    "negative coefficient in N; the curve list is inconsistent");
    z.coefficients = std::move(*x);
    z.negative = DivisorClass{zeros(s.rank)};
    for (std::size_t i = 0; i < k; ++i)
      z.negative = z.negative + z.coefficients[i] * curves[z.support[i]].cls;
    z.positive = d - z.negative;
  }
  return z;
}

/// On a rational surface the adjoint a(S,L) L + K_S is rigid exactly when its
/// Zariski positive part vanishes.
inline bool is_rigid_adjoint(const VarietyModel &s, const DivisorClass &l,
                             const std::vector<NegativeCurve> &curves) {
  if (s.dim != 2)
    throw Error(ErrorCode::InvalidDimension, "rigidity test is for surfaces only");
  const Rational a = a_invariant(s, l);
  auto z = zariski_decompose(s, adjoint_class(s, l, a), curves);
  return is_zero(z.positive.coords);
}

} // namespace balanced
