// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <string>
#include <string_view>

#include "balanced/rational.hpp"

namespace balanced {

enum class CertificateKind {
  ReiderEffective,
  ReiderSeparates,
  SiuBound,
  AngehrnSiu,
  BendAndBreak,
  DeformationFloor,
  CurveDegreeBound,
  WBABBound,
};

constexpr std::string_view to_string(CertificateKind k) {
  switch (k) {
  case CertificateKind::ReiderEffective: return "ReiderEffective";
  case CertificateKind::ReiderSeparates: return "ReiderSeparates";
  case CertificateKind::SiuBound: return "SiuBound";
  case CertificateKind::AngehrnSiu: return "AngehrnSiu";
  case CertificateKind::BendAndBreak: return "BendAndBreak";
  case CertificateKind::DeformationFloor: return "DeformationFloor";
  case CertificateKind::CurveDegreeBound: return "CurveDegreeBound";
  case CertificateKind::WBABBound: return "WBABBound";
  }
  return "Unknown";
}

inline CertificateKind parse_certificate_kind(std::string_view s) {
  for (auto k : {CertificateKind::ReiderEffective, CertificateKind::ReiderSeparates,
                 CertificateKind::SiuBound, CertificateKind::AngehrnSiu,
                 CertificateKind::BendAndBreak, CertificateKind::DeformationFloor,
                 CertificateKind::CurveDegreeBound, CertificateKind::WBABBound})
    if (to_string(k) == s)
      return k;
  throw Error(ErrorCode::ParseError, "unknown certificate kind '" + std::string(s) + "'");
}

/// A numeric trigger compared against its threshold. `holds` is always
/// recomputed from (kind, threshold, attained); it is never set by hand.
struct Certificate {
  CertificateKind kind{};
  bool holds = false;
  Rational threshold;
  Rational attained;
  std::string caveats;

  friend bool operator==(const Certificate &, const Certificate &) = default;
};

namespace detail {
inline constexpr std::string_view kReiderEffectiveCaveat =
    "a base point of |K+L| at x forces an effective D through x with "
    "(L.D = 0, D^2 = -1) or (L.D = 1, D^2 = 0)";
inline constexpr std::string_view kReiderSeparatesCaveat =
    "failure to separate x, y forces an effective D through x and y with "
    "(L.D = 0, D^2 = -1 or -2), (L.D = 1, D^2 = 0 or -1) or (L.D = 2, D^2 = 0)";

inline bool compare(CertificateKind k, const Rational &attained,
                    const Rational &threshold) {
  switch (k) {
  case CertificateKind::ReiderEffective:
  case CertificateKind::ReiderSeparates:
  case CertificateKind::DeformationFloor:
    return attained >= threshold;
  case CertificateKind::AngehrnSiu:
    return attained > threshold;
  case CertificateKind::SiuBound:
  case CertificateKind::BendAndBreak:
  case CertificateKind::WBABBound:
    return attained <= threshold;
  case CertificateKind::CurveDegreeBound:
    return attained < threshold;
  }
  return false;
}

inline void require_dimension(int n) {
  if (n < 1)
    throw Error(ErrorCode::InvalidDimension, "dimension " + std::to_string(n));
}
inline void require_positive_a(const Rational &a) {
  if (a <= 0)
    throw Error(ErrorCode::NonpositiveA, "a = " + to_string(a));
}
} // namespace detail

inline Certificate certify(CertificateKind kind, Rational threshold,
                           Rational attained) {
  Certificate c;
  c.kind = kind;
  c.holds = detail::compare(kind, attained, threshold);
  c.threshold = std::move(threshold);
  c.attained = std::move(attained);
  if (kind == CertificateKind::ReiderEffective)
    c.caveats = detail::kReiderEffectiveCaveat;
  else if (kind == CertificateKind::ReiderSeparates)
    c.caveats = detail::kReiderSeparatesCaveat;
  return c;
}

/// K + L is effective (base point free up to the caveat configurations) once
/// L^2 >= 5 on the resolved surface.
inline Certificate reider_effective(const Rational &l2) {
  return certify(CertificateKind::ReiderEffective, Rational(5), l2);
}

/// |K + L| separates general points once L^2 >= 10.
inline Certificate reider_separates(const Rational &l2) {
  return certify(CertificateKind::ReiderSeparates, Rational(10), l2);
}

/// K + (n+1)L is pseudo-effective for L big and nef, so a(Y, L) <= n + 1.
inline Rational siu_bound(int n) {
  detail::require_dimension(n);
  return Rational(n + 1);
}

/// Lower bound that L^{dim Z} . Z must strictly exceed for every Z through x.
/// With `conjectural` the expected sharper bound n^{dim Z} is returned.
inline Rational angehrn_siu_threshold(int n, int dim_z, bool conjectural = false) {
  detail::require_dimension(n);
  if (dim_z < 1 || dim_z > n)
    throw Error(ErrorCode::InvalidDimension,
                "subvariety dimension " + std::to_string(dim_z) + " outside [1, " +
                    std::to_string(n) + "]");
  const Integer base = conjectural ? Integer(n) : Integer(n * (n + 1) / 2);
  Integer p = 1;
  for (int i = 0; i < dim_z; ++i)
    p *= base;
  return Rational(p);
}

/// Some dominating rational curve has -K . C <= n + 1 when K + L is not
/// pseudo-effective.
inline Rational bend_and_break_bound(int n) {
  detail::require_dimension(n);
  return Rational(n + 1);
}

/// A general member of a dominating family of rational curves has -K . C >= 2.
inline Rational deformation_floor() { return Rational(2); }

/// Curves with a(C, L) > a(X, L) have L . C below 2 / a(X, L).
inline Rational curve_degree_bound(const Rational &a_x) {
  detail::require_positive_a(a_x);
  return Rational(2) / a_x;
}

/// L^n <= delta(n) / a(X, L)^n; delta is supplied by the caller.
inline Rational wbab_degree_bound(int n, const Rational &a_x, const Rational &delta) {
  detail::require_dimension(n);
  detail::require_positive_a(a_x);
  if (delta <= 0)
    throw Error(ErrorCode::NonpositiveA, "delta = " + to_string(delta));
  Rational p = 1;
  for (int i = 0; i < n; ++i)
    p *= a_x;
  return delta / p;
}

} // namespace balanced
