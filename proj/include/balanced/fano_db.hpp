// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "balanced/json_io.hpp"

namespace balanced {

enum class RayType { E1, E2, E3, E4, E5, C1, C2, D1, D2, D3 };

inline constexpr std::array<RayType, 10> kRayTypes = {
    RayType::E1, RayType::E2, RayType::E3, RayType::E4, RayType::E5,
    RayType::C1, RayType::C2, RayType::D1, RayType::D2, RayType::D3};

constexpr std::string_view to_string(RayType t) {
  constexpr std::array<std::string_view, 10> names = {"E1", "E2", "E3", "E4", "E5",
                                                       "C1", "C2", "D1", "D2", "D3"};
  return names[static_cast<std::size_t>(t)];
}

inline RayType parse_ray_type(std::string_view s) {
  for (auto t : kRayTypes)
    if (to_string(t) == s)
      return t;
  throw Error(ErrorCode::ParseError, "unknown ray type '" + std::string(s) + "'");
}

/// Length of the extremal ray: the minimal −K-degree of a rational curve on it.
constexpr int taxonomy_length(RayType t) {
  switch (t) {
  case RayType::E2:
  case RayType::C2:
  case RayType::D2: return 2;
  case RayType::D3: return 3;
  default: return 1;
  }
}

/// Dimension of the image of the contraction.
constexpr int contraction_base_dim(RayType t) {
  switch (t) {
  case RayType::C1:
  case RayType::C2: return 2;
  case RayType::D1:
  case RayType::D2:
  case RayType::D3: return 1;
  default: return 3;
  }
}

struct ExtremalRay {
  RayType ray_type{};
  int length = 0;
  std::string extremal_curve_note;

  friend bool operator==(const ExtremalRay &, const ExtremalRay &) = default;
};

inline ExtremalRay make_ray(RayType t, std::string note) {
  return {t, taxonomy_length(t), std::move(note)};
}

enum class FactKind {
  DominatingConicClass,
  DominatingLineLocus,
  FiberSurfaceProfile,
  ConicBundleLine,
  ExceptionalDivisor,
  NonRationalFiber,
};

inline constexpr std::array<FactKind, 6> kFactKinds = {
    FactKind::DominatingConicClass, FactKind::DominatingLineLocus,
    FactKind::FiberSurfaceProfile,  FactKind::ConicBundleLine,
    FactKind::ExceptionalDivisor,   FactKind::NonRationalFiber};

constexpr std::string_view to_string(FactKind k) {
  constexpr std::array<std::string_view, 6> names = {
      "DominatingConicClass", "DominatingLineLocus", "FiberSurfaceProfile",
      "ConicBundleLine",      "ExceptionalDivisor",  "NonRationalFiber"};
  return names[static_cast<std::size_t>(k)];
}

inline FactKind parse_fact_kind(std::string_view s) {
  for (auto k : kFactKinds)
    if (to_string(k) == s)
      return k;
  throw Error(ErrorCode::ParseError, "unknown annotation kind '" + std::string(s) + "'");
}

/// Curve facts carry a curve class; the rest carry a divisor class.
constexpr bool is_curve_fact(FactKind k) {
  return k == FactKind::DominatingConicClass || k == FactKind::DominatingLineLocus;
}

/// (a, b) are measured against −K restricted to the test object. An absent b
/// means it is not determined. `locus` names what the fact removes into the
/// exceptional set.
struct FactPayload {
  QVector cls;
  std::optional<Rational> a;
  std::optional<int> b;
  std::string locus;
  std::string note;

  friend bool operator==(const FactPayload &, const FactPayload &) = default;
};

struct GeometricFact {
  FactKind kind{};
  FactPayload payload;
  std::string citation;

  friend bool operator==(const GeometricFact &, const GeometricFact &) = default;
};

enum class VerdictLevel { Balanced, WeaklyBalanced, WeaklyABalanced, None, Unclassified };

constexpr std::string_view to_string(VerdictLevel v) {
  switch (v) {
  case VerdictLevel::Balanced: return "balanced";
  case VerdictLevel::WeaklyBalanced: return "weakly balanced";
  case VerdictLevel::WeaklyABalanced: return "weakly a-balanced";
  case VerdictLevel::None: return "none";
  case VerdictLevel::Unclassified: return "unclassified";
  }
  return "unclassified";
}

inline VerdictLevel parse_verdict(std::string_view s) {
  for (auto v : {VerdictLevel::Balanced, VerdictLevel::WeaklyBalanced,
                 VerdictLevel::WeaklyABalanced, VerdictLevel::None, VerdictLevel::Unclassified})
    if (to_string(v) == s)
      return v;
  throw Error(ErrorCode::ParseError, "unknown verdict '" + std::string(s) + "'");
}

namespace flags {
inline constexpr std::string_view kLargerConePossible = "larger_cone_possible";
inline constexpr std::string_view kSingularitiesOpen = "singularities_open";
inline constexpr std::string_view kVeryAmpleAssumed = "very_ample_assumed";
} // namespace flags

struct FanoRecord {
  VarietyModel model;
  std::optional<int> index;
  int degree = 0;
  std::vector<ExtremalRay> rays;
  std::vector<GeometricFact> annotations;
  Rational expected_a;
  int expected_b = 0;
  VerdictLevel expected_verdict = VerdictLevel::Unclassified;
  std::string exceptional_set;
  std::vector<std::string> flags;

  const std::string &name() const { return model.name; }
  std::size_t picard_rank() const { return model.rank; }
  bool has_flag(std::string_view f) const {
    return std::find(flags.begin(), flags.end(), f) != flags.end();
  }

  friend bool operator==(const FanoRecord &, const FanoRecord &) = default;
};

inline constexpr int kSchemaVersion = 1;

// --- validation -------------------------------------------------------------

inline std::vector<std::string> validate(const FanoRecord &rec) {
  std::vector<std::string> out;
  const auto &m = rec.model;
  auto bad = [&](std::string s) { out.push_back(std::move(s)); };

  if (m.name.empty())
    bad("empty name");
  if (m.dim != 3)
    bad("dim " + std::to_string(m.dim) + " is not 3");
  if (m.rank == 0)
    return out.push_back("rank 0"), out;
  if (m.canonical.coords.size() != m.rank)
    bad("canonical class has length " + std::to_string(m.canonical.coords.size()));
  if (m.tensor.rank() != m.rank || m.tensor.dim() != m.dim)
    bad("tensor shape does not match dim/rank");
  if (m.eff_cone.ambient_rank() != m.rank)
    bad("effective cone has the wrong ambient rank");
  bool square = m.curve_pairing.size() == m.rank;
  for (const auto &row : m.curve_pairing)
    square = square && row.size() == m.rank;
  if (!square)
    bad("curve pairing is not " + std::to_string(m.rank) + "x" + std::to_string(m.rank));
  if (!out.empty())
    return out;

  const auto ak = m.anticanonical();
  const Rational deg = self_power(m.tensor, ak);
  if (deg != rec.degree)
    bad("degree mismatch: (-K)^3 = " + to_string(deg) + " but degree = " +
        std::to_string(rec.degree));

  if (!m.eff_cone.is_pointed())
    bad("effective cone is not pointed");
  if (!m.eff_cone.is_full_dimensional())
    bad("effective cone is not full-dimensional");
  for (const auto &f : m.eff_cone.facet_normals())
    if (dot(f, ak.coords) <= 0) {
      bad("-K is not in the interior of the effective cone");
      break;
    }
  if (m.nef_cone) {
    if (m.nef_cone->ambient_rank() != m.rank)
      bad("nef cone has the wrong ambient rank");
    else
      for (const auto &g : m.nef_cone->generators())
        if (!contains(m.eff_cone, g)) {
          bad("nef cone is not contained in the effective cone");
          break;
        }
  }

  if (m.rank == 1) {
    if (!rec.index || *rec.index <= 0)
      bad("rank-1 record without a positive index");
    else if (ak.coords[0] != *rec.index)
      bad("-K = " + to_string(ak.coords[0]) + "L does not match index " +
          std::to_string(*rec.index));
    if (!rec.rays.empty())
      bad("rank-1 record lists extremal rays");
  } else if (m.rank == 2) {
    if (rec.index)
      bad("rank-2 record carries an index");
    if (rec.rays.size() != 2) {
      bad("rank-2 record needs exactly two extremal rays");
    } else {
      for (const auto &r : rec.rays)
        if (r.length != taxonomy_length(r.ray_type))
          bad("ray " + std::string(to_string(r.ray_type)) + " has length " +
              std::to_string(r.length) + ", taxonomy says " +
              std::to_string(taxonomy_length(r.ray_type)));
      try {
        auto expect = anticanonical_from_rays(rec.rays[0].length, rec.rays[1].length);
        if (!(expect == ak))
          bad("anticanonical mismatch: -K = " + to_string(ak.coords) +
              " but ray lengths give " + to_string(expect.coords));
      } catch (const Error &e) {
        bad(std::string("anticanonical mismatch: ") + e.what());
      }
    }
    if (m.curve_pairing != swap_pairing())
      bad("curve pairing is not the swap matrix");
  }

  for (std::size_t i = 0; i < rec.annotations.size(); ++i) {
    const auto &f = rec.annotations[i];
    const std::string tag = "annotation " + std::to_string(i) + " (" +
                            std::string(to_string(f.kind)) + ")";
    if (f.citation.empty())
      bad(tag + ": empty citation");
    if (f.payload.cls.size() != m.rank)
      bad(tag + ": class has length " + std::to_string(f.payload.cls.size()));
    if (f.payload.a && *f.payload.a <= 0)
      bad(tag + ": nonpositive a");
  }

  if (rec.expected_a != 1)
    bad("expected a is " + to_string(rec.expected_a) + ", not 1");
  if (rec.expected_b != static_cast<int>(m.rank))
    bad("expected b is " + std::to_string(rec.expected_b) + ", not the Picard rank");
  return out;
}

// --- builtin data -------------------------------------------------------------

namespace detail {

inline GeometricFact fact(FactKind k, QVector cls, std::string citation,
                          std::optional<Rational> a = std::nullopt,
                          std::optional<int> b = std::nullopt, std::string locus = {},
                          std::string note = {}) {
  return {k, {std::move(cls), std::move(a), b, std::move(locus), std::move(note)},
          std::move(citation)};
}

inline FanoRecord rank1(int r, int d, std::string name) {
  FanoRecord rec;
  auto &m = rec.model;
  m.name = std::move(name);
  m.dim = 3;
  m.rank = 1;
  m.canonical = DivisorClass{qvec({-r})};
  m.eff_cone = cone_from_generators({qvec({1})}, 1);
  m.nef_cone = m.eff_cone;
  m.tensor = IntersectionTensor(3, 1);
  m.tensor.set({0, 0, 0}, ratio(d, r * r * r));
  m.curve_pairing = identity_pairing(1);
  rec.index = r;
  rec.degree = d;
  rec.expected_a = 1;
  rec.expected_b = 1;
  return rec;
}

inline std::vector<FanoRecord> rank1_records() {
  std::vector<FanoRecord> out;
  {
    auto rec = rank1(4, 64, "rank1-P3");
    rec.expected_verdict = VerdictLevel::Balanced;
    out.push_back(std::move(rec));
  }
  {
    auto rec = rank1(3, 54, "rank1-quadric");
    rec.expected_verdict = VerdictLevel::Balanced;
    out.push_back(std::move(rec));
  }
  for (int d : {8, 16, 24, 32, 40}) {
    auto rec = rank1(2, d, "rank1-r2-d" + std::to_string(d));
    rec.annotations.push_back(fact(FactKind::DominatingConicClass, qvec({1}),
                                   "del Pezzo threefold: L-lines form a family covering X",
                                   std::nullopt, std::nullopt, {},
                                   "L-lines are -K-conics"));
    if (d <= 16) {
      // Members of |L| are del Pezzo surfaces of degree d/8 <= 2: canonical
      // singularities, or elliptic cones with (a, b) = (1, 1).
      rec.annotations.push_back(fact(FactKind::NonRationalFiber, qvec({1}),
                                     "members of |L|: canonical del Pezzo of low degree or "
                                     "cone over an elliptic curve",
                                     Rational(1), 1));
    }
    if (d == 8) {
      rec.expected_verdict = VerdictLevel::WeaklyABalanced;
      rec.flags.emplace_back(flags::kSingularitiesOpen);
    } else {
      rec.expected_verdict = VerdictLevel::WeaklyBalanced;
    }
    out.push_back(std::move(rec));
  }
  for (int d = 2; d <= 22; d += 2) {
    if (d == 20)
      continue;
    auto rec = rank1(1, d, "rank1-r1-d" + std::to_string(d));
    rec.annotations.push_back(fact(FactKind::DominatingLineLocus, qvec({1}),
                                   "index one: -K-lines form a one-dimensional family",
                                   std::nullopt, std::nullopt, "Z(X)",
                                   "lines sweep out a surface"));
    rec.annotations.push_back(fact(FactKind::DominatingConicClass, qvec({2}),
                                   "index one: -K-conics form a two-dimensional family "
                                   "covering X"));
    rec.exceptional_set = "Z(X)";
    if (d == 2) {
      rec.expected_verdict = VerdictLevel::Unclassified;
    } else if (d == 4) {
      rec.annotations.push_back(fact(FactKind::FiberSurfaceProfile, qvec({1}),
                                     "quartic threefold: hyperplane sections have nef "
                                     "adjoint or are cones swept by lines",
                                     Rational(1), std::nullopt, "Z(X)"));
      rec.expected_verdict = VerdictLevel::WeaklyABalanced;
      rec.flags.emplace_back(flags::kVeryAmpleAssumed);
      rec.flags.emplace_back(flags::kSingularitiesOpen);
    } else if (d <= 8) {
      rec.expected_verdict = VerdictLevel::WeaklyABalanced;
      rec.flags.emplace_back(flags::kSingularitiesOpen);
    } else {
      rec.expected_verdict = VerdictLevel::WeaklyBalanced;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

struct Rank2Spec {
  int degree;
  std::array<int, 4> tensor; // L1^3, L1^2 L2, L1 L2^2, L2^3
  ExtremalRay ray1, ray2;
  QMatrix eff;
  VerdictLevel verdict;
  std::string exceptional_set;
  std::vector<GeometricFact> facts;
};

inline FanoRecord rank2(Rank2Spec s) {
  FanoRecord rec;
  auto &m = rec.model;
  m.name = "rank2-d" + std::to_string(s.degree);
  m.dim = 3;
  m.rank = 2;
  m.canonical = -anticanonical_from_rays(s.ray1.length, s.ray2.length);
  m.eff_cone = cone_from_generators(s.eff, 2);
  m.nef_cone = cone_from_generators({qvec({1, 0}), qvec({0, 1})}, 2);
  m.tensor = IntersectionTensor(3, 2);
  m.tensor.set({0, 0, 0}, s.tensor[0]);
  m.tensor.set({0, 0, 1}, s.tensor[1]);
  m.tensor.set({0, 1, 1}, s.tensor[2]);
  m.tensor.set({1, 1, 1}, s.tensor[3]);
  m.curve_pairing = swap_pairing();
  rec.degree = s.degree;
  rec.rays = {std::move(s.ray1), std::move(s.ray2)};
  rec.annotations = std::move(s.facts);
  rec.expected_a = 1;
  rec.expected_b = 2;
  rec.expected_verdict = s.verdict;
  rec.exceptional_set = std::move(s.exceptional_set);
  bool has_e = false;
  for (const auto &r : rec.rays)
    has_e = has_e || contraction_base_dim(r.ray_type) == 3;
  if (has_e)
    rec.flags.emplace_back(flags::kLargerConePossible);
  return rec;
}

inline std::vector<FanoRecord> rank2_records() {
  using F = FactKind;
  const QMatrix quadrant = {qvec({1, 0}), qvec({0, 1})};
  const std::string f1_lines = "union of singular fibers of f₁";
  std::vector<FanoRecord> out;

  out.push_back(rank2({62,
                       {0, 1, 2, 4},
                       make_ray(RayType::C2, "fibers of the P1-bundle over P2"),
                       make_ray(RayType::E5, "lines in D = P2 with normal bundle O(-2)"),
                       {qvec({1, 0}), qvec({-2, 1})},
                       VerdictLevel::Balanced,
                       "D",
                       {fact(F::DominatingConicClass, qvec({1, 0}),
                             "P(O + O(2)) over P2: fibers of f1 are -K-conics"),
                        fact(F::DominatingLineLocus, qvec({0, 1}),
                             "-K-lines are the lines of the section D", std::nullopt,
                             std::nullopt, "D"),
                        fact(F::ExceptionalDivisor, qvec({-2, 1}),
                             "D = P2 with -K|D = O(1), contracted to a point by f2",
                             Rational(3), 1, "D")}}));

  out.push_back(rank2({56,
                       {0, 1, 1, 1},
                       make_ray(RayType::C2, "fibers of the P1-bundle over P2"),
                       make_ray(RayType::E2, "lines in D = P2 with normal bundle O(-1)"),
                       {qvec({1, 0}), qvec({-1, 1})},
                       VerdictLevel::Balanced,
                       "D",
                       {fact(F::DominatingConicClass, qvec({1, 0}),
                             "blow-up of P3 at a point: fibers of f1 are -K-conics"),
                        fact(F::DominatingConicClass, qvec({0, 1}),
                             "lines of P3 meeting the blown-up point are -K-conics"),
                        fact(F::ExceptionalDivisor, qvec({-1, 1}),
                             "exceptional divisor D = P2 with -K|D = O(2)",
                             ratio(3, 2), 1, "D")}}));

  out.push_back(rank2({54,
                       {0, 1, 0, 0},
                       make_ray(RayType::C2, "fibers of P2 x P1 -> P2"),
                       make_ray(RayType::D3, "lines in the P2 fibers"),
                       quadrant,
                       VerdictLevel::Balanced,
                       "",
                       {fact(F::DominatingConicClass, qvec({1, 0}),
                             "P2 x P1: fibers of the projection to P2 are -K-conics"),
                        fact(F::FiberSurfaceProfile, qvec({0, 1}),
                             "fibers of f2 are P2 with -K|F = O(3)", Rational(1), 1)}}));

  out.push_back(rank2({48,
                       {0, 1, 1, 0},
                       make_ray(RayType::C2, "fibers of the first projection"),
                       make_ray(RayType::C2, "fibers of the second projection"),
                       quadrant,
                       VerdictLevel::Balanced,
                       "",
                       {fact(F::DominatingConicClass, qvec({1, 0}),
                             "flag variety: fibers of f1 are -K-conics"),
                        fact(F::DominatingConicClass, qvec({0, 1}),
                             "flag variety: fibers of f2 are -K-conics")}}));

  out.push_back(rank2({30,
                       {0, 2, 1, 0},
                       make_ray(RayType::C1, "components of singular conics"),
                       make_ray(RayType::C2, "fibers of the P1-bundle"),
                       quadrant,
                       VerdictLevel::Balanced,
                       f1_lines,
                       {fact(F::DominatingLineLocus, qvec({1, 0}),
                             "-K-lines are components of singular fibers of f1",
                             std::nullopt, std::nullopt, f1_lines),
                        fact(F::DominatingConicClass, qvec({0, 1}),
                             "fibers of the P1-bundle f2 are -K-conics"),
                        fact(F::DominatingConicClass, qvec({2, 0}),
                             "smooth fibers of the conic bundle f1"),
                        fact(F::ConicBundleLine, qvec({1, 0}),
                             "preimages of lines under f1 are conic bundles over P1",
                             Rational(1), 1)}}));

  out.push_back(rank2({24,
                       {0, 2, 0, 0},
                       make_ray(RayType::C1, "components of singular conics"),
                       make_ray(RayType::D2, "lines in the quadric fibers"),
                       quadrant,
                       VerdictLevel::WeaklyBalanced,
                       f1_lines,
                       {fact(F::DominatingLineLocus, qvec({1, 0}),
                             "-K-lines are components of singular fibers of f1",
                             std::nullopt, std::nullopt, f1_lines),
                        fact(F::DominatingConicClass, qvec({2, 0}),
                             "smooth fibers of the conic bundle f1"),
                        fact(F::DominatingConicClass, qvec({0, 1}),
                             "rulings of the quadric fibers of f2"),
                        fact(F::ConicBundleLine, qvec({1, 0}),
                             "preimages of lines under f1 are conic bundles over P1",
                             Rational(1), 1),
                        fact(F::FiberSurfaceProfile, qvec({0, 1}),
                             "smooth fibers of f2 are smooth quadrics", Rational(1), 2)}}));

  out.push_back(rank2({14,
                       {0, 2, 2, 2},
                       make_ray(RayType::C1, "components of singular conics"),
                       make_ray(RayType::E3, "rulings of the quadric D"),
                       {qvec({1, 0}), qvec({-1, 1})},
                       VerdictLevel::Balanced,
                       f1_lines + " ∪ D",
                       {fact(F::DominatingLineLocus, qvec({1, 0}),
                             "-K-lines are components of singular fibers of f1",
                             std::nullopt, std::nullopt, f1_lines),
                        fact(F::DominatingLineLocus, qvec({0, 1}),
                             "rulings of D are -K-lines", std::nullopt, std::nullopt, "D"),
                        fact(F::ConicBundleLine, qvec({1, 0}),
                             "preimages of lines under f1 are conic bundles over P1",
                             Rational(1), 1),
                        fact(F::NonRationalFiber, qvec({0, 1}),
                             "members of |L2| are not rational", Rational(1), 1),
                        fact(F::ExceptionalDivisor, qvec({-1, 1}),
                             "D is a quadric with -K|D = O(1,1)", Rational(2), 2, "D")}}));

  out.push_back(rank2({12,
                       {0, 2, 2, 0},
                       make_ray(RayType::C1, "components of singular conics of f1"),
                       make_ray(RayType::C1, "components of singular conics of f2"),
                       quadrant,
                       VerdictLevel::Balanced,
                       f1_lines + " ∪ union of singular fibers of f₂",
                       {fact(F::DominatingLineLocus, qvec({1, 0}),
                             "-K-lines are components of singular fibers of f1",
                             std::nullopt, std::nullopt, f1_lines),
                        fact(F::DominatingLineLocus, qvec({0, 1}),
                             "-K-lines are components of singular fibers of f2",
                             std::nullopt, std::nullopt,
                             "union of singular fibers of f₂"),
                        fact(F::ConicBundleLine, qvec({1, 0}),
                             "preimages of lines under f1 are conic bundles over P1",
                             Rational(1), 1),
                        fact(F::ConicBundleLine, qvec({0, 1}),
                             "preimages of lines under f2 are conic bundles over P1",
                             Rational(1), 1)}}));

  out.push_back(rank2({6,
                       {0, 2, 0, 0},
                       make_ray(RayType::C1, "components of singular conics"),
                       make_ray(RayType::D1, "lines in the del Pezzo fibers"),
                       quadrant,
                       VerdictLevel::WeaklyABalanced,
                       f1_lines + " ∪ lines in general fibers of f₂ ∪ "
                                  "singular fibers of f₂",
                       {fact(F::DominatingLineLocus, qvec({1, 0}),
                             "-K-lines are components of singular fibers of f1",
                             std::nullopt, std::nullopt, f1_lines),
                        fact(F::DominatingLineLocus, qvec({0, 1}),
                             "lines on the del Pezzo fibers of f2", std::nullopt,
                             std::nullopt, "lines in general fibers of f₂"),
                        fact(F::ConicBundleLine, qvec({1, 0}),
                             "preimages of lines under f1 are conic bundles over P1",
                             Rational(1), 1),
                        fact(F::FiberSurfaceProfile, qvec({0, 1}),
                             "smooth fibers of f2 are del Pezzo surfaces of degree 2",
                             Rational(1), 8, "singular fibers of f₂")}}));
  return out;
}

} // namespace detail

inline std::vector<FanoRecord> load_builtin() {
  auto out = detail::rank1_records();
  for (auto &r : detail::rank2_records())
    out.push_back(std::move(r));
  for (const auto &r : out) {
    auto v = validate(r);
    if (!v.empty())
      throw Error(ErrorCode::CorruptData, r.name() + ": " + v.front());
  }
  return out;
}

inline const FanoRecord *find_record(const std::vector<FanoRecord> &db, std::string_view name) {
  for (const auto &r : db)
    if (r.name() == name)
      return &r;
  return nullptr;
}

// --- serialization ------------------------------------------------------------

namespace json_io {

inline json to_json(const FanoRecord &rec) {
  const auto &m = rec.model;
  json rays = json::array();
  for (const auto &r : rec.rays)
    rays.push_back({{"type", std::string(to_string(r.ray_type))},
                    {"length", r.length},
                    {"note", r.extremal_curve_note}});
  json notes = json::array();
  for (const auto &f : rec.annotations) {
    json p = {{"class", to_json(f.payload.cls)}};
    if (f.payload.a)
      p["a"] = to_json(*f.payload.a);
    if (f.payload.b)
      p["b"] = *f.payload.b;
    if (!f.payload.locus.empty())
      p["locus"] = f.payload.locus;
    if (!f.payload.note.empty())
      p["note"] = f.payload.note;
    notes.push_back(
        {{"kind", std::string(to_string(f.kind))}, {"payload", p}, {"citation", f.citation}});
  }
  json j = {{"schema_version", kSchemaVersion},
            {"name", m.name},
            {"dim", m.dim},
            {"rank", m.rank},
            {"degree", rec.degree},
            {"canonical", to_json(m.canonical.coords)},
            {"tensor", to_json(m.tensor)},
            {"eff_generators", to_json(m.eff_cone.generators())},
            {"curve_pairing", to_json(m.curve_pairing)},
            {"rays", rays},
            {"annotations", notes},
            {"expected",
             {{"a", to_json(rec.expected_a)},
              {"b", rec.expected_b},
              {"verdict", std::string(to_string(rec.expected_verdict))},
              {"exceptional_set", rec.exceptional_set}}},
            {"flags", rec.flags}};
  if (rec.index)
    j["index"] = *rec.index;
  if (m.nef_cone)
    j["nef_generators"] = to_json(m.nef_cone->generators());
  return j;
}

inline void check_schema(const json &j, const std::string &path) {
  const int v = int_from(field(j, "schema_version", path), path + ".schema_version");
  if (v != kSchemaVersion)
    throw Error(ErrorCode::SchemaVersionMismatch,
                path + ": schema_version " + std::to_string(v) + ", expected " +
                    std::to_string(kSchemaVersion));
}

inline FanoRecord record_from(const json &j, const std::string &path = "") {
  only_keys(j,
            {"schema_version", "name", "dim", "rank", "index", "degree", "canonical", "tensor",
             "eff_generators", "nef_generators", "curve_pairing", "rays", "annotations",
             "expected", "flags"},
            path);
  check_schema(j, path);
  FanoRecord rec;
  auto &m = rec.model;
  m.name = string_from(field(j, "name", path), path + ".name");
  const int dim = int_from(field(j, "dim", path), path + ".dim");
  const int rank = int_from(field(j, "rank", path), path + ".rank");
  if (dim <= 0 || rank <= 0)
    fail(path, "dim and rank must be positive");
  m.dim = static_cast<std::size_t>(dim);
  m.rank = static_cast<std::size_t>(rank);
  if (j.contains("index"))
    rec.index = int_from(j["index"], path + ".index");
  rec.degree = int_from(field(j, "degree", path), path + ".degree");
  m.canonical = DivisorClass{vector_from(field(j, "canonical", path), path + ".canonical")};
  m.tensor = tensor_from(field(j, "tensor", path), path + ".tensor");
  auto cone_at = [&](const char *key) {
    const std::string p = path + "." + key;
    try {
      return cone_from_generators(matrix_from(j[key], p), m.rank);
    } catch (const Error &e) {
      if (e.code() == ErrorCode::ParseError)
        throw;
      fail(p, e.what());
    }
  };
  field(j, "eff_generators", path);
  m.eff_cone = cone_at("eff_generators");
  if (j.contains("nef_generators"))
    m.nef_cone = cone_at("nef_generators");
  m.curve_pairing = matrix_from(field(j, "curve_pairing", path), path + ".curve_pairing");

  const json &rays = field(j, "rays", path);
  if (!rays.is_array())
    fail(path + ".rays", "expected an array");
  for (std::size_t i = 0; i < rays.size(); ++i) {
    const std::string p = path + ".rays[" + std::to_string(i) + "]";
    only_keys(rays[i], {"type", "length", "note"}, p);
    ExtremalRay r;
    try {
      r.ray_type = parse_ray_type(string_from(field(rays[i], "type", p), p + ".type"));
    } catch (const Error &e) {
      fail(p + ".type", e.what());
    }
    r.length = int_from(field(rays[i], "length", p), p + ".length");
    if (rays[i].contains("note"))
      r.extremal_curve_note = string_from(rays[i]["note"], p + ".note");
    rec.rays.push_back(std::move(r));
  }

  const json &notes = field(j, "annotations", path);
  if (!notes.is_array())
    fail(path + ".annotations", "expected an array");
  for (std::size_t i = 0; i < notes.size(); ++i) {
    const std::string p = path + ".annotations[" + std::to_string(i) + "]";
    only_keys(notes[i], {"kind", "payload", "citation"}, p);
    GeometricFact f;
    try {
      f.kind = parse_fact_kind(string_from(field(notes[i], "kind", p), p + ".kind"));
    } catch (const Error &e) {
      fail(p + ".kind", e.what());
    }
    f.citation = string_from(field(notes[i], "citation", p), p + ".citation");
    const std::string pp = p + ".payload";
    const json &pl = field(notes[i], "payload", p);
    only_keys(pl, {"class", "a", "b", "locus", "note"}, pp);
    f.payload.cls = vector_from(field(pl, "class", pp), pp + ".class");
    if (pl.contains("a"))
      f.payload.a = rational_from(pl["a"], pp + ".a");
    if (pl.contains("b"))
      f.payload.b = int_from(pl["b"], pp + ".b");
    if (pl.contains("locus"))
      f.payload.locus = string_from(pl["locus"], pp + ".locus");
    if (pl.contains("note"))
      f.payload.note = string_from(pl["note"], pp + ".note");
    rec.annotations.push_back(std::move(f));
  }

  const std::string pe = path + ".expected";
  const json &ex = field(j, "expected", path);
  only_keys(ex, {"a", "b", "verdict", "exceptional_set"}, pe);
  rec.expected_a = rational_from(field(ex, "a", pe), pe + ".a");
  rec.expected_b = int_from(field(ex, "b", pe), pe + ".b");
  try {
    rec.expected_verdict = parse_verdict(string_from(field(ex, "verdict", pe), pe + ".verdict"));
  } catch (const Error &e) {
    fail(pe + ".verdict", e.what());
  }
  rec.exceptional_set =
      string_from(field(ex, "exceptional_set", pe), pe + ".exceptional_set");

  const json &fl = field(j, "flags", path);
  if (!fl.is_array())
    fail(path + ".flags", "expected an array");
  for (std::size_t i = 0; i < fl.size(); ++i)
    rec.flags.push_back(string_from(fl[i], path + ".flags[" + std::to_string(i) + "]"));
  return rec;
}

inline json database_to_json(const std::vector<FanoRecord> &records) {
  json entries = json::array();
  for (const auto &r : records)
    entries.push_back(to_json(r));
  return {{"schema_version", kSchemaVersion}, {"entries", entries}};
}

inline std::vector<FanoRecord> database_from(const json &j) {
  only_keys(j, {"schema_version", "entries"}, "");
  check_schema(j, "");
  const json &entries = field(j, "entries", "");
  if (!entries.is_array())
    fail("entries", "expected an array");
  std::vector<FanoRecord> out;
  for (std::size_t i = 0; i < entries.size(); ++i)
    out.push_back(record_from(entries[i], "entries[" + std::to_string(i) + "]"));
  return out;
}

inline json parse_text(const std::string &text, const std::string &source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error &e) {
    // Report a line number; nlohmann only gives the byte offset.
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n');
    throw Error(ErrorCode::ParseError,
                source + ":" + std::to_string(line) + ": " + e.what());
  }
}

inline std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::ParseError, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace json_io

inline std::vector<FanoRecord> load_file(const std::string &path) {
  return json_io::database_from(json_io::parse_text(json_io::read_text(path), path));
}

inline void save_file(const std::vector<FanoRecord> &records, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(ErrorCode::ParseError, path + ": cannot write");
  out << json_io::database_to_json(records).dump(2) << "\n";
}

} // namespace balanced
