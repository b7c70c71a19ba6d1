// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "balanced/fano_db.hpp"
#include "support.hpp"

using namespace balanced;
using testing_support::blowup_p2;

namespace {

template <class F> ErrorCode code_of(F &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::UnknownRecord;
}

const std::vector<FanoRecord> &db() {
  static const auto records = load_builtin();
  return records;
}

const FanoRecord &rec(const std::string &name) { return *find_record(db(), name); }

} // namespace

TEST(AInvariant, ProjectiveSpaceAndQuadric) {
  EXPECT_EQ(a_invariant(rec("rank1-P3").model, DivisorClass{qvec({1})}), 4);
  EXPECT_EQ(a_invariant(rec("rank1-quadric").model, DivisorClass{qvec({1})}), 3);
}

TEST(AInvariant, AnticanonicalIsOneEverywhere) {
  for (const auto &r : db()) {
    const auto rep = compute_invariants(r.model, r.model.anticanonical());
    EXPECT_EQ(rep.a, 1) << r.name();
    EXPECT_EQ(rep.b, static_cast<int>(r.picard_rank())) << r.name();
    EXPECT_TRUE(is_zero(rep.adjoint.coords)) << r.name();
  }
}

TEST(AInvariant, Homogeneity) {
  const auto &m = rec("rank2-d62").model;
  EXPECT_EQ(a_invariant(m, Rational(2) * m.anticanonical()), ratio(1, 2));
}

TEST(AInvariant, Errors) {
  const auto &m = rec("rank2-d62").model;
  EXPECT_EQ(code_of([&] { a_invariant(m, DivisorClass{qvec({1, 0})}); }), ErrorCode::NotBig);
  EXPECT_EQ(code_of([&] { a_invariant(m, DivisorClass{qvec({-1, 0})}); }), ErrorCode::NotBig);
  EXPECT_EQ(code_of([&] { a_invariant(m, DivisorClass{qvec({1})}); }), ErrorCode::RankMismatch);
  VarietyModel empty = m;
  empty.eff_cone = cone_from_facets({}, 2);
  EXPECT_EQ(code_of([&] { a_invariant(empty, m.anticanonical()); }), ErrorCode::EmptyCone);
}

TEST(AInvariant, NonUniruledIsLegalButPoisonsB) {
  VarietyModel x = rec("rank2-d62").model;
  x.canonical = DivisorClass{qvec({1, 1})};
  EXPECT_LE(a_invariant(x, DivisorClass{qvec({1, 1})}), 0);
  EXPECT_EQ(code_of([&] { b_invariant(x, DivisorClass{qvec({1, 1})}); }), ErrorCode::NotUniruled);
}

TEST(BInvariant, Examples) {
  EXPECT_EQ(b_invariant(rec("rank2-d62").model, rec("rank2-d62").model.anticanonical()), 2);
  auto s = blowup_p2(1);
  auto rep = compute_invariants(s.model, DivisorClass{qvec({1, 0})});
  EXPECT_EQ(rep.a, 3);
  EXPECT_EQ(rep.adjoint, DivisorClass{qvec({0, 1})});
  EXPECT_EQ(rep.b, 1);
  EXPECT_EQ(rep.witness_facets.size(), 1u);
}

TEST(CurveA, Examples) {
  EXPECT_EQ(curve_a(1), 2);
  EXPECT_EQ(curve_a(2), 1);
  EXPECT_EQ(curve_a(Rational(6)), ratio(1, 3));
  EXPECT_EQ(code_of([] { curve_a(0); }), ErrorCode::NonpositiveDegree);
  EXPECT_EQ(code_of([] { curve_a(-1); }), ErrorCode::NonpositiveDegree);
}

TEST(SurfaceInvariants, Kappa1) {
  EXPECT_EQ(surface_invariants_kappa1(2), (ABPair{1, 1}));
  EXPECT_EQ(surface_invariants_kappa1(1), (ABPair{2, 1}));
  EXPECT_EQ(surface_invariants_kappa1(4), (ABPair{ratio(1, 2), 1}));
  EXPECT_EQ(code_of([] { surface_invariants_kappa1(0); }), ErrorCode::NonpositiveDegree);
}

TEST(SurfaceInvariants, Kappa0) {
  EXPECT_EQ(surface_invariants_kappa0(2, 2, 8), (ABPair{1, 8}));
  EXPECT_EQ(surface_invariants_kappa0(4, 4, 2), (ABPair{1, 2}));
  EXPECT_EQ(surface_invariants_kappa0(3, 3, 1), (ABPair{1, 1}));
  EXPECT_EQ(code_of([] { surface_invariants_kappa0(3, 0, 1); }), ErrorCode::NonpositiveDegree);
}

TEST(BViaVerticalDivisors, Examples) {
  const auto &m2 = rec("rank2-d62").model;
  EXPECT_EQ(b_via_vertical_divisors(m2, {DivisorClass{qvec({1, 0})}}, {}), 1);
  EXPECT_EQ(b_via_vertical_divisors(m2, {}, {}), 2);
  VarietyModel m3;
  m3.rank = 3;
  EXPECT_EQ(b_via_vertical_divisors(m3, {DivisorClass{qvec({1, 0, 0})}, DivisorClass{qvec({2, 0, 0})}},
                                    {DivisorClass{qvec({0, 1, 0})}}),
            1);
  EXPECT_EQ(code_of([&] { b_via_vertical_divisors(m2, {DivisorClass{qvec({1})}}, {}); }),
            ErrorCode::RankMismatch);
}

TEST(Invariants, AdjointSharpness) {
  const Rational eps(1, 1000000);
  for (const auto &r : db()) {
    const auto &m = r.model;
    const auto l = m.anticanonical();
    const Rational a = a_invariant(m, l);
    EXPECT_TRUE(contains(m.eff_cone, (a * l + m.canonical).coords));
    EXPECT_FALSE(contains(m.eff_cone, ((a - eps) * l + m.canonical).coords)) << r.name();
    EXPECT_FALSE(contains(m.eff_cone, ((a - ratio(1, 1000)) * l + m.canonical).coords));
  }
}

TEST(Invariants, SiuDominates) {
  for (const auto &r : db()) {
    const auto &m = r.model;
    ASSERT_TRUE(m.nef_cone);
    for (const auto &g : m.nef_cone->generators()) {
      DivisorClass l{g};
      // Nef generators on the boundary of Eff are not big; skip those.
      bool big = true;
      for (const auto &f : m.eff_cone.facet_normals())
        big = big && dot(f, g) > 0;
      if (big) {
        EXPECT_LE(a_invariant(m, l), siu_bound(static_cast<int>(m.dim))) << r.name();
      }
    }
    EXPECT_LE(a_invariant(m, m.anticanonical()), siu_bound(3));
  }
}
