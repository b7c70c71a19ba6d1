// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "balanced/intersection.hpp"

using namespace balanced;

namespace {

IntersectionTensor rank2_tensor(long a, long b, long c, long d) {
  IntersectionTensor t(3, 2);
  t.set({0, 0, 0}, a);
  t.set({0, 0, 1}, b);
  t.set({0, 1, 1}, c);
  t.set({1, 1, 1}, d);
  return t;
}

DivisorClass dc(long x, long y) { return DivisorClass{qvec({x, y})}; }

template <class F> ErrorCode code_of(F &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::UnknownRecord;
}

} // namespace

TEST(EvalProduct, Degree62) {
  auto t = rank2_tensor(0, 1, 2, 4);
  EXPECT_EQ(self_power(t, dc(1, 2)), 62);
  EXPECT_EQ(eval_product(t, {dc(1, 2), dc(1, 2), dc(1, 2)}), 62);
}

TEST(EvalProduct, Degree56) { EXPECT_EQ(self_power(rank2_tensor(0, 1, 1, 1), dc(2, 2)), 56); }

TEST(EvalProduct, ZeroClassKillsProduct) {
  auto t = rank2_tensor(3, 1, 2, 4);
  EXPECT_EQ(eval_product(t, {dc(1, 2), dc(0, 0), dc(5, 7)}), 0);
}

TEST(EvalProduct, ArityAndRankErrors) {
  auto t = rank2_tensor(0, 1, 2, 4);
  EXPECT_EQ(code_of([&] { eval_product(t, {dc(1, 0), dc(1, 0)}); }), ErrorCode::ArityMismatch);
  EXPECT_EQ(code_of([&] {
              eval_product(t, {DivisorClass{qvec({1})}, dc(1, 0), dc(1, 0)});
            }),
            ErrorCode::RankMismatch);
  EXPECT_EQ(code_of([&] { t.at({0, 0}); }), ErrorCode::ArityMismatch);
  EXPECT_EQ(code_of([&] { t.at({0, 0, 2}); }), ErrorCode::RankMismatch);
}

TEST(Tensor, StoredOncePerSortedIndex) {
  IntersectionTensor t(3, 2);
  t.set({1, 0, 0}, 5);
  EXPECT_EQ(t.at({0, 1, 0}), 5);
  EXPECT_EQ(t.at({0, 0, 1}), 5);
  EXPECT_EQ(t.entries().size(), 1u);
  t.set({0, 0, 1}, 0);
  EXPECT_TRUE(t.entries().empty());
}

TEST(SurfaceForm, PrintedForms) {
  EXPECT_EQ(surface_restriction_form(rank2_tensor(0, 1, 2, 4), dc(1, 2)), (SurfaceForm{12, 25}));
  EXPECT_EQ(surface_restriction_form(rank2_tensor(0, 2, 1, 0), dc(2, 1)), (SurfaceForm{9, 12}));
  EXPECT_EQ(surface_restriction_form(rank2_tensor(0, 2, 0, 0), dc(1, 1)), (SurfaceForm{4, 2}));
  EXPECT_EQ(code_of([] { surface_restriction_form(IntersectionTensor(2, 2), dc(1, 1)); }),
            ErrorCode::RankMismatch);
}

TEST(Pair, LinearForms) {
  const auto p = swap_pairing();
  for (long n = 0; n <= 4; ++n)
    for (long m = 0; m <= 4; ++m) {
      CurveClass c{qvec({n, m}), p};
      EXPECT_EQ(pair(dc(1, 2), c), 2 * n + m);
      EXPECT_EQ(pair(dc(2, 1), c), n + 2 * m);
      EXPECT_EQ(pair(dc(0, 0), c), 0);
    }
  EXPECT_EQ(code_of([&] { pair(DivisorClass{qvec({1, 2, 3})}, CurveClass{qvec({1, 0}), p}); }),
            ErrorCode::RankMismatch);
}

TEST(AnticanonicalFromRays, Examples) {
  EXPECT_EQ(anticanonical_from_rays(2, 1), dc(1, 2));
  EXPECT_EQ(anticanonical_from_rays(2, 3), dc(3, 2));
  EXPECT_EQ(anticanonical_from_rays(1, 1), dc(1, 1));
  EXPECT_EQ(code_of([] { anticanonical_from_rays(4, 1); }), ErrorCode::InvalidLength);
  EXPECT_EQ(code_of([] { anticanonical_from_rays(1, 0); }), ErrorCode::InvalidLength);
}
