// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#include <gtest/gtest.h>

#include "balanced/json_io.hpp"

using namespace balanced;
using json_io::json;

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

} // namespace

TEST(ConeJson, RoundtripAndReconstruction) {
  auto c = cone_from_generators({qvec({1, 0}), qvec({1, 2})}, 2);
  auto j = json_io::to_json(c);
  EXPECT_EQ(json_io::cone_from(j), c);
  json only_g = {{"ambient_rank", 2}, {"generators", j["generators"]}};
  json only_f = {{"ambient_rank", 2}, {"facets", j["facets"]}};
  EXPECT_EQ(json_io::cone_from(only_g), c);
  EXPECT_EQ(json_io::cone_from(only_f), c);
}

TEST(ConeJson, Rejections) {
  EXPECT_EQ(code_of([] { json_io::cone_from(json{{"ambient_rank", 2}}); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              json_io::cone_from(json{{"ambient_rank", 2}, {"generators", {{"1", "0"}}}, {"extra", 1}});
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              json_io::cone_from(json{{"ambient_rank", 2}, {"generators", {{"1", "0"}, {"0", "1"}}},
                                      {"facets", {{"1", "1"}, {"1", "-1"}}}});
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              json_io::cone_from(json{{"ambient_rank", 2}, {"generators", {{"1", "1/0"}}}});
            }),
            ErrorCode::ParseError);
  EXPECT_EQ(code_of([] {
              json_io::cone_from(json{{"ambient_rank", 2}, {"generators", {{"1", "0", "0"}}}});
            }),
            ErrorCode::ParseError);
}

TEST(TensorJson, DocumentedShape) {
  auto j = json::parse(R"({"dim": 3, "rank": 2, "entries": {"0,0,0": "0", "0,0,1": "1", "0,1,1": "2", "1,1,1": "4"}})");
  auto t = json_io::tensor_from(j);
  EXPECT_EQ(t.at({0, 1, 1}), 2);
  EXPECT_EQ(t.at({1, 1, 1}), 4);
  EXPECT_EQ(json_io::tensor_from(json_io::to_json(t)), t);
  auto bad = j;
  bad["entries"]["0,0"] = "1";
  EXPECT_EQ(code_of([&] { json_io::tensor_from(bad); }), ErrorCode::ParseError);
  bad = j;
  bad["entries"]["0,x,1"] = "1";
  EXPECT_EQ(code_of([&] { json_io::tensor_from(bad); }), ErrorCode::ParseError);
}

TEST(CertificateJson, Roundtrip) {
  auto c = reider_separates(ratio(21, 2));
  auto j = json_io::to_json(c);
  EXPECT_EQ(j["threshold"], "10");
  EXPECT_EQ(j["attained"], "21/2");
  EXPECT_EQ(j["holds"], true);
  EXPECT_EQ(json_io::certificate_from(j), c);
  j["holds"] = false;
  EXPECT_EQ(code_of([&] { json_io::certificate_from(j); }), ErrorCode::ParseError);
}

TEST(ReportJson, Shape) {
  InvariantReport r{ratio(5, 2), 1, DivisorClass{QVector{Rational(-1), ratio(1, 2)}}, {1}};
  auto j = json_io::to_json(r);
  EXPECT_EQ(j.dump(), R"({"a":"5/2","adjoint":["-1","1/2"],"b":1,"witness_facets":[1]})");
}
