// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "json.hpp"

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>

#include "balanced/cone.hpp"
#include "balanced/criteria.hpp"
#include "balanced/intersection.hpp"
#include "balanced/invariants.hpp"

namespace balanced::json_io {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string &path, const std::string &msg) {
  throw Error(ErrorCode::ParseError, (path.empty() ? "<root>" : path) + ": " + msg);
}

inline const json &field(const json &obj, std::string_view key, const std::string &path) {
  if (!obj.is_object())
    fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end())
    fail(path, "missing key \"" + std::string(key) + "\"");
  return *it;
}

/// Rejects keys outside `allowed`, so unknown future fields never pass silently.
inline void only_keys(const json &obj, std::initializer_list<std::string_view> allowed,
                      const std::string &path) {
  if (!obj.is_object())
    fail(path, "expected an object");
  for (const auto &[key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed)
      ok = ok || a == key;
    if (!ok)
      fail(path, "unknown key \"" + key + "\"");
  }
}

inline json to_json(const Rational &r) { return to_string(r); }

inline Rational rational_from(const json &j, const std::string &path) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error &e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_integer())
    return Rational(j.get<long long>());
  fail(path, "expected a rational string \"p/q\"");
}

inline int int_from(const json &j, const std::string &path) {
  if (!j.is_number_integer())
    fail(path, "expected an integer");
  return j.get<int>();
}

inline std::string string_from(const json &j, const std::string &path) {
  if (!j.is_string())
    fail(path, "expected a string");
  return j.get<std::string>();
}

inline json to_json(const QVector &v) {
  json a = json::array();
  for (const auto &x : v)
    a.push_back(to_json(x));
  return a;
}

inline QVector vector_from(const json &j, const std::string &path) {
  if (!j.is_array())
    fail(path, "expected an array");
  QVector v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(rational_from(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

inline json to_json(const QMatrix &m) {
  json a = json::array();
  for (const auto &row : m)
    a.push_back(to_json(row));
  return a;
}

inline QMatrix matrix_from(const json &j, const std::string &path) {
  if (!j.is_array())
    fail(path, "expected an array of arrays");
  QMatrix m;
  for (std::size_t i = 0; i < j.size(); ++i)
    m.push_back(vector_from(j[i], path + "[" + std::to_string(i) + "]"));
  return m;
}

// --- Cone -----------------------------------------------------------------

inline json to_json(const Cone &c) {
  return {{"ambient_rank", c.ambient_rank()},
          {"generators", to_json(c.generators())},
          {"facets", to_json(c.facet_normals())}};
}

/// Either description may be omitted. When both are present they must
/// describe the same cone.
inline Cone cone_from(const json &j, const std::string &path = "") {
  only_keys(j, {"ambient_rank", "generators", "facets"}, path);
  const int rank = int_from(field(j, "ambient_rank", path), path + ".ambient_rank");
  if (rank <= 0)
    fail(path + ".ambient_rank", "must be positive");
  const bool has_g = j.contains("generators"), has_f = j.contains("facets");
  if (!has_g && !has_f)
    fail(path, "needs \"generators\" or \"facets\"");
  const auto r = static_cast<std::size_t>(rank);
  try {
    if (has_g) {
      Cone c = cone_from_generators(matrix_from(j["generators"], path + ".generators"), r);
      if (has_f && !(cone_from_facets(matrix_from(j["facets"], path + ".facets"), r) == c))
        fail(path, "generators and facets describe different cones");
      return c;
    }
    return cone_from_facets(matrix_from(j["facets"], path + ".facets"), r);
  } catch (const Error &e) {
    if (e.code() == ErrorCode::ParseError)
      throw;
    fail(path, e.what());
  }
}

// --- Intersection tensor -------------------------------------------------

inline json to_json(const IntersectionTensor &t) {
  json entries = json::object();
  for (const auto &[idx, value] : t.entries()) {
    std::string key;
    for (std::size_t i = 0; i < idx.size(); ++i)
      key += (i ? "," : "") + std::to_string(idx[i]);
    entries[key] = to_json(value);
  }
  return {{"dim", t.dim()}, {"rank", t.rank()}, {"entries", entries}};
}

inline IntersectionTensor tensor_from(const json &j, const std::string &path = "") {
  only_keys(j, {"dim", "rank", "entries"}, path);
  const int dim = int_from(field(j, "dim", path), path + ".dim");
  const int rank = int_from(field(j, "rank", path), path + ".rank");
  if (dim <= 0 || rank <= 0)
    fail(path, "dim and rank must be positive");
  IntersectionTensor t(static_cast<std::size_t>(dim), static_cast<std::size_t>(rank));
  const json &entries = field(j, "entries", path);
  if (!entries.is_object())
    fail(path + ".entries", "expected an object");
  for (const auto &[key, value] : entries.items()) {
    const std::string p = path + ".entries[\"" + key + "\"]";
    IntersectionTensor::Index idx;
    std::size_t start = 0;
    while (start <= key.size()) {
      auto comma = key.find(',', start);
      auto part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        fail(p, "malformed multi-index");
      idx.push_back(std::stoul(part));
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
    try {
      t.set(idx, rational_from(value, p));
    } catch (const Error &e) {
      if (e.code() == ErrorCode::ParseError)
        throw;
      fail(p, e.what());
    }
  }
  return t;
}

// --- Reports ---------------------------------------------------------------

inline json to_json(const InvariantReport &r) {
  json facets = json::array();
  for (auto i : r.witness_facets)
    facets.push_back(i);
  return {{"a", to_json(r.a)},
          {"b", r.b},
          {"adjoint", to_json(r.adjoint.coords)},
          {"witness_facets", facets}};
}

inline json to_json(const Certificate &c) {
  return {{"kind", std::string(to_string(c.kind))},
          {"holds", c.holds},
          {"threshold", to_json(c.threshold)},
          {"attained", to_json(c.attained)},
          {"caveats", c.caveats}};
}

inline Certificate certificate_from(const json &j, const std::string &path = "") {
  only_keys(j, {"kind", "holds", "threshold", "attained", "caveats"}, path);
  Certificate c = certify(parse_certificate_kind(string_from(field(j, "kind", path), path + ".kind")),
                          rational_from(field(j, "threshold", path), path + ".threshold"),
                          rational_from(field(j, "attained", path), path + ".attained"));
  const json &holds = field(j, "holds", path);
  if (!holds.is_boolean() || holds.get<bool>() != c.holds)
    fail(path + ".holds", "inconsistent with threshold and attained value");
  return c;
}

} // namespace balanced::json_io
