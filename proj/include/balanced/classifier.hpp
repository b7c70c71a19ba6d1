// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <algorithm>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "balanced/criteria.hpp"
#include "balanced/fano_db.hpp"
#include "balanced/invariants.hpp"

namespace balanced {

/// Undetermined marks a b-value that no certificate pins down at equal a.
enum class Cmp { LT, EQ, GT, NA, Undetermined };

constexpr std::string_view to_string(Cmp c) {
  switch (c) {
  case Cmp::LT: return "LT";
  case Cmp::EQ: return "EQ";
  case Cmp::GT: return "GT";
  case Cmp::NA: return "NA";
  case Cmp::Undetermined: return "Undetermined";
  }
  return "NA";
}

struct ComparisonOutcome {
  Cmp a_cmp = Cmp::NA;
  Cmp b_cmp = Cmp::NA;
  friend bool operator==(const ComparisonOutcome &, const ComparisonOutcome &) = default;
};

template <class T> Cmp three_way(const T &x, const T &y) {
  return x < y ? Cmp::LT : (y < x ? Cmp::GT : Cmp::EQ);
}

/// Lexicographic comparison of (a, b) against (a_x, b_x).
inline ComparisonOutcome compare_ab(const Rational &a, std::optional<int> b, const Rational &a_x,
                                    int b_x) {
  ComparisonOutcome o;
  o.a_cmp = three_way(a, a_x);
  if (o.a_cmp == Cmp::LT)
    o.b_cmp = Cmp::NA;
  else if (!b)
    o.b_cmp = Cmp::Undetermined;
  else
    o.b_cmp = three_way(*b, b_x);
  return o;
}

struct Witness {
  std::string object;
  Rational a;
  std::optional<int> b;
  ComparisonOutcome outcome;
  bool excluded = false;
  std::size_t multiplicity = 1;

  friend bool operator==(const Witness &, const Witness &) = default;
};

struct BalancedVerdict {
  VerdictLevel level = VerdictLevel::Unclassified;
  std::vector<Witness> witnesses;
  std::string exceptional_set;
};

/// Witness-set predicates. Each one implies the next.
inline bool all_strict(const std::vector<Witness> &ws) {
  for (const auto &w : ws)
    if (!w.excluded && !(w.outcome.a_cmp == Cmp::LT ||
                         (w.outcome.a_cmp == Cmp::EQ && w.outcome.b_cmp == Cmp::LT)))
      return false;
  return true;
}

inline bool all_weak(const std::vector<Witness> &ws) {
  for (const auto &w : ws)
    if (!w.excluded && !(w.outcome.a_cmp == Cmp::LT ||
                         (w.outcome.a_cmp == Cmp::EQ &&
                          (w.outcome.b_cmp == Cmp::LT || w.outcome.b_cmp == Cmp::EQ))))
      return false;
  return true;
}

inline bool all_a_weak(const std::vector<Witness> &ws) {
  for (const auto &w : ws)
    if (!w.excluded && w.outcome.a_cmp == Cmp::GT)
      return false;
  return true;
}

inline VerdictLevel aggregate(const std::vector<Witness> &ws) {
  if (all_strict(ws))
    return VerdictLevel::Balanced;
  if (all_weak(ws))
    return VerdictLevel::WeaklyBalanced;
  if (all_a_weak(ws))
    return VerdictLevel::WeaklyABalanced;
  return VerdictLevel::None;
}

inline constexpr int kDefaultScanBound = 20;
inline constexpr int kMinScanBound = 5;

namespace detail {

inline void require_scan_bound(int scan_bound) {
  if (scan_bound < kMinScanBound)
    throw Error(ErrorCode::InvalidLength,
                "scan bound " + std::to_string(scan_bound) + " is below " +
                    std::to_string(kMinScanBound));
}

/// Nonzero classes with nonnegative integer coordinates bounded by scan_bound,
/// ordered by coordinate sum.
inline std::vector<QVector> scan_classes(std::size_t rank, int scan_bound) {
  std::vector<QVector> out;
  if (rank == 1) {
    for (int n = 1; n <= scan_bound; ++n)
      out.push_back(qvec({n}));
  } else if (rank == 2) {
    for (int s = 1; s <= 2 * scan_bound; ++s)
      for (int n = std::min(s, scan_bound); n >= 0 && s - n <= scan_bound; --n)
        out.push_back(qvec({n, s - n}));
  } else {
    throw Error(ErrorCode::RankMismatch,
                "classification scans need Picard rank 1 or 2, got " + std::to_string(rank));
  }
  return out;
}

inline const GeometricFact *find_fact(const FanoRecord &rec, const QVector &cls,
                                      bool curve) {
  for (const auto &f : rec.annotations)
    if (is_curve_fact(f.kind) == curve && f.kind != FactKind::ExceptionalDivisor &&
        f.payload.cls == cls && (curve || f.payload.a))
      return &f;
  return nullptr;
}

inline const GeometricFact *find_fact(const FanoRecord &rec, const QVector &cls,
                                      FactKind kind) {
  for (const auto &f : rec.annotations)
    if (f.kind == kind && f.payload.cls == cls)
      return &f;
  return nullptr;
}

} // namespace detail

/// One scanned surface class and how it was decided.
struct SurfaceScanEntry {
  QVector cls;
  enum class Source { Reider, Annotation, Skipped } source = Source::Reider;
  Rational q;  // L^2.S with L = -K / index
  int multiple = 1;  // t such that (tL)^2.S was tested
  bool effective = false;
  bool separates = false;
  const GeometricFact *fact = nullptr;
};

/// Index used to normalize −K before testing surfaces: r for rank 1, else 1.
inline int scan_index(const FanoRecord &rec) {
  return rec.picard_rank() == 1 && rec.index ? *rec.index : 1;
}

/// Multiples of a class pulled back from a curve have no irreducible members.
inline bool is_reducible_multiple(const FanoRecord &rec, const QVector &cls) {
  if (rec.picard_rank() != 2 || rec.rays.size() != 2)
    return false;
  for (std::size_t i = 0; i < 2; ++i)
    if (contraction_base_dim(rec.rays[i].ray_type) == 1 && cls[1 - i] == 0 && cls[i] >= 2)
      return true;
  return false;
}

inline std::vector<SurfaceScanEntry> surface_scan(const FanoRecord &rec, int scan_bound) {
  detail::require_scan_bound(scan_bound);
  const auto &m = rec.model;
  const int r = scan_index(rec);
  const DivisorClass l = ratio(1, r) * m.anticanonical();
  std::vector<SurfaceScanEntry> out;
  for (auto &cls : detail::scan_classes(m.rank, scan_bound)) {
    SurfaceScanEntry e;
    e.q = eval_product(m.tensor, {l, l, DivisorClass{cls}});
    e.cls = std::move(cls);
    if (is_reducible_multiple(rec, e.cls)) {
      e.source = SurfaceScanEntry::Source::Skipped;
    } else if ((e.fact = detail::find_fact(rec, e.cls, false))) {
      e.source = SurfaceScanEntry::Source::Annotation;
    } else {
      for (int t = 1; t <= r; ++t) {
        e.multiple = t;
        e.effective = reider_effective(Rational(t * t) * e.q).holds;
        if (e.effective)
          break;
      }
      e.separates = e.effective && reider_separates(Rational(r * r) * e.q).holds;
    }
    out.push_back(std::move(e));
  }
  return out;
}

inline BalancedVerdict classify(const FanoRecord &rec, int scan_bound = kDefaultScanBound) {
  detail::require_scan_bound(scan_bound);
  const auto &m = rec.model;
  const auto ak = m.anticanonical();
  const auto base = compute_invariants(m, ak);
  const Rational &a_x = base.a;
  const int b_x = base.b;

  BalancedVerdict v;
  std::vector<const GeometricFact *> triggered;
  auto trigger = [&](const GeometricFact *f) {
    if (f && std::find(triggered.begin(), triggered.end(), f) == triggered.end())
      triggered.push_back(f);
  };
  auto add = [&](std::string object, Rational a, std::optional<int> b, bool excluded) {
    Witness w{std::move(object), a, b, compare_ab(a, b, a_x, b_x), excluded, 1};
    v.witnesses.push_back(std::move(w));
  };
  // Grouped witnesses for classes decided by a bare numeric bound.
  std::map<std::pair<std::string, Rational>, Witness> groups;
  auto add_grouped = [&](const std::string &label, Rational a, std::optional<int> b) {
    auto key = std::make_pair(label, a);
    auto it = groups.find(key);
    if (it == groups.end())
      groups.emplace(key, Witness{label, a, b, compare_ab(a, b, a_x, b_x), false, 1});
    else
      ++it->second.multiplicity;
  };

  // Curves.
  const Rational floor = deformation_floor();
  for (const auto &cls : detail::scan_classes(m.rank, scan_bound)) {
    const Rational deg = pair(ak, m.curve(cls));
    const std::string obj = "curve class " + to_string(cls);
    if (deg < floor) {
      const auto *f = detail::find_fact(rec, cls, FactKind::DominatingLineLocus);
      if (!f)
        throw Error(ErrorCode::InsufficientAnnotations,
                    rec.name() + ": " + obj + " has -K-degree " + to_string(deg) +
                        " and no line-locus annotation");
      trigger(f);
      add(obj + " (lines within " + f->payload.locus + ")", curve_a(deg), 1, true);
    } else if (deg == floor) {
      const auto *f = detail::find_fact(rec, cls, FactKind::DominatingConicClass);
      add(obj + (f ? " (dominating conics)" : " (conics)"), curve_a(deg), 1, false);
    } else {
      add_grouped("curve classes of -K-degree >= 3", curve_a(deg), 1);
    }
  }

  // Surfaces.
  const int r = scan_index(rec);
  for (const auto &e : surface_scan(rec, scan_bound)) {
    const std::string obj = "surface class " + to_string(e.cls);
    using S = SurfaceScanEntry::Source;
    if (e.source == S::Skipped)
      continue;
    if (e.source == S::Annotation) {
      trigger(e.fact);
      add(obj + " (" + std::string(to_string(e.fact->kind)) + ")", *e.fact->payload.a,
          e.fact->payload.b, false);
      continue;
    }
    if (!e.effective)
      throw Error(ErrorCode::InsufficientAnnotations,
                  rec.name() + ": " + obj + " has L^2.S = " + to_string(e.q) +
                      " below every Reider threshold and no annotation");
    if (e.multiple < r)
      add_grouped("surface classes with a < 1", ratio(e.multiple, r), std::nullopt);
    else if (e.separates)
      add_grouped("surface classes with fibration adjoint", Rational(1), 1);
    else
      add(obj + " (adjoint effective, b open)", Rational(1), std::nullopt, false);
  }

  for (const auto &f : rec.annotations)
    if (f.kind == FactKind::ExceptionalDivisor) {
      trigger(&f);
      add("divisor " + to_string(f.payload.cls) + " (ExceptionalDivisor)",
          f.payload.a.value_or(Rational(1)), f.payload.b, true);
    }

  for (auto &[_, w] : groups)
    v.witnesses.push_back(std::move(w));
  v.level = aggregate(v.witnesses);

  std::vector<std::string> loci;
  for (const auto &f : rec.annotations)
    if (std::find(triggered.begin(), triggered.end(), &f) != triggered.end() &&
        !f.payload.locus.empty() &&
        std::find(loci.begin(), loci.end(), f.payload.locus) == loci.end())
      loci.push_back(f.payload.locus);
  for (std::size_t i = 0; i < loci.size(); ++i)
    v.exceptional_set += (i ? " ∪ " : "") + loci[i];
  return v;
}

/// Curve classes whose −K-degree is below 2/a: the only candidates for a
/// curve with a(C, −K) > a.
inline std::vector<QVector> curve_violation_scan(const FanoRecord &rec, int scan_bound,
                                                 const Rational &a_x) {
  detail::require_scan_bound(scan_bound);
  const auto bound = curve_degree_bound(a_x);
  const auto ak = rec.model.anticanonical();
  std::vector<QVector> out;
  for (auto &cls : detail::scan_classes(rec.model.rank, scan_bound))
    if (pair(ak, rec.model.curve(cls)) < bound)
      out.push_back(std::move(cls));
  return out;
}

inline std::vector<QVector> curve_violation_scan(const FanoRecord &rec, int scan_bound) {
  return curve_violation_scan(rec, scan_bound,
                              a_invariant(rec.model, rec.model.anticanonical()));
}

// --- verification over a record set ---------------------------------------------

struct RecordResult {
  std::string name;
  VerdictLevel computed = VerdictLevel::Unclassified;
  VerdictLevel expected = VerdictLevel::Unclassified;
  bool match = false;
  std::vector<Witness> witnesses;
  std::string exceptional_set;
  std::string error;
};

struct VerifyReport {
  std::vector<RecordResult> results;
  int pass = 0;
  int fail = 0;
  int unclassified = 0;
  std::vector<std::string> warnings;

  bool ok() const { return fail == 0; }
};

inline RecordResult verify_one(const FanoRecord &rec, int scan_bound) {
  RecordResult r;
  r.name = rec.name();
  r.expected = rec.expected_verdict;
  try {
    auto problems = validate(rec);
    if (!problems.empty())
      throw Error(ErrorCode::CorruptData, problems.front());
    auto v = classify(rec, scan_bound);
    r.computed = v.level;
    r.witnesses = std::move(v.witnesses);
    r.exceptional_set = std::move(v.exceptional_set);
  } catch (const Error &e) {
    r.computed = VerdictLevel::Unclassified;
    r.error = e.what();
  }
  r.match = r.computed == r.expected;
  return r;
}

/// Records whose expected verdict is unclassified are reported but never
/// counted as failures. Results are sorted by record name.
inline VerifyReport verify_all(const std::vector<FanoRecord> &records,
                               int scan_bound = kDefaultScanBound) {
  detail::require_scan_bound(scan_bound);
  std::vector<std::future<RecordResult>> jobs;
  jobs.reserve(records.size());
  for (const auto &rec : records)
    jobs.push_back(std::async(std::launch::async, verify_one, std::cref(rec), scan_bound));
  VerifyReport rep;
  for (auto &j : jobs)
    rep.results.push_back(j.get());
  std::sort(rep.results.begin(), rep.results.end(),
            [](const auto &x, const auto &y) { return x.name < y.name; });
  for (const auto &r : rep.results) {
    if (r.expected == VerdictLevel::Unclassified)
      ++rep.unclassified;
    else if (r.match)
      ++rep.pass;
    else
      ++rep.fail;
  }
  if (records.empty())
    rep.warnings.push_back("no records to verify; vacuous pass");
  return rep;
}

namespace json_io {

inline json to_json(const Witness &w) {
  return {{"object", w.object},
          {"a", to_json(w.a)},
          {"b", w.b ? json(*w.b) : json(nullptr)},
          {"a_cmp", std::string(to_string(w.outcome.a_cmp))},
          {"b_cmp", std::string(to_string(w.outcome.b_cmp))},
          {"excluded", w.excluded},
          {"multiplicity", w.multiplicity}};
}

inline json to_json(const BalancedVerdict &v) {
  json ws = json::array();
  for (const auto &w : v.witnesses)
    ws.push_back(to_json(w));
  return {{"level", std::string(to_string(v.level))},
          {"witnesses", ws},
          {"exceptional_set", v.exceptional_set}};
}

inline json to_json(const VerifyReport &rep) {
  json results = json::array();
  for (const auto &r : rep.results) {
    json ws = json::array();
    for (const auto &w : r.witnesses)
      ws.push_back(to_json(w));
    results.push_back({{"name", r.name},
                       {"computed", std::string(to_string(r.computed))},
                       {"expected", std::string(to_string(r.expected))},
                       {"match", r.match},
                       {"witnesses", ws}});
  }
  return {{"results", results},
          {"summary",
           {{"pass", rep.pass}, {"fail", rep.fail}, {"unclassified", rep.unclassified}}}};
}

} // namespace json_io

} // namespace balanced
