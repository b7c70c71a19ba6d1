// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include "CLI11.hpp"

#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "balanced/classifier.hpp"

namespace balanced::cli {

enum class Command { List, Show, Inv, Classify, VerifyAll, Cone, ExportDb };

struct CliConfig {
  Command command = Command::List;
  std::string target;
  std::optional<std::vector<std::string>> divisor;
  int scan_bound = kDefaultScanBound;
  std::optional<std::string> json_out;
  std::optional<std::string> db_path;
  std::vector<std::string> cone_op;
  int verbosity = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct Style {
  bool color = false;
  std::string ok(const std::string &s) const { return color ? "\033[32m" + s + "\033[0m" : s; }
  std::string bad(const std::string &s) const { return color ? "\033[31m" + s + "\033[0m" : s; }
};

inline QVector parse_vector(const std::vector<std::string> &parts) {
  QVector v;
  for (const auto &p : parts)
    v.push_back(parse_rational(p));
  return v;
}

inline QVector parse_vector(const std::string &csv) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parse_vector(parts);
}

inline void write_json(const json_io::json &j, const std::string &path) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw Error(ErrorCode::ParseError, path + ": cannot write");
  f << j.dump(2) << "\n";
}

inline const FanoRecord &lookup(const std::vector<FanoRecord> &db, const std::string &name) {
  if (const auto *r = find_record(db, name))
    return *r;
  throw Error(ErrorCode::UnknownRecord, "no record named '" + name + "' (try `list`)");
}

inline std::string rank_cell(const FanoRecord &r) {
  return r.index ? std::to_string(*r.index) : "-";
}

inline std::string witness_line(const Witness &w) {
  std::string s = "  " + w.object + ": (" + to_string(w.a) + ", " +
                  (w.b ? std::to_string(*w.b) : std::string("?")) + ") " +
                  std::string(to_string(w.outcome.a_cmp)) + "/" +
                  std::string(to_string(w.outcome.b_cmp));
  if (w.multiplicity > 1)
    s += " x" + std::to_string(w.multiplicity);
  if (w.excluded)
    s += " [excluded]";
  return s;
}

inline json_io::json dual_cone_json(const Cone &c) {
  QMatrix gens = c.facet_normals();
  for (const auto &e : c.equations()) {
    gens.push_back(e);
    gens.push_back(-e);
  }
  if (gens.empty())
    gens.push_back(zeros(c.ambient_rank()));
  return json_io::to_json(cone_from_generators(gens, c.ambient_rank()));
}

} // namespace detail

inline int execute(const CliConfig &cfg, std::ostream &out, std::ostream &err) {
  using json_io::json;
  const bool tty = &out == &std::cout && ::isatty(STDOUT_FILENO);
  const detail::Style style{tty && std::getenv("NO_COLOR") == nullptr};
  const auto db = cfg.db_path ? load_file(*cfg.db_path) : load_builtin();
  std::optional<json> doc;

  switch (cfg.command) {
  case Command::List: {
    out << std::left << std::setw(16) << "name" << std::setw(5) << "rho" << std::setw(7)
        << "index" << std::setw(8) << "degree"
        << "expected\n";
    json arr = json::array();
    for (const auto &r : db) {
      out << std::setw(16) << r.name() << std::setw(5) << r.picard_rank() << std::setw(7)
          << detail::rank_cell(r) << std::setw(8) << r.degree << to_string(r.expected_verdict)
          << "\n";
      arr.push_back({{"name", r.name()},
                     {"rank", r.picard_rank()},
                     {"degree", r.degree},
                     {"expected", std::string(to_string(r.expected_verdict))}});
    }
    doc = arr;
    break;
  }
  case Command::Show: {
    const auto &r = detail::lookup(db, cfg.target);
    const auto &m = r.model;
    out << r.name() << "\n";
    out << "  rank " << m.rank << ", degree " << r.degree;
    if (r.index)
      out << ", index " << *r.index;
    out << "\n  -K = " << to_string(m.anticanonical().coords) << "\n";
    out << "  effective cone generators:";
    for (const auto &g : m.eff_cone.generators())
      out << " " << to_string(g);
    out << "\n";
    for (const auto &ray : r.rays)
      out << "  ray " << to_string(ray.ray_type) << " (length " << ray.length << ")\n";
    if (m.rank == 2 && m.dim == 3) {
      auto sf = surface_restriction_form(m.tensor, m.anticanonical());
      out << "  (-K)^2.S = " << to_string(sf.alpha) << "n + " << to_string(sf.beta) << "m\n";
    }
    for (const auto &f : r.annotations)
      out << "  " << to_string(f.kind) << " " << to_string(f.payload.cls) << ": "
          << f.citation << "\n";
    out << "  expected: " << to_string(r.expected_verdict);
    if (!r.exceptional_set.empty())
      out << ", exceptional set " << r.exceptional_set;
    out << "\n";
    for (const auto &fl : r.flags)
      out << "  flag: " << fl << "\n";
    doc = json_io::to_json(r);
    break;
  }
  case Command::Inv: {
    const auto &r = detail::lookup(db, cfg.target);
    DivisorClass l = r.model.anticanonical();
    if (cfg.divisor) {
      l = DivisorClass{detail::parse_vector(*cfg.divisor)};
      require_length(l.coords, r.model.rank, "divisor");
    }
    if (r.has_flag(flags::kLargerConePossible) && !(l == r.model.anticanonical()))
      err << "warning: LowConfidence: the effective cone of " << r.name()
          << " may be larger than stored; a and b for L = " << to_string(l.coords)
          << " are provisional\n";
    auto rep = compute_invariants(r.model, l);
    out << "L = " << to_string(l.coords) << "\n";
    out << "a = " << to_string(rep.a) << "\n";
    out << "b = " << rep.b << "\n";
    out << "adjoint = " << to_string(rep.adjoint.coords) << "\n";
    doc = json_io::to_json(rep);
    break;
  }
  case Command::Classify: {
    const auto &r = detail::lookup(db, cfg.target);
    auto res = verify_one(r, cfg.scan_bound);
    out << r.name() << ": " << to_string(res.computed) << " (expected "
        << to_string(res.expected) << ")\n";
    if (!res.exceptional_set.empty())
      out << "exceptional set: " << res.exceptional_set << "\n";
    if (!res.error.empty())
      out << "reason: " << res.error << "\n";
    for (const auto &w : res.witnesses)
      if (cfg.verbosity > 0 || w.outcome.a_cmp != Cmp::LT)
        out << detail::witness_line(w) << "\n";
    BalancedVerdict v{res.computed, res.witnesses, res.exceptional_set};
    doc = json_io::to_json(v);
    if (!res.match) {
      if (cfg.json_out)
        detail::write_json(*doc, *cfg.json_out);
      return kExitMismatch;
    }
    break;
  }
  case Command::VerifyAll: {
    auto rep = verify_all(db, cfg.scan_bound);
    for (const auto &w : rep.warnings)
      err << "warning: " << w << "\n";
    for (const auto &r : rep.results) {
      std::string mark = r.expected == VerdictLevel::Unclassified
                             ? "SKIP"
                             : (r.match ? style.ok("PASS") : style.bad("FAIL"));
      out << std::left << std::setw(16) << r.name << " " << mark << "  "
          << to_string(r.computed);
      if (!r.match)
        out << " (expected " << to_string(r.expected) << ")";
      out << "\n";
      if (cfg.verbosity > 0 && !r.error.empty())
        out << "  " << r.error << "\n";
    }
    if (rep.ok())
      out << rep.pass << " classified entries match the rank-one and rank-two "
                         "classification theorems";
    else
      out << rep.fail << " of " << rep.pass + rep.fail << " classified entries mismatch";
    out << " (" << rep.unclassified << " unclassified)\n";
    doc = json_io::to_json(rep);
    if (cfg.json_out)
      detail::write_json(*doc, *cfg.json_out);
    return rep.ok() ? kExitOk : kExitMismatch;
  }
  case Command::Cone: {
    const auto text = json_io::read_text(cfg.target);
    const Cone c = json_io::cone_from(json_io::parse_text(text, cfg.target));
    if (cfg.cone_op.empty())
      throw CLI::ValidationError("--op", "missing operation");
    const auto &op = cfg.cone_op[0];
    auto vec_arg = [&] {
      if (cfg.cone_op.size() != 2)
        throw CLI::ValidationError("--op", op + " needs a vector argument");
      auto v = detail::parse_vector(cfg.cone_op[1]);
      require_length(v, c.ambient_rank(), "vector");
      return v;
    };
    if (op == "dualize") {
      if (cfg.cone_op.size() != 1)
        throw CLI::ValidationError("--op", "dualize takes no argument");
      doc = detail::dual_cone_json(c);
      out << doc->dump(2) << "\n";
    } else if (op == "member") {
      auto v = vec_arg();
      const bool in = contains(c, v);
      out << (in ? "true" : "false") << "\n";
      doc = json{{"vector", json_io::to_json(v)}, {"member", in}};
    } else if (op == "face") {
      auto v = vec_arg();
      auto f = minimal_supported_face(c, v);
      out << "codim = " << f.codim << "\n";
      out << "face generators:";
      for (const auto &g : f.face.generators())
        out << " " << to_string(g);
      out << "\n";
      json active = json::array();
      for (auto i : f.active_facets)
        active.push_back(i);
      doc = json{{"codim", f.codim}, {"face", json_io::to_json(f.face)},
                 {"active_facets", active}};
    } else {
      throw CLI::ValidationError("--op", "unknown operation '" + op +
                                             "' (dualize, member VEC, face VEC)");
    }
    break;
  }
  case Command::ExportDb: {
    save_file(db, cfg.target);
    out << "wrote " << db.size() << " records to " << cfg.target << "\n";
    break;
  }
  }
  if (cfg.json_out && doc)
    detail::write_json(*doc, *cfg.json_out);
  return kExitOk;
}

inline int run(int argc, const char *const *argv, std::ostream &out = std::cout,
               std::ostream &err = std::cerr) {
  CliConfig cfg;
  CLI::App app{"Exact cone and intersection computations for balanced line bundles on Fano "
               "threefolds",
               "balanced"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--db", cfg.db_path, "Load records from a JSON database instead of the builtin set")
      ->check(CLI::ExistingFile);
  app.add_option("--json", cfg.json_out, "Also write a JSON report to this path");
  app.add_flag("-v,--verbose", cfg.verbosity, "Increase verbosity (repeatable, up to 2)")
      ->check(CLI::Range(0, 2));

  auto *list = app.add_subcommand("list", "List database records");
  auto *show = app.add_subcommand("show", "Show one record");
  show->add_option("name", cfg.target)->required();
  auto *inv = app.add_subcommand("inv", "Compute a(X,L), b(X,L) and the adjoint class");
  inv->add_option("name", cfg.target)->required();
  inv->add_option("--divisor", cfg.divisor, "Coefficients c1,c2,... of L (default -K)")
      ->delimiter(',');
  auto *cls = app.add_subcommand("classify", "Classify one record");
  cls->add_option("name", cfg.target)->required();
  cls->add_option("--scan-bound", cfg.scan_bound)->check(CLI::Range(kMinScanBound, 1000));
  auto *ver = app.add_subcommand("verify-all", "Classify every record and compare");
  ver->add_option("--scan-bound", cfg.scan_bound)->check(CLI::Range(kMinScanBound, 1000));
  auto *cone = app.add_subcommand("cone", "Cone operations on a JSON cone file");
  cone->add_option("file", cfg.target)->required()->check(CLI::ExistingFile);
  cone->add_option("--op", cfg.cone_op, "dualize | member VEC | face VEC")
      ->required()
      ->expected(1, 2);
  auto *exp = app.add_subcommand("export-db", "Write the loaded records as JSON");
  exp->add_option("file", cfg.target)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\nhint: run `balanced --help` for usage\n";
    return kExitUsage;
  }

  if (*list)
    cfg.command = Command::List;
  else if (*show)
    cfg.command = Command::Show;
  else if (*inv)
    cfg.command = Command::Inv;
  else if (*cls)
    cfg.command = Command::Classify;
  else if (*ver)
    cfg.command = Command::VerifyAll;
  else if (*cone)
    cfg.command = Command::Cone;
  else if (*exp)
    cfg.command = Command::ExportDb;

  try {
    return execute(cfg, out, err);
  } catch (const CLI::Error &e) {
    err << "error: " << e.what() << "\nhint: run `balanced --help` for usage\n";
    return kExitUsage;
  } catch (const Error &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace balanced::cli
