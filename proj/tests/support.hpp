// Copyright 2026 The balanced-fano Authors
// Licensed under the Apache License, Version 2.0, see http://www.apache.org/licenses/LICENSE-2.0

// Generators and independent oracles shared by the test binaries.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "balanced/classifier.hpp"

namespace testing_support {

using namespace balanced;

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long lo, long hi, long max_den = 6) {
    const long den = integer(1, max_den);
    return ratio(integer(lo * den, hi * den), den);
  }

  Rational positive_rational(long max_num = 12, long max_den = 7) {
    return ratio(integer(1, max_num), integer(1, max_den));
  }

  QVector vector(std::size_t n, long lo, long hi, long max_den = 1) {
    QVector v(n);
    for (auto &x : v)
      x = max_den == 1 ? Rational(integer(lo, hi)) : rational(lo, hi, max_den);
    return v;
  }

  /// Generators of a random pointed, full-dimensional cone: every ray has a
  /// positive first coordinate, and the standard basis shifted into that
  /// half-space guarantees full dimension.
  QMatrix pointed_cone(std::size_t rank, std::size_t extra) {
    QMatrix rays;
    for (std::size_t i = 0; i < rank; ++i) {
      QVector v = vector(rank, -3, 3);
      v[0] = integer(1, 4);
      if (i > 0)
        v[i] += 5;
      rays.push_back(v);
    }
    for (std::size_t k = 0; k < extra; ++k) {
      QVector v = vector(rank, -3, 3);
      v[0] = integer(1, 4);
      rays.push_back(v);
    }
    return rays;
  }

  /// Strictly positive combination of all generators.
  QVector interior_point(const QMatrix &rays) {
    QVector p = zeros(rays.front().size());
    for (const auto &r : rays)
      p = p + positive_rational(5, 3) * r;
    return p;
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

// --- Fourier-Motzkin oracle ---------------------------------------------------

struct HalfSpaceSystem {
  QMatrix inequalities; // a . x >= 0
  QMatrix equations;    // a . x == 0
};

/// Projects {(x, lambda) : x = G^T lambda, lambda >= 0} onto x by eliminating
/// equalities first and then each remaining lambda by Fourier-Motzkin.
inline HalfSpaceSystem fourier_motzkin(const QMatrix &gens, std::size_t rank) {
  const std::size_t k = gens.size();
  const std::size_t w = rank + k;
  struct Row {
    QVector a;
    bool eq;
  };
  std::vector<Row> rows;
  for (std::size_t j = 0; j < rank; ++j) {
    QVector a = zeros(w);
    a[j] = 1;
    for (std::size_t i = 0; i < k; ++i)
      a[rank + i] = -gens[i][j];
    rows.push_back({a, true});
  }
  for (std::size_t i = 0; i < k; ++i)
    rows.push_back({unit(w, rank + i), false});

  std::vector<bool> gone(w, false);
  // Equalities.
  for (;;) {
    std::size_t e = rows.size(), p = 0;
    for (std::size_t r = 0; r < rows.size() && e == rows.size(); ++r)
      if (rows[r].eq)
        for (std::size_t c = rank; c < w; ++c)
          if (rows[r].a[c] != 0) {
            e = r;
            p = c;
            break;
          }
    if (e == rows.size())
      break;
    const Row piv = rows[e];
    rows.erase(rows.begin() + static_cast<long>(e));
    for (auto &r : rows)
      if (r.a[p] != 0)
        r.a = r.a - (r.a[p] / piv.a[p]) * piv.a;
    gone[p] = true;
  }
  // Inequalities.
  for (std::size_t c = rank; c < w; ++c) {
    if (gone[c])
      continue;
    std::vector<Row> next, pos, neg;
    for (auto &r : rows) {
      if (r.a[c] > 0 && !r.eq)
        pos.push_back(r);
      else if (r.a[c] < 0 && !r.eq)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    for (const auto &p : pos)
      for (const auto &n : neg)
        next.push_back({(-n.a[c]) * p.a + p.a[c] * n.a, false});
    rows.clear();
    for (auto &r : next) {
      if (is_zero(r.a))
        continue;
      r.a = primitive(r.a);
      bool dup = false;
      for (const auto &s : rows)
        dup = dup || (s.a == r.a && s.eq == r.eq);
      if (!dup)
        rows.push_back(r);
    }
  }
  HalfSpaceSystem out;
  for (const auto &r : rows) {
    QVector a(r.a.begin(), r.a.begin() + static_cast<long>(rank));
    if (is_zero(a))
      continue;
    (r.eq ? out.equations : out.inequalities).push_back(a);
  }
  return out;
}

inline bool satisfies(const HalfSpaceSystem &s, const QVector &v) {
  for (const auto &a : s.inequalities)
    if (dot(a, v) < 0)
      return false;
  for (const auto &a : s.equations)
    if (dot(a, v) != 0)
      return false;
  return true;
}

// --- breakpoint oracle for a(X, L) --------------------------------------------

/// min{t : tL + K in cone(rays)}, found by solving tL + K = sum mu_s g_s over
/// every linearly independent (d-1)-subset of generators and testing each
/// candidate with the simplex membership oracle. Uses no facet data.
inline std::optional<Rational> a_by_breakpoints(const QMatrix &rays, const QVector &l,
                                                const QVector &k) {
  const std::size_t d = l.size();
  std::vector<Rational> candidates;
  std::vector<std::size_t> pick;
  auto visit = [&](const std::vector<std::size_t> &s) {
    QMatrix cols;
    for (auto i : s)
      cols.push_back(rays[i]);
    if (d > 1 && span_rank(cols) != d - 1)
      return;
    // Unknowns (t, mu_1..mu_{d-1}); t L - sum mu g = -K.
    QMatrix a(d, zeros(d));
    for (std::size_t r = 0; r < d; ++r) {
      a[r][0] = l[r];
      for (std::size_t j = 0; j < s.size(); ++j)
        a[r][j + 1] = -cols[j][r];
    }
    if (auto x = linalg::solve(a, -k))
      candidates.push_back((*x)[0]);
  };
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (pick.size() + 1 == d) {
      visit(pick);
      return;
    }
    for (std::size_t i = start; i < rays.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  std::optional<Rational> best;
  for (const auto &t : candidates)
    if ((!best || t < *best) && nonneg_combination(t * l + k, rays))
      best = t;
  return best;
}

// --- surface fixtures ------------------------------------------------------------

struct SurfaceFixture {
  VarietyModel model;
  std::vector<NegativeCurve> curves;
  std::string label;
};

/// Blow-up of P2 at k <= 3 general points; basis (H, E_1, ..., E_k).
inline SurfaceFixture blowup_p2(std::size_t k) {
  const std::size_t r = k + 1;
  SurfaceFixture f;
  f.label = "Bl_" + std::to_string(k) + " P2";
  auto &m = f.model;
  m.name = f.label;
  m.dim = 2;
  m.rank = r;
  m.tensor = IntersectionTensor(2, r);
  m.tensor.set({0, 0}, 1);
  for (std::size_t i = 1; i < r; ++i)
    m.tensor.set({i, i}, -1);
  QVector kc = zeros(r);
  kc[0] = -3;
  for (std::size_t i = 1; i < r; ++i)
    kc[i] = 1;
  m.canonical = DivisorClass{kc};
  QMatrix gens;
  for (std::size_t i = 1; i < r; ++i) {
    gens.push_back(unit(r, i));
    f.curves.push_back({DivisorClass{unit(r, i)}, Rational(-1), "E" + std::to_string(i)});
  }
  if (k == 0) {
    gens.push_back(unit(r, 0));
  } else if (k == 1) {
    gens.push_back(qvec({1, -1}));
  } else {
    for (std::size_t i = 1; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) {
        QVector v = unit(r, 0);
        v[i] = -1;
        v[j] = -1;
        gens.push_back(v);
        f.curves.push_back({DivisorClass{v}, Rational(-1),
                            "H-E" + std::to_string(i) + "-E" + std::to_string(j)});
      }
    if (k == 2) {
      gens.push_back(qvec({1, -1, 0}));
      gens.push_back(qvec({1, 0, -1}));
    }
  }
  m.eff_cone = cone_from_generators(gens, r);
  m.curve_pairing = identity_pairing(r);
  return f;
}

/// Hirzebruch surface F_e, basis (F, C0) with F^2 = 0, F.C0 = 1, C0^2 = -e.
inline SurfaceFixture hirzebruch(int e) {
  SurfaceFixture f;
  f.label = "F_" + std::to_string(e);
  auto &m = f.model;
  m.name = f.label;
  m.dim = 2;
  m.rank = 2;
  m.tensor = IntersectionTensor(2, 2);
  m.tensor.set({0, 1}, 1);
  m.tensor.set({1, 1}, -e);
  m.canonical = DivisorClass{qvec({-(e + 2), -2})};
  m.eff_cone = cone_from_generators({qvec({1, 0}), qvec({0, 1})}, 2);
  m.curve_pairing = identity_pairing(2);
  if (e > 0)
    f.curves.push_back({DivisorClass{qvec({0, 1})}, Rational(-e), "C0"});
  return f;
}

/// Positive part found by trying every subset of the supplied curves as the
/// support of N: the subset must have a negative definite Gram matrix, give
/// nonnegative coefficients, and leave P orthogonal to the support and
/// nonnegative on every curve.
inline std::optional<DivisorClass> brute_force_positive_part(const SurfaceFixture &s,
                                                             const DivisorClass &d) {
  const auto &cs = s.curves;
  const std::size_t k = cs.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> sup;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1)
        sup.push_back(i);
    QMatrix gram(sup.size(), zeros(sup.size()));
    QVector rhs(sup.size());
    for (std::size_t i = 0; i < sup.size(); ++i) {
      rhs[i] = intersect(s.model, d, cs[sup[i]].cls);
      for (std::size_t j = 0; j < sup.size(); ++j)
        gram[i][j] = intersect(s.model, cs[sup[i]].cls, cs[sup[j]].cls);
    }
    if (!sup.empty() && !linalg::is_negative_definite(gram))
      continue;
    QVector x;
    if (!sup.empty()) {
      auto sol = linalg::solve(gram, rhs);
      if (!sol)
        continue;
      x = *sol;
    }
    bool ok = true;
    DivisorClass n{zeros(s.model.rank)};
    for (std::size_t i = 0; i < sup.size(); ++i) {
      ok = ok && x[i] > 0;
      n = n + x[i] * cs[sup[i]].cls;
    }
    const DivisorClass p = d - n;
    for (const auto &c : cs)
      ok = ok && intersect(s.model, p, c.cls) >= 0;
    if (ok)
      return p;
  }
  return std::nullopt;
}

inline SurfaceFixture random_fixture(Gen &g) {
  if (g.integer(0, 1) == 0)
    return blowup_p2(static_cast<std::size_t>(g.integer(1, 3)));
  return hirzebruch(static_cast<int>(g.integer(0, 3)));
}

} // namespace testing_support
