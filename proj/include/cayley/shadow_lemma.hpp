#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "density.hpp"
#include "horo.hpp"

namespace cayley {

using Rational = boost::rational<long long>;

// -------------------------------------------------------------------------
// Exact limit measure on the space of directions, available when sphere
// growth is geometric and cylinder shares are depth-stable (trees).

struct CylinderMeasure {
  Int valence = 0;    // |S(o, 1)|
  Int branching = 0;  // verified per-level descendant multiplier
  Int checked_depth = 0;
};

inline CylinderMeasure exact_limit_measure(const Space& sp, Int check_depth = 4) {
  if (check_depth < 2) throw SpaceError("stability check needs depth >= 2");
  auto c = sphere_counts_constrained(sp, whole_group(), check_depth + 1);
  if (c[1] == 0) throw CapabilityError("limit measure needs at least one generator");
  if (c[2] % c[1] != 0)
    throw CapabilityError("limit measure needs geometric sphere growth");
  BigCount b = c[2] / c[1];
  if (b == 0) throw CapabilityError("limit measure needs unbounded sphere growth");
  for (Int n = 2; n <= check_depth; ++n)
    if (c[static_cast<size_t>(n) + 1] != c[static_cast<size_t>(n)] * b)
      throw CapabilityError("limit measure needs geometric sphere growth");
  // Cylinder share of a first-shell vertex must be depth-stable as well.
  Word v = ball_points(sp, 1).at(1);
  std::vector<BigCount> desc(static_cast<size_t>(check_depth) + 2, 0);
  enumerate_subtree(sp, v, check_depth + 1,
                    [&](const Word&, Int len) { desc[static_cast<size_t>(len)] += 1; });
  for (Int n = 1; n <= check_depth; ++n)
    if (desc[static_cast<size_t>(n) + 1] * c[static_cast<size_t>(n)] !=
        desc[static_cast<size_t>(n)] * c[static_cast<size_t>(n) + 1])
      throw CapabilityError("limit measure needs depth-stable cylinder shares");
  CylinderMeasure out;
  out.valence = static_cast<Int>(c[1]);
  out.branching = static_cast<Int>(b);
  out.checked_depth = check_depth;
  return out;
}

// Mass of the set of directions passing through v: 1/(valence * branching^(n-1)).
inline Rational cylinder_mass(const Space& sp, const CylinderMeasure& m, const Word& v) {
  validate(sp, v);
  Int n = length(v);
  if (n == 0) return Rational(1);
  long long den = m.valence;
  for (Int i = 1; i < n; ++i) {
    if (den > std::numeric_limits<long long>::max() / m.branching)
      throw CapabilityError("cylinder depth exceeds exact arithmetic range");
    den *= m.branching;
  }
  return Rational(1, den);
}

// Mass of the same cylinder seen from basepoint x, computed as the share of
// S(x, N) inside it and required to be stable at two consecutive depths.
inline Rational cylinder_mass_from(const Space& sp, const CylinderMeasure& m, const Word& x,
                                   const Word& v, Int cap = kDefaultEnumCap) {
  validate(sp, x);
  validate(sp, v);
  if (m.valence < 1 || m.branching < 1)
    throw SpaceError("cylinder measure is not initialized");
  if (!sp.is_tree()) throw CapabilityError("shifted cylinder masses need a tree");
  if (v.is_identity()) return Rational(1);
  Int n = length(v);
  Int N = distance(x, v) + 2;
  long long inside[2] = {0, 0};
  long long total[2] = {0, 0};
  enumerate_ball(
      sp, N + 1,
      [&](const Word& u, Int len) {
        if (len < N) return;
        int slot = static_cast<int>(len - N);
        ++total[slot];
        if (detail::tree_lcp(v, mul(x, u)) == n) ++inside[slot];
      },
      cap);
  Rational share0(inside[0], total[0]);
  Rational share1(inside[1], total[1]);
  if (share0 != share1)
    throw CapabilityError("cylinder share did not stabilize from the shifted basepoint");
  return share0;
}

// -------------------------------------------------------------------------
// Per-annulus shadow mass table against a claimed growth rate.

struct ShadowRow {
  Word v;
  Int depth = 0;
  double mass = 0;
  double ratio = 0;  // mass * e^{+omega * depth}
};

struct ShadowReport {
  double omega = 0;
  Int r = 0;
  bool partial = false;
  Int n1 = 0;
  Int n2 = 0;
  std::vector<ShadowRow> rows;
  size_t zero_rows = 0;    // targets whose shadow captured no atom
  double ratio_min = 0;    // over rows with positive mass
  double ratio_max = 0;
  double spread = 0;       // ratio_max / ratio_min
  std::vector<Int> overlap;  // per annulus: most shadows holding one sampled deep atom
  Int overlap_max = 0;
};

struct ShadowReportSpec {
  double omega = 0;
  Int r = 0;
  bool partial = false;
  std::vector<Word> F;
  Int n1 = 1;
  Int n2 = 4;
  size_t overlap_samples = 25;
  Int cap = kDefaultEnumCap;
};

inline ShadowReport shadow_report(const Space& sp, const MeasureEstimate& est,
                                  const ShadowReportSpec& spec) {
  if (spec.n1 < 1 || spec.n2 < spec.n1) throw SpaceError("annulus window must satisfy 1 <= n1 <= n2");
  if (spec.n2 > est.R) throw SpaceError("annulus window exceeds the estimator support");
  if (spec.r < 0) throw SpaceError("shadow radius must be non-negative");
  if (spec.partial && spec.F.empty()) throw SpaceError("partial shadow needs a non-empty barrier set");
  if (!(spec.omega >= 0) || !std::isfinite(spec.omega))
    throw SpaceError("growth rate must be finite and >= 0");
  ShadowReport out;
  out.omega = spec.omega;
  out.r = spec.r;
  out.partial = spec.partial;
  out.n1 = spec.n1;
  out.n2 = spec.n2;

  std::vector<Word> targets;
  std::vector<Int> depth_of;
  std::vector<size_t> annulus_begin;
  for (Int n = spec.n1; n <= spec.n2; ++n) {
    annulus_begin.push_back(targets.size());
    auto sph = sphere_points(sp, n, spec.cap);
    for (auto& v : sph) {
      targets.push_back(std::move(v));
      depth_of.push_back(n);
    }
  }
  annulus_begin.push_back(targets.size());

  std::vector<double> masses;
  const bool fast = sp.is_tree() && !spec.partial && spec.r == 0 && est.x.is_identity();
  if (fast) {
    // Plain shadows from the basepoint of a tree are prefix sets, so each
    // target's mass is a weighted count of its own subtree.
    masses.resize(targets.size());
    std::vector<long long> by_len(static_cast<size_t>(est.R) + 1, 0);
    for (size_t i = 0; i < targets.size(); ++i) {
      std::fill(by_len.begin(), by_len.end(), 0);
      enumerate_subtree(sp, targets[i], est.R,
                        [&](const Word&, Int len) { ++by_len[static_cast<size_t>(len)]; },
                        spec.cap);
      KahanSum acc;
      for (size_t l = 0; l < by_len.size(); ++l)
        acc.add(static_cast<double>(by_len[l]) * std::exp(-est.s * static_cast<double>(l)));
      masses[i] = acc.value() / est.normalizer;
    }
  } else {
    masses = shadow_masses(sp, est, targets, spec.r, spec.partial, spec.F, spec.cap);
  }

  out.rows.resize(targets.size());
  double mn = std::numeric_limits<double>::infinity();
  double mx = 0;
  for (size_t i = 0; i < targets.size(); ++i) {
    out.rows[i].v = targets[i];
    out.rows[i].depth = depth_of[i];
    out.rows[i].mass = masses[i];
    out.rows[i].ratio = masses[i] * std::exp(spec.omega * static_cast<double>(depth_of[i]));
    if (masses[i] > 0) {
      mn = std::min(mn, out.rows[i].ratio);
      mx = std::max(mx, out.rows[i].ratio);
    } else {
      ++out.zero_rows;
    }
  }
  if (mx > 0) {
    out.ratio_min = mn;
    out.ratio_max = mx;
    out.spread = mx / mn;
  }

  // Overlap audit: sample atoms on the deepest sphere and count how many
  // same-annulus shadows hold each one.
  std::vector<Word> deep;
  {
    BigCount total = est.ball_counts[static_cast<size_t>(est.R)];
    Int stride = 1;
    if (spec.overlap_samples > 0 && total > BigCount{spec.overlap_samples})
      stride = static_cast<Int>(total / BigCount{spec.overlap_samples});
    Int idx = 0;
    enumerate_ball(
        sp, est.R,
        [&](const Word& g, Int len) {
          if (len != est.R) return;
          if (idx++ % stride == 0) deep.push_back(g);
        },
        spec.cap);
  }
  std::vector<Word> shifted;
  if (spec.partial && sp.is_tree()) {
    shifted.reserve(targets.size() * spec.F.size());
    for (const auto& v : targets)
      for (const auto& f : spec.F) shifted.push_back(mul(v, f));
  }
  out.overlap.assign(static_cast<size_t>(spec.n2 - spec.n1) + 1, 0);
  for (const auto& g : deep) {
    std::vector<Int> per(out.overlap.size(), 0);
    for (size_t a = 0; a + 1 < annulus_begin.size(); ++a) {
      for (size_t i = annulus_begin[a]; i < annulus_begin[a + 1]; ++i) {
        bool in;
        if (sp.is_tree()) {
          in = detail::tree_dist_to_canonical(targets[i], g) <= spec.r;
          if (in && spec.partial) {
            bool barrier = false;
            for (size_t j = 0; j < spec.F.size() && !barrier; ++j)
              barrier = detail::tree_dist_to_canonical(shifted[i * spec.F.size() + j], g) <= spec.r;
            in = barrier;
          }
        } else {
          ShadowSpec ss{identity(), targets[i], spec.r, spec.partial, spec.F, false};
          in = shadow_contains(sp, ss, g);
        }
        if (in) ++per[a];
      }
      out.overlap[a] = std::max(out.overlap[a], per[a]);
    }
  }
  for (Int v : out.overlap) out.overlap_max = std::max(out.overlap_max, v);
  return out;
}

// Exact counterpart on cylinder sets: mass * branching^depth is a constant
// (valence - 1)/valence... reported, not assumed.
struct ExactShadowRow {
  Word v;
  Int depth = 0;
  Rational mass;
  Rational ratio;  // mass * branching^depth
};

struct ExactShadowReport {
  Int n1 = 0;
  Int n2 = 0;
  std::vector<ExactShadowRow> rows;
  std::vector<Rational> annulus_total;  // cylinder masses sum to 1 on each level
  bool constant_ratio = false;
  Rational ratio;
};

inline ExactShadowReport exact_shadow_report(const Space& sp, const CylinderMeasure& m, Int n1,
                                             Int n2, Int cap = kDefaultEnumCap) {
  if (n1 < 1 || n2 < n1) throw SpaceError("annulus window must satisfy 1 <= n1 <= n2");
  ExactShadowReport out;
  out.n1 = n1;
  out.n2 = n2;
  bool first = true;
  for (Int n = n1; n <= n2; ++n) {
    Rational total(0);
    for (auto& v : sphere_points(sp, n, cap)) {
      ExactShadowRow row;
      row.depth = n;
      row.mass = cylinder_mass(sp, m, v);
      total += row.mass;
      Rational scale(1);
      for (Int i = 0; i < n; ++i) scale *= Rational(m.branching);
      row.ratio = row.mass * scale;
      if (first) {
        out.ratio = row.ratio;
        out.constant_ratio = true;
        first = false;
      } else if (row.ratio != out.ratio) {
        out.constant_ratio = false;
      }
      row.v = std::move(v);
      out.rows.push_back(std::move(row));
    }
    out.annulus_total.push_back(total);
  }
  return out;
}

// -------------------------------------------------------------------------
// Quasi-conformality of the estimator under a group shift.

struct ConformalityRow {
  Word v;
  double mass_shifted = 0;   // measure based at g.o
  double mass_base = 0;      // measure based at o
  double measured = 0;       // their ratio
  double busemann = 0;       // cocycle B(g.o, o) at the direction below v
  bool stabilized = false;   // horofunction limit converged at this radius
  bool comparable = true;    // base mass positive
  double predicted = 0;      // e^{-s * busemann}
  double defect = 0;         // measured / predicted
};

namespace detail {

// Deepening sequence below v: repeat the final letter, which extends the
// normal form without backtracking.
inline std::vector<Word> straight_rays(const Space& sp, const Word& v, int count) {
  if (v.is_identity()) throw SpaceError("conformality target must not be the identity");
  const Syllable& last = v.syl.back();
  int coord = 0;
  for (size_t i = 0; i < last.v.size(); ++i)
    if (last.v[i] != 0) coord = static_cast<int>(i);
  int sign = last.v[static_cast<size_t>(coord)] > 0 ? 1 : -1;
  std::vector<Int> step(last.v.size(), 0);
  step[static_cast<size_t>(coord)] = sign;
  std::vector<Word> ys;
  Word cur = v;
  (void)sp;
  for (int k = 0; k < count; ++k) {
    ys.push_back(cur);
    append_syllable(cur, last.factor, step);
  }
  return ys;
}

}  // namespace detail

inline std::vector<ConformalityRow> conformality_check(const Space& sp, double s, const Word& g,
                                                       const std::vector<Word>& targets, Int R,
                                                       Int horo_R = -1, int window = 3,
                                                       Int cap = kDefaultEnumCap) {
  validate(sp, g);
  if (window < 2) throw SpaceError("stability window must be >= 2");
  if (horo_R < 0) horo_R = std::max<Int>(length(g), 1);
  MeasureEstimate base = ps_measure(sp, s, identity(), R);
  MeasureEstimate shifted = ps_measure(sp, s, g, R);
  auto mass_base = shadow_masses(sp, base, targets, 0, false, {}, cap);
  auto mass_shifted = shadow_masses(sp, shifted, targets, 0, false, {}, cap);
  std::vector<ConformalityRow> out(targets.size());
  for (size_t i = 0; i < targets.size(); ++i) {
    ConformalityRow& row = out[i];
    row.v = targets[i];
    row.mass_base = mass_base[i];
    row.mass_shifted = mass_shifted[i];
    auto ys = detail::straight_rays(sp, targets[i], window + 2);
    HoroLimit lim = horo_limit(sp, ys, horo_R, window);
    row.stabilized = lim.converged;
    row.busemann = busemann_cocycle(sp, lim.vector, g, identity());
    row.predicted = std::exp(-s * row.busemann);
    if (row.mass_base > 0) {
      row.measured = row.mass_shifted / row.mass_base;
      row.defect = row.measured / row.predicted;
    } else {
      row.comparable = false;
    }
  }
  return out;
}

struct ExactConformalityRow {
  Word v;
  Rational mass_shifted;
  Rational mass_base;
  double measured = 0;
  double busemann = 0;
  bool stabilized = false;
  double predicted = 0;
  double defect = 0;
};

inline std::vector<ExactConformalityRow> exact_conformality_check(
    const Space& sp, const CylinderMeasure& m, const Word& g, const std::vector<Word>& targets,
    Int horo_R = -1, int window = 3, Int cap = kDefaultEnumCap) {
  validate(sp, g);
  if (window < 2) throw SpaceError("stability window must be >= 2");
  if (horo_R < 0) horo_R = std::max<Int>(length(g), 1);
  std::vector<ExactConformalityRow> out(targets.size());
  for (size_t i = 0; i < targets.size(); ++i) {
    ExactConformalityRow& row = out[i];
    row.v = targets[i];
    row.mass_base = cylinder_mass(sp, m, targets[i]);
    row.mass_shifted = cylinder_mass_from(sp, m, g, targets[i], cap);
    row.measured = boost::rational_cast<double>(row.mass_shifted / row.mass_base);
    auto ys = detail::straight_rays(sp, targets[i], window + 2);
    HoroLimit lim = horo_limit(sp, ys, horo_R, window);
    row.stabilized = lim.converged;
    row.busemann = busemann_cocycle(sp, lim.vector, g, identity());
    row.predicted = std::pow(static_cast<double>(m.branching), -row.busemann);
    row.defect = row.measured / row.predicted;
  }
  return out;
}

}  // namespace cayley
