#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "count.hpp"
#include "enumerate.hpp"
#include "shadow.hpp"
#include "summation.hpp"
#include "word.hpp"

namespace cayley {

// Growth below this rate is reported as flat: the weighted series built from
// such counts carries no exponential signal worth normalizing against.
constexpr double kFlatExponentThreshold = 0.1;

namespace detail {

// Length of the common prefix of two normal forms, counted in letters.
// Meaningful when every factor has rank one (each syllable is a power of a
// single generator), which is exactly the tree case.
inline Int tree_lcp(const Word& a, const Word& b) {
  Int l = 0;
  for (size_t i = 0; i < a.syl.size() && i < b.syl.size(); ++i) {
    const Syllable& u = a.syl[i];
    const Syllable& v = b.syl[i];
    if (u.factor != v.factor) break;
    Int ua = u.v[0];
    Int vb = v.v[0];
    if ((ua > 0) != (vb > 0)) break;
    l += std::min(ua < 0 ? -ua : ua, vb < 0 ? -vb : vb);
    if (ua != vb) break;
  }
  return l;
}

// d(y, [o,g]) along the canonical geodesic, valid on trees: the nearest point
// of the unique geodesic is reached where y stops sharing letters with g.
inline Int tree_dist_to_canonical(const Word& y, const Word& g) {
  return length(y) - tree_lcp(y, g);
}

}  // namespace detail

// -------------------------------------------------------------------------
// Truncated weighted series over a constrained family.

struct PoincareEstimate {
  double s = 0;
  Int R = 0;
  Word x;
  Word y;
  std::vector<BigCount> counts;  // counts[n] = #{g in family : d(x, g*y) = n}
  std::vector<double> annulus;   // counts[n] * e^{-s n}
  double value = 0;              // compensated running total
};

inline PoincareEstimate poincare_partial(const Space& sp, const Predicate& pred, double s,
                                         const Word& x, const Word& y, Int R) {
  if (!(s >= 0) || !std::isfinite(s)) throw SpaceError("series exponent must be finite and >= 0");
  if (R < 0) throw SpaceError("truncation radius must be >= 0");
  validate(sp, x);
  validate(sp, y);
  PoincareEstimate out;
  out.s = s;
  out.R = R;
  out.x = x;
  out.y = y;
  out.counts = sphere_counts_constrained(sp, pred, R, x, y);
  out.annulus.resize(out.counts.size());
  KahanSum acc;
  for (size_t n = 0; n < out.counts.size(); ++n) {
    out.annulus[n] = big_to_double(out.counts[n]) * std::exp(-s * static_cast<double>(n));
    acc.add(out.annulus[n]);
  }
  out.value = acc.value();
  return out;
}

inline PoincareEstimate poincare_partial(const Space& sp, const Predicate& pred, double s, Int R) {
  return poincare_partial(sp, pred, s, identity(), identity(), R);
}

// -------------------------------------------------------------------------
// Growth-rate estimate from annulus counts.

struct ExponentReport {
  Int n_max = 0;
  Int delta = 0;                 // annulus half-width
  std::vector<BigCount> counts;  // c(n) = #{g in family : |d(o,g) - n| <= delta}
  std::vector<double> quotient;  // log c(n) / n for n >= 1, 0 on skipped rows
  std::vector<char> skipped;     // rows with c(n) == 0, excluded from the fit
  double omega_hat = 0;          // two-point slope of log c over [fit_lo, fit_hi]
  Int fit_lo = 0;
  Int fit_hi = 0;
  bool decreasing_tail = false;  // quotient curve non-increasing over the upper half
  bool degenerate = false;       // no usable anchor pair
};

// omega_hat is the slope of log c(n) between the deepest nonzero row and the
// deepest nonzero row at or below ceil(n_max/2).  The slope cancels the
// bounded prefactor that the raw quotient log c(n)/n only sheds at rates the
// curve itself reports; zero-count rows (periodic families) are skipped.
inline ExponentReport critical_exponent(const Space& sp, const Predicate& pred, Int n_max,
                                        Int delta = 0) {
  if (n_max < 1) throw SpaceError("n_max must be >= 1");
  if (delta < 0) throw SpaceError("annulus half-width must be >= 0");
  ExponentReport out;
  out.n_max = n_max;
  out.delta = delta;
  auto sph = sphere_counts_constrained(sp, pred, n_max + delta);
  out.counts.assign(static_cast<size_t>(n_max) + 1, BigCount{0});
  for (Int n = 0; n <= n_max; ++n) {
    BigCount c = 0;
    for (Int m = std::max<Int>(0, n - delta); m <= n + delta; ++m) c += sph[static_cast<size_t>(m)];
    out.counts[static_cast<size_t>(n)] = c;
  }
  out.quotient.assign(static_cast<size_t>(n_max) + 1, 0.0);
  out.skipped.assign(static_cast<size_t>(n_max) + 1, 0);
  for (Int n = 0; n <= n_max; ++n) {
    if (out.counts[static_cast<size_t>(n)] == 0) {
      out.skipped[static_cast<size_t>(n)] = 1;
    } else if (n >= 1) {
      out.quotient[static_cast<size_t>(n)] =
          std::log(big_to_double(out.counts[static_cast<size_t>(n)])) / static_cast<double>(n);
    }
  }
  Int hi = n_max;
  while (hi >= 0 && out.counts[static_cast<size_t>(hi)] == 0) --hi;
  Int lo = std::min((n_max + 1) / 2, hi - 1);
  while (lo >= 0 && out.counts[static_cast<size_t>(lo)] == 0) --lo;
  if (hi >= 1 && lo >= 0 && lo < hi) {
    out.fit_hi = hi;
    out.fit_lo = lo;
    out.omega_hat = (std::log(big_to_double(out.counts[static_cast<size_t>(hi)])) -
                     std::log(big_to_double(out.counts[static_cast<size_t>(lo)]))) /
                    static_cast<double>(hi - lo);
  } else {
    out.degenerate = true;
  }
  out.decreasing_tail = true;
  {
    double prev = std::numeric_limits<double>::infinity();
    for (Int n = std::max<Int>(1, (n_max + 1) / 2); n <= n_max; ++n) {
      if (out.skipped[static_cast<size_t>(n)]) continue;
      double q = out.quotient[static_cast<size_t>(n)];
      if (q > prev + 1e-12) out.decreasing_tail = false;
      prev = q;
    }
  }
  return out;
}

// -------------------------------------------------------------------------
// Truncated conformal-density estimator: atoms g -> e^{-s d(x, g)} / Z on the
// ball B(o, R), normalized by the basepoint series Z = sum e^{-s |g|}.

struct MeasureEstimate {
  double s = 0;
  Int R = 0;
  Word x;
  double normalizer = 0;              // truncated basepoint series, shared by every x
  std::vector<BigCount> ball_counts;  // whole-family sphere counts from o
  double omega_hint = 0;
  bool below_critical = false;        // s <= omega_hint: truncation converges slowly
};

inline MeasureEstimate ps_measure(const Space& sp, double s, const Word& x, Int R) {
  if (!(s >= 0) || !std::isfinite(s)) throw SpaceError("density exponent must be finite and >= 0");
  if (R < 0) throw SpaceError("support radius must be >= 0");
  validate(sp, x);
  MeasureEstimate out;
  out.s = s;
  out.R = R;
  out.x = x;
  out.ball_counts = sphere_counts_constrained(sp, whole_group(), R);
  KahanSum z;
  for (size_t n = 0; n < out.ball_counts.size(); ++n)
    z.add(big_to_double(out.ball_counts[n]) * std::exp(-s * static_cast<double>(n)));
  out.normalizer = z.value();
  if (R >= 2) {
    auto er = critical_exponent(sp, whole_group(), R);
    if (!er.degenerate) {
      out.omega_hint = er.omega_hat;
      out.below_critical = s <= er.omega_hat + 1e-12;
    }
  }
  return out;
}

inline double measure_atom(const Space& sp, const MeasureEstimate& est, const Word& g) {
  validate(sp, g);
  if (length(g) > est.R) throw SpaceError("atom lies outside the estimator support");
  return std::exp(-est.s * static_cast<double>(distance(est.x, g))) / est.normalizer;
}

inline double total_mass(const Space& sp, const MeasureEstimate& est,
                         Int cap = kDefaultEnumCap) {
  KahanSum acc;
  if (est.x.is_identity()) {
    for (size_t n = 0; n < est.ball_counts.size(); ++n)
      acc.add(big_to_double(est.ball_counts[n]) * std::exp(-est.s * static_cast<double>(n)));
  } else {
    enumerate_ball(
        sp, est.R,
        [&](const Word& g, Int) {
          acc.add(std::exp(-est.s * static_cast<double>(distance(est.x, g))));
        },
        cap);
  }
  return acc.value() / est.normalizer;
}

// Masses of the shadows at the given targets under the estimator's atoms.
// Membership follows shadow_contains semantics with the shadow based at o;
// trees use the closed form for the distance to the canonical geodesic.
inline std::vector<double> shadow_masses(const Space& sp, const MeasureEstimate& est,
                                         const std::vector<Word>& targets, Int r = 0,
                                         bool partial = false, const std::vector<Word>& F = {},
                                         Int cap = kDefaultEnumCap) {
  if (r < 0) throw SpaceError("shadow radius must be non-negative");
  if (partial && F.empty()) throw SpaceError("partial shadow needs a non-empty barrier set");
  for (const auto& v : targets) validate(sp, v);
  const bool tree = sp.is_tree();
  if (!tree) {
    double ball = 0;
    for (const auto& c : est.ball_counts) ball += big_to_double(c);
    if (ball * static_cast<double>(targets.size()) > 2e6)
      throw CapabilityError("shadow mass scan too large outside the tree fast path");
  }
  std::vector<Word> shifted;  // targets[i]*F[j] flattened, for the barrier test
  if (partial && tree) {
    shifted.reserve(targets.size() * F.size());
    for (const auto& v : targets)
      for (const auto& f : F) shifted.push_back(mul(v, f));
  }
  std::vector<KahanSum> acc(targets.size());
  std::vector<ShadowSpec> specs;
  if (!tree) {
    specs.reserve(targets.size());
    for (const auto& v : targets) specs.push_back(ShadowSpec{identity(), v, r, partial, F, false});
  }
  enumerate_ball(
      sp, est.R,
      [&](const Word& g, Int len) {
        double w = est.x.is_identity()
                       ? std::exp(-est.s * static_cast<double>(len))
                       : std::exp(-est.s * static_cast<double>(distance(est.x, g)));
        for (size_t i = 0; i < targets.size(); ++i) {
          bool in;
          if (tree) {
            in = detail::tree_dist_to_canonical(targets[i], g) <= r;
            if (in && partial) {
              bool barrier = false;
              for (size_t j = 0; j < F.size() && !barrier; ++j)
                barrier = detail::tree_dist_to_canonical(shifted[i * F.size() + j], g) <= r;
              in = barrier;
            }
          } else {
            in = shadow_contains(sp, specs[i], g);
          }
          if (in) acc[i].add(w);
        }
      },
      cap);
  std::vector<double> out(targets.size());
  for (size_t i = 0; i < targets.size(); ++i) out[i] = acc[i].value() / est.normalizer;
  return out;
}

// -------------------------------------------------------------------------
// Divergence-type evidence at a claimed growth rate.

struct HtsReport {
  double omega_hat = 0;
  Int R = 0;
  std::vector<double> normalized;  // c(n) e^{-omega n}
  std::vector<double> partial;     // running sums of the normalized terms
  double norm_min = 0;
  double norm_max = 0;
  bool bounded_two_sided = false;  // normalized terms pinched away from 0 and infinity
  bool degenerate = false;         // omega below the flat threshold
  bool conical_sampled = false;    // ball small enough to walk for the proxy
  double conical_fraction = 0;     // sampled deep atoms meeting a mid-annulus shadow
  size_t conical_samples = 0;
  double convergent_tail_gap = 0;  // final increment of the series at s = omega + 0.2
};

// Evidence that the family diverges at its growth rate: normalized annulus
// weights stay pinched (so partial sums grow linearly), the series at
// omega + 0.2 has vanishing increments, and deep atoms funnel through
// shadows of mid-annulus points (plain shadows when F is empty, barrier
// shadows otherwise).
inline HtsReport hts_evidence(const Space& sp, const Predicate& pred, double omega_hat, Int R,
                              const std::vector<Word>& F = {}, Int r = 0, size_t samples = 200,
                              Int cap = kDefaultEnumCap) {
  if (R < 2) throw SpaceError("R must be >= 2");
  if (r < 0) throw SpaceError("shadow radius must be non-negative");
  if (!(omega_hat >= 0) || !std::isfinite(omega_hat))
    throw SpaceError("growth rate must be finite and >= 0");
  HtsReport out;
  out.omega_hat = omega_hat;
  out.R = R;
  auto counts = sphere_counts_constrained(sp, pred, R);
  out.normalized.resize(counts.size());
  out.partial.resize(counts.size());
  KahanSum acc;
  double mn = std::numeric_limits<double>::infinity();
  double mx = 0;
  for (size_t n = 0; n < counts.size(); ++n) {
    double term = big_to_double(counts[n]) * std::exp(-omega_hat * static_cast<double>(n));
    out.normalized[n] = term;
    acc.add(term);
    out.partial[n] = acc.value();
    mn = std::min(mn, term);
    mx = std::max(mx, term);
  }
  out.norm_min = mn;
  out.norm_max = mx;
  out.bounded_two_sided = mn > 0;
  out.degenerate = omega_hat < kFlatExponentThreshold;
  out.convergent_tail_gap =
      big_to_double(counts[static_cast<size_t>(R)]) * std::exp(-(omega_hat + 0.2) * R);

  double ball_size = 0;
  for (const auto& c : counts) ball_size += big_to_double(c);
  if (ball_size > 2.5e7) return out;  // series evidence only; the proxy walk is too large
  out.conical_sampled = true;

  Int mid = R / 2;
  auto targets = sphere_points(sp, mid, cap);
  std::vector<Word> shifted;
  if (!F.empty()) {
    shifted.reserve(targets.size() * F.size());
    for (const auto& v : targets)
      for (const auto& f : F) shifted.push_back(mul(v, f));
  }
  BigCount deep = counts[static_cast<size_t>(R)];
  Int stride = 1;
  if (samples > 0 && deep > BigCount{samples})
    stride = static_cast<Int>(deep / BigCount{samples});
  const bool tree = sp.is_tree();
  size_t kept = 0;
  size_t hits = 0;
  Int idx = 0;
  enumerate_ball(
      sp, R,
      [&](const Word& g, Int len) {
        if (len != R || !member(sp, pred, g)) return;
        if (idx++ % stride != 0) return;
        ++kept;
        for (size_t i = 0; i < targets.size(); ++i) {
          bool in;
          if (tree) {
            in = detail::tree_dist_to_canonical(targets[i], g) <= r;
            if (in && !F.empty()) {
              bool barrier = false;
              for (size_t j = 0; j < F.size() && !barrier; ++j)
                barrier = detail::tree_dist_to_canonical(shifted[i * F.size() + j], g) <= r;
              in = barrier;
            }
          } else {
            ShadowSpec spec{identity(), targets[i], r, !F.empty(), F, false};
            in = shadow_contains(sp, spec, g);
          }
          if (in) {
            ++hits;
            return;
          }
        }
      },
      cap);
  out.conical_samples = kept;
  out.conical_fraction = kept == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(kept);
  return out;
}

}  // namespace cayley
