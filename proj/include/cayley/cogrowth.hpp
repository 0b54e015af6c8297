#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>
#include <vector>

#include "barrier.hpp"
#include "count.hpp"
#include "density.hpp"
#include "enumerate.hpp"
#include "word.hpp"

namespace cayley {

// Greedy pass in enumeration order; every rejected point sits within R_sep of
// a chosen one, so the result is maximal.
inline std::vector<Word> separated_subset(const Space& sp, const std::vector<Word>& pts,
                                          Int R_sep) {
  if (R_sep < 1) throw SpaceError("separation radius must be >= 1");
  std::vector<Word> chosen;
  for (const auto& p : pts) {
    validate(sp, p);
    bool ok = true;
    for (const auto& q : chosen) {
      if (distance(p, q) < R_sep) {
        ok = false;
        break;
      }
    }
    if (ok) chosen.push_back(p);
  }
  return chosen;
}

struct CogrowthAudit {
  Int n = 0;
  Int r = 0;
  Int R_sep = 0;
  Int norm_F = 0;            // max |f| over the candidate set
  size_t size = 0;           // separated set size
  size_t extended = 0;       // rows where a candidate produced a barrier
  size_t in_subgroup = 0;    // images satisfying the subgroup predicate
  bool candidates_inside = false;  // every candidate satisfies the predicate
  bool injective = false;    // images pairwise distinct
  Int dist_lo = 0;           // admissible image-length window
  Int dist_hi = 0;
  Int dist_min = 0;          // observed
  Int dist_max = 0;
  bool distances_ok = false;
  std::vector<std::string> flagged;  // rows without an extension or out of window
  std::string closure;
};

struct CogrowthReport {
  ExponentReport group;
  ExponentReport subgroup;
  double half_gap = 0;  // subgroup rate minus half the ambient rate
  bool verdict = false;
  CogrowthAudit audit;
};

// Compare the subgroup's growth rate against half the ambient rate, then audit
// the doubling map behind the comparison: on a maximal R_sep-separated subset
// of the sphere S(o, n_audit), send g to g*f*g^{-1} with f chosen so that g is
// a barrier on the probe geodesic.  The images should be pairwise distinct,
// stay in the subgroup when the candidates do, and have lengths within
// norm_F + 4r of 2*n_audit.
inline CogrowthReport cogrowth_check(const Space& sp, const Predicate& sub, Int n_max,
                                     const std::vector<Word>& F, Int r, Int n_audit,
                                     Int R_sep = -1, Int delta = 0,
                                     Int cap = kDefaultEnumCap) {
  if (n_max < 2) throw SpaceError("n_max must be >= 2");
  if (n_audit < 1) throw SpaceError("audit radius must be >= 1");
  if (r < 0) throw SpaceError("barrier radius must be >= 0");
  Int norm_F = 0;
  for (const auto& f : F) {
    validate(sp, f);
    norm_F = std::max(norm_F, length(f));
  }
  if (norm_F == 0) throw SpaceError("candidate set must contain a non-identity element");
  if (R_sep < 0) R_sep = norm_F + 4 * r + 4 * delta;

  CogrowthReport out;
  out.group = critical_exponent(sp, whole_group(), n_max, delta);
  out.subgroup = critical_exponent(sp, sub, n_max, delta);
  out.half_gap = out.subgroup.omega_hat - out.group.omega_hat / 2;
  out.verdict = !out.subgroup.degenerate && !out.group.degenerate && out.half_gap > 0;

  CogrowthAudit& a = out.audit;
  a.n = n_audit;
  a.r = r;
  a.R_sep = R_sep;
  a.norm_F = norm_F;
  a.dist_lo = 2 * n_audit - norm_F - 4 * r;
  a.dist_hi = 2 * n_audit + norm_F + 4 * r;
  a.candidates_inside = true;
  for (const auto& f : F)
    if (!member(sp, sub, f)) a.candidates_inside = false;
  a.closure = a.candidates_inside
                  ? "candidates satisfy the predicate, so conjugated images stay inside"
                  : "candidates leave the predicate; images verified individually";

  auto sphere = sphere_points(sp, n_audit, cap);
  auto B = separated_subset(sp, sphere, R_sep);
  a.size = B.size();

  std::unordered_set<std::string> seen;
  a.dist_min = std::numeric_limits<Int>::max();
  a.dist_max = 0;
  bool windows_ok = true;
  for (const auto& g : B) {
    ExtensionResult ext;
    try {
      ext = extend(sp, g, F, r);
    } catch (const SpaceError&) {
      a.flagged.push_back(format_word(sp, g) + ": no extension");
      continue;
    }
    ++a.extended;
    Word img = mul(g, mul(ext.f, inverse(g)));
    if (member(sp, sub, img)) ++a.in_subgroup;
    Int d = length(img);
    a.dist_min = std::min(a.dist_min, d);
    a.dist_max = std::max(a.dist_max, d);
    if (d < a.dist_lo || d > a.dist_hi) {
      windows_ok = false;
      a.flagged.push_back(format_word(sp, g) + ": image length " + std::to_string(d) +
                          " outside [" + std::to_string(a.dist_lo) + ", " +
                          std::to_string(a.dist_hi) + "]");
    }
    seen.insert(format_word(sp, img));
  }
  if (a.extended == 0) a.dist_min = 0;
  a.injective = seen.size() == a.extended;
  a.distances_ok = windows_ok && a.extended > 0;
  return out;
}

}  // namespace cayley
