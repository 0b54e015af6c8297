// Graph-metric spheres of an axis family and the weighted series over their
// window points.
//
// S_n collects the axes at graph distance n from a base axis; T_n is the
// union of their window vertices as a set of orbit points.  The series sums
// e^{-s d(o, go)} over T_n with compensated accumulation, and reports the
// consecutive ratios and the worst submultiplicativity defect
// S_{n+m} / (S_n S_m).

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "family.hpp"
#include "projection_complex.hpp"
#include "summation.hpp"

namespace cayley {

struct VisualSphere {
  Int n = 0;
  std::vector<int> vertices;  // family indices at graph distance n
  std::vector<Word> points;   // union of their windows, sorted, deduplicated
};

inline std::vector<VisualSphere> visual_spheres(const Space& sp, const AxisFamily& fam,
                                                const PCGraph& g, int base, Int n_max) {
  if (base < 0 || base >= g.n) throw SpaceError("sphere base must be a family member");
  auto dist = g.distances_from(base);
  std::vector<VisualSphere> out;
  for (Int n = 0; n <= n_max; ++n) {
    VisualSphere sph;
    sph.n = n;
    for (int v = 0; v < g.n; ++v)
      if (dist[static_cast<size_t>(v)] == n) sph.vertices.push_back(v);
    if (sph.vertices.empty()) break;
    for (int v : sph.vertices) {
      const Axis& X = fam.axes[static_cast<size_t>(v)];
      sph.points.insert(sph.points.end(), X.pts.begin(), X.pts.end());
    }
    std::sort(sph.points.begin(), sph.points.end(),
              [&](const Word& a, const Word& b) { return word_less(sp, a, b); });
    sph.points.erase(std::unique(sph.points.begin(), sph.points.end()), sph.points.end());
    out.push_back(std::move(sph));
  }
  return out;
}

// How many of the spheres contain each orbit point of the union.
struct SphereCover {
  Int min_multiplicity = 0;
  Int max_multiplicity = 0;
  size_t points = 0;
};

inline SphereCover cover_multiplicity(const Space& sp, const std::vector<VisualSphere>& spheres) {
  std::vector<Word> all;
  for (const auto& sph : spheres)
    all.insert(all.end(), sph.points.begin(), sph.points.end());
  if (all.empty()) return {};
  std::sort(all.begin(), all.end(),
            [&](const Word& a, const Word& b) { return word_less(sp, a, b); });
  SphereCover cov;
  cov.min_multiplicity = static_cast<Int>(spheres.size()) + 1;
  size_t i = 0;
  while (i < all.size()) {
    size_t j = i;
    while (j < all.size() && all[j] == all[i]) ++j;
    Int mult = static_cast<Int>(j - i);
    cov.min_multiplicity = std::min(cov.min_multiplicity, mult);
    cov.max_multiplicity = std::max(cov.max_multiplicity, mult);
    ++cov.points;
    i = j;
  }
  return cov;
}

// Greedy L-separated subset in the stored point order; every dropped point is
// within L of a kept one.
inline std::vector<Word> sphere_net(const VisualSphere& sph, Int L) {
  std::vector<Word> net;
  for (const Word& p : sph.points) {
    bool covered = false;
    for (const Word& q : net)
      if (distance(q, p) <= L) {
        covered = true;
        break;
      }
    if (!covered) net.push_back(p);
  }
  return net;
}

// Points of the sphere union whose distance from the origin is within Delta
// of L.
inline std::vector<Word> sphere_slab(const VisualSphere& sph, Int L, Int Delta) {
  std::vector<Word> out;
  for (const Word& p : sph.points) {
    Int d = length(p);
    if (d >= L - Delta && d <= L + Delta) out.push_back(p);
  }
  return out;
}

struct TnSeries {
  double s = 0.0;
  std::vector<Int> n;
  std::vector<double> sums;
  std::vector<double> ratios;  // sums[i+1] / sums[i]
  double max_defect = 0.0;     // worst S_{n+m} / (S_n S_m) over n, m >= 1
  Int defect_n = 0, defect_m = 0;
};

inline TnSeries tn_series(const std::vector<VisualSphere>& spheres, double s) {
  TnSeries out;
  out.s = s;
  for (const auto& sph : spheres) {
    KahanSum acc;
    for (const Word& p : sph.points) acc.add(std::exp(-s * static_cast<double>(length(p))));
    out.n.push_back(sph.n);
    out.sums.push_back(acc.value());
  }
  for (size_t i = 0; i + 1 < out.sums.size(); ++i)
    out.ratios.push_back(out.sums[i + 1] / out.sums[i]);
  for (size_t a = 1; a < out.sums.size(); ++a)
    for (size_t b = a; a + b < out.sums.size(); ++b) {
      double defect = out.sums[a + b] / (out.sums[a] * out.sums[b]);
      if (defect > out.max_defect) {
        out.max_defect = defect;
        out.defect_n = out.n[a];
        out.defect_m = out.n[b];
      }
    }
  return out;
}

}  // namespace cayley
