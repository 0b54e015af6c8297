// Finite families of axes with a cached table of pairwise windowed
// projections.  A family is the deduplicated set of translates g·Ax(f) for f
// in a finite list and d(o, g·o) <= R_fam; every later construction
// (separation axioms, intervals, the complex, visual spheres) reads the
// cached table instead of re-projecting.

#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "axis.hpp"
#include "enumerate.hpp"
#include "threads.hpp"

namespace cayley {

namespace detail {

// In a tree d(pts[t], y) falls with slope -1 to the unique foot and rises
// with slope +1 after it, so the foot is found by bisecting the gradient.
inline std::pair<Int, Int> tree_foot(const Axis& X, const Word& y) {
  Int lo = 0;
  Int hi = static_cast<Int>(X.pts.size()) - 1;
  auto at = [&](Int t) { return length(mul(X.inv_pts[static_cast<size_t>(t)], y)); };
  while (lo < hi) {
    Int mid = lo + (hi - lo) / 2;
    if (at(mid + 1) < at(mid))
      lo = mid + 1;
    else
      hi = mid;
  }
  return {lo, at(lo)};
}

}  // namespace detail

// Windowed projection of V's line onto U's window.  The window parameter of
// the nearest point is monotone along a geodesic in a tree, so there the two
// endpoint feet bound the whole projection; other spaces scan every vertex.
inline SetProjection project_axis(const Space& sp, const Axis& U, const Axis& V) {
  if (U.extended() || V.extended())
    throw CapabilityError("axis projection is not supported on coset-extended axes");
  if (sp.is_tree()) {
    Int end = static_cast<Int>(U.pts.size()) - 1;
    Int ta = detail::tree_foot(U, V.pts.front()).first;
    Int tb = detail::tree_foot(U, V.pts.back()).first;
    SetProjection s;
    s.t_lo = std::min(ta, tb);
    s.t_hi = std::max(ta, tb);
    s.boundary = s.t_lo == 0 || s.t_hi == end;
    return s;
  }
  return project_set(sp, U, V.pts.begin(), V.pts.end());
}

struct AxisFamily {
  Int W = 0;
  std::vector<Axis> axes;        // sorted by id
  std::vector<std::string> ids;  // axis keys, index-aligned

  int size() const { return static_cast<int>(axes.size()); }
  const std::string& id(int u) const { return ids[static_cast<size_t>(u)]; }

  int index_of(const std::string& key) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), key);
    if (it == ids.end() || *it != key) return -1;
    return static_cast<int>(it - ids.begin());
  }

  // Window range on axes[u] of the projection of axes[v]'s line.
  Int proj_lo(int u, int v) const { return plo_[cell(u, v)]; }
  Int proj_hi(int u, int v) const { return phi_[cell(u, v)]; }
  Int proj_diameter(int u, int v) const { return phi_[cell(u, v)] - plo_[cell(u, v)]; }

  // d_u(v, w): diameter on axes[u] of the union of the two projections.
  Int pair_distance(int u, int v, int w) const {
    size_t a = cell(u, v), b = cell(u, w);
    return std::max(phi_[a], phi_[b]) - std::min(plo_[a], plo_[b]);
  }

  std::vector<Int> plo_, phi_;

 private:
  size_t cell(int u, int v) const {
    return static_cast<size_t>(u) * axes.size() + static_cast<size_t>(v);
  }
};

namespace detail {

inline AxisFamily seal_family(const Space& sp, std::map<std::string, Axis> dedup,
                              Int W, unsigned threads) {
  AxisFamily fam;
  fam.W = W;
  for (auto& [key, ax] : dedup) {
    fam.ids.push_back(key);
    fam.axes.push_back(std::move(ax));
  }
  size_t n = fam.axes.size();
  fam.plo_.assign(n * n, 0);
  fam.phi_.assign(n * n, -1);
  std::vector<std::string> bad(n);
  parallel_tasks(n, threads, [&](size_t u) {
    for (size_t v = 0; v < n; ++v) {
      if (u == v) continue;
      SetProjection pr = project_axis(sp, fam.axes[u], fam.axes[v]);
      if (pr.boundary) {
        bad[u] = fam.ids[v];
        return;
      }
      fam.plo_[u * n + v] = pr.t_lo;
      fam.phi_[u * n + v] = pr.t_hi;
    }
  });
  for (size_t u = 0; u < n; ++u)
    if (!bad[u].empty())
      throw SpaceError("family projection inconclusive between " + fam.ids[u] +
                       " and " + bad[u] + "; enlarge W");
  return fam;
}

}  // namespace detail

inline AxisFamily make_family(const Space& sp, const std::vector<Word>& F, Int R_fam,
                              Int W = -1, unsigned threads = 1, int max_axes = 5000) {
  if (F.empty()) throw SpaceError("family needs at least one defining element");
  Int max_rl = 0;
  for (const Word& f : F) {
    if (f.is_identity()) throw SpaceError("family elements must be non-trivial");
    max_rl = std::max(max_rl, length(root_of(sp, f).core));
  }
  if (R_fam < 0) throw SpaceError("R_fam must be >= 0");
  if (W < 0) W = 2 * R_fam + 4 * max_rl + 8;

  std::map<std::string, Axis> dedup;
  for (const Word& g : ball_points(sp, R_fam)) {
    for (const Word& f : F) {
      Axis ax = make_axis(sp, g, f, W);
      std::string key = axis_key(sp, ax);
      if (dedup.emplace(std::move(key), std::move(ax)).second &&
          static_cast<int>(dedup.size()) > max_axes)
        throw CapabilityError("family exceeds " + std::to_string(max_axes) +
                              " axes; shrink R_fam or raise max_axes");
    }
  }
  return detail::seal_family(sp, std::move(dedup), W, threads);
}

inline AxisFamily make_family(const Space& sp, std::vector<Axis> axes,
                              unsigned threads = 1) {
  if (axes.empty()) throw SpaceError("family needs at least one axis");
  Int W = 0;
  std::map<std::string, Axis> dedup;
  for (Axis& ax : axes) {
    W = std::max(W, ax.W);
    std::string key = axis_key(sp, ax);
    dedup.emplace(std::move(key), std::move(ax));
  }
  return detail::seal_family(sp, std::move(dedup), W, threads);
}

}  // namespace cayley
