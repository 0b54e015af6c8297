#pragma once
// Admissible paths: alternating axis-legs and connecting segments with
// the two defining conditions measured exactly — interior axis-legs are
// longer than L, and connecting segments have projection diameter at
// most B on the neighboring axes.  Truncation rebuilds such a path from
// barriers found on a host geodesic.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "axis.hpp"
#include "barrier.hpp"
#include "geodesic.hpp"
#include "word.hpp"

namespace cayley {

struct AdmissibleSegment {
  GeodesicPath path;
  bool is_p = false;  // axis-leg when true, connector otherwise
  int axis = -1;      // index into saturation for axis-legs
};

struct AdmissiblePath {
  std::vector<AdmissibleSegment> segments;
  std::vector<Axis> saturation;
  Int L = 0;
  Int B = 0;

  const Word& front() const { return segments.front().path.front(); }
  const Word& back() const { return segments.back().path.back(); }
};

struct SegmentReport {
  size_t index = 0;
  bool is_p = false;
  Int len = 0;
  bool endpoints_on_axis = true;
  bool ll_required = false;
  bool ll_ok = true;
  Int proj_prev = -1;  // connector projection diameter on the previous axis
  Int proj_next = -1;  // and on the next axis
  bool bp_ok = true;
};

struct AdmissibleReport {
  bool pass = false;
  std::vector<SegmentReport> segments;
  std::vector<std::string> failures;
};

inline void validate_admissible([[maybe_unused]] const Space& sp, const AdmissiblePath& path) {
  if (path.segments.empty()) throw SpaceError("admissible path has no segments");
  for (size_t i = 0; i < path.segments.size(); ++i) {
    const auto& seg = path.segments[i];
    if (seg.path.vertices.empty()) throw SpaceError("segment with no vertices");
    if (seg.is_p &&
        (seg.axis < 0 || seg.axis >= static_cast<int>(path.saturation.size())))
      throw SpaceError("axis-leg without a saturation axis");
    if (i > 0 && !(path.segments[i - 1].path.back() == seg.path.front()))
      throw SpaceError("segments do not concatenate at index " + std::to_string(i));
    if (i > 0 && seg.is_p && path.segments[i - 1].is_p)
      throw SpaceError("two consecutive axis-legs at index " + std::to_string(i));
    if (i > 0 && !seg.is_p && !path.segments[i - 1].is_p)
      throw SpaceError("two consecutive connectors at index " + std::to_string(i));
  }
}

inline AdmissibleReport verify_admissible(const Space& sp, const AdmissiblePath& path) {
  validate_admissible(sp, path);
  AdmissibleReport rep;
  rep.pass = true;
  auto fail = [&](std::string msg) {
    rep.pass = false;
    rep.failures.push_back(std::move(msg));
  };
  for (size_t i = 0; i < path.segments.size(); ++i) {
    const auto& seg = path.segments[i];
    SegmentReport sr;
    sr.index = i;
    sr.is_p = seg.is_p;
    sr.len = seg.path.len();
    if (seg.is_p) {
      const Axis& X = path.saturation[static_cast<size_t>(seg.axis)];
      bool on = on_axis(X, seg.path.front()).has_value() &&
                on_axis(X, seg.path.back()).has_value();
      sr.endpoints_on_axis = on;
      if (!on)
        fail("axis-leg " + std::to_string(i) +
             " has an endpoint off its axis window (enlarge W or fix the leg)");
      sr.ll_required = i != 0 && i + 1 != path.segments.size();
      if (sr.ll_required && sr.len <= path.L) {
        sr.ll_ok = false;
        fail("interior axis-leg " + std::to_string(i) + " has length " +
             std::to_string(sr.len) + " <= L=" + std::to_string(path.L));
      }
    } else {
      auto measure = [&](int axis_index) -> Int {
        const Axis& X = path.saturation[static_cast<size_t>(axis_index)];
        SetProjection pr = project_path(sp, X, seg.path);
        if (pr.boundary)
          throw SpaceError("connector projection inconclusive on axis " + axis_key(sp, X) +
                           "; enlarge W");
        return pr.diameter();
      };
      if (i > 0) sr.proj_prev = measure(path.segments[i - 1].axis);
      if (i + 1 < path.segments.size()) sr.proj_next = measure(path.segments[i + 1].axis);
      if ((sr.proj_prev > path.B) || (sr.proj_next > path.B)) {
        sr.bp_ok = false;
        fail("connector " + std::to_string(i) + " projects with diameter >" +
             " B=" + std::to_string(path.B) + " (prev=" + std::to_string(sr.proj_prev) +
             ", next=" + std::to_string(sr.proj_next) + ")");
      }
    }
    rep.segments.push_back(sr);
  }
  return rep;
}

struct FellowTravelMark {
  size_t segment = 0;    // index of the axis-leg
  size_t z = 0, w = 0;   // vertex indices on the reference geodesic
  Int dz = 0, dw = 0;    // realized distances to the leg endpoints
};

struct FellowTravelReport {
  bool pass = false;
  Int r = 0;
  std::vector<FellowTravelMark> marks;
  std::string first_violation;
};

// Compare the path against the canonical geodesic between its endpoints:
// each axis-leg endpoint must be r-close to the geodesic, and the marked
// vertices must appear in order.
inline FellowTravelReport fellow_travel_check(const Space& sp, const AdmissiblePath& path,
                                              Int r) {
  validate_admissible(sp, path);
  FellowTravelReport rep;
  rep.r = r;
  rep.pass = true;
  GeodesicPath alpha = geodesic(sp, path.front(), path.back());
  size_t prev = 0;
  for (size_t i = 0; i < path.segments.size() && rep.pass; ++i) {
    const auto& seg = path.segments[i];
    if (!seg.is_p) continue;
    FellowTravelMark m;
    m.segment = i;
    m.z = nearest_vertex(seg.path.front(), alpha);
    m.w = nearest_vertex(seg.path.back(), alpha);
    m.dz = distance(seg.path.front(), alpha.vertices[m.z]);
    m.dw = distance(seg.path.back(), alpha.vertices[m.w]);
    if (m.dz > r || m.dw > r) {
      rep.pass = false;
      rep.first_violation = "axis-leg " + std::to_string(i) + " endpoint " +
                            std::to_string(std::max(m.dz, m.dw)) + " away from the geodesic";
    } else if (m.z < prev || m.w < m.z) {
      rep.pass = false;
      rep.first_violation = "axis-leg " + std::to_string(i) +
                            " marks out of order on the geodesic";
    }
    prev = m.w;
    rep.marks.push_back(m);
  }
  return rep;
}

// Rebuild an admissible path with the same endpoints as gamma from the
// barriers found on it.  Witnesses sharing an axis are merged; distinct
// axes with interleaved spans are rejected.
inline AdmissiblePath truncate(const Space& sp, const GeodesicPath& gamma,
                               const std::vector<BarrierWitness>& barriers,
                               Int axis_window = -1) {
  AdmissiblePath out;
  if (gamma.vertices.empty()) throw SpaceError("empty host geodesic");
  if (barriers.empty()) {
    AdmissibleSegment only;
    only.path = gamma;
    only.is_p = false;
    out.segments.push_back(std::move(only));
    return out;
  }
  for (const auto& w : barriers)
    if (length(w.f) <= 3 * w.r)
      throw SpaceError("barrier element " + format_word(sp, w.f) +
                       " is too short for its radius (need len > 3r)");
  if (axis_window < 0) axis_window = 4 * (gamma.len() + barriers.front().r) + 4;

  struct Group {
    Axis axis;
    size_t lo = 0, hi = 0;  // span of vertex positions on gamma
    Word entry, exit;
  };
  std::map<std::string, Group> groups;
  for (const auto& w : barriers) {
    Axis ax = make_axis(sp, w.h, w.f, axis_window);
    std::string key = axis_key(sp, ax);
    Word hf = mul(w.h, w.f);
    size_t lo = std::min(w.pos_start, w.pos_end);
    size_t hi = std::max(w.pos_start, w.pos_end);
    const Word& in = w.pos_start <= w.pos_end ? w.h : hf;
    const Word& fin = w.pos_start <= w.pos_end ? hf : w.h;
    auto it = groups.find(key);
    if (it == groups.end()) {
      groups.emplace(key, Group{std::move(ax), lo, hi, in, fin});
    } else {
      Group& g = it->second;
      if (lo < g.lo) { g.lo = lo; g.entry = in; }
      if (hi > g.hi) { g.hi = hi; g.exit = fin; }
    }
  }
  std::vector<Group> ordered;
  ordered.reserve(groups.size());
  for (auto& [key, g] : groups) ordered.push_back(std::move(g));
  std::sort(ordered.begin(), ordered.end(),
            [](const Group& a, const Group& b) { return a.lo < b.lo; });
  for (size_t i = 1; i < ordered.size(); ++i)
    if (ordered[i].lo <= ordered[i - 1].hi)
      throw SpaceError("barriers on distinct axes interleave on the host geodesic "
                       "(spans [" + std::to_string(ordered[i - 1].lo) + "," +
                       std::to_string(ordered[i - 1].hi) + "] and [" +
                       std::to_string(ordered[i].lo) + "," + std::to_string(ordered[i].hi) +
                       "]); refusing to merge");

  Word cursor = gamma.front();
  for (auto& g : ordered) {
    if (!(cursor == g.entry)) {
      AdmissibleSegment q;
      q.path = geodesic(sp, cursor, g.entry);
      q.is_p = false;
      out.segments.push_back(std::move(q));
    }
    AdmissibleSegment p;
    p.path = geodesic(sp, g.entry, g.exit);
    p.is_p = true;
    p.axis = static_cast<int>(out.saturation.size());
    cursor = g.exit;
    out.segments.push_back(std::move(p));
    out.saturation.push_back(std::move(g.axis));
  }
  if (!(cursor == gamma.back())) {
    AdmissibleSegment q;
    q.path = geodesic(sp, cursor, gamma.back());
    q.is_p = false;
    out.segments.push_back(std::move(q));
  }

  // Constants measured from the construction itself.
  Int min_interior = -1, min_any = -1;
  for (size_t i = 0; i < out.segments.size(); ++i) {
    const auto& seg = out.segments[i];
    if (!seg.is_p) continue;
    Int len = seg.path.len();
    if (min_any < 0 || len < min_any) min_any = len;
    if (i != 0 && i + 1 != out.segments.size() && (min_interior < 0 || len < min_interior))
      min_interior = len;
  }
  Int basis = min_interior >= 0 ? min_interior : min_any;
  out.L = basis > 0 ? basis - 1 : 0;
  out.B = 0;
  AdmissibleReport rep = verify_admissible(sp, out);
  for (const auto& sr : rep.segments) {
    if (sr.is_p) continue;
    out.B = std::max(out.B, std::max(sr.proj_prev, sr.proj_next));
  }
  rep = verify_admissible(sp, out);
  if (!rep.pass) {
    std::ostringstream os;
    os << "truncation produced a non-admissible path:";
    for (const auto& f : rep.failures) os << " " << f << ";";
    throw SpaceError(os.str());
  }
  return out;
}

}  // namespace cayley
