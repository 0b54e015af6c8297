#pragma once
// Contraction certification by exhaustive ball scan, and windowed
// neighborhood-intersection measurements.
//
// A certificate at constant C over radius R_v means: every metric ball
// with center in B(o, R_v), disjoint from the axis line and contained in
// B(o, R_v), has shortest-projection diameter <= C.  Only the maximal
// ball per center is tested (projection sets grow with the ball), and
// the worst offender is reported: largest diameter, then smallest
// center, then first in enumeration order.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "axis.hpp"
#include "enumerate.hpp"
#include "threads.hpp"
#include "word.hpp"

namespace cayley {

struct BallCounterexample {
  Word center;
  Int radius = 0;
  Int diameter = 0;
};

struct ContractingCertificate {
  Int C = 0;
  Int R_v = 0;
  bool certified = false;
  Int max_diameter = 0;  // worst projection diameter among tested balls
  unsigned long long balls_tested = 0;
  std::optional<BallCounterexample> worst;  // populated when not certified
};

namespace detail {

struct CertifyHit {
  Int diam = -1;
  Int center_len = 0;
  unsigned long long order = 0;
  Word center;
  Int radius = 0;

  bool beats(const CertifyHit& o) const {
    if (diam != o.diam) return diam > o.diam;
    if (center_len != o.center_len) return center_len < o.center_len;
    return order < o.order;
  }
};

struct CertifyChunk {
  CertifyHit best;
  unsigned long long balls = 0;
};

}  // namespace detail

inline ContractingCertificate certify_contracting(const Space& sp, const Axis& X, Int C,
                                                  Int R_v, unsigned threads = 1,
                                                  Int cap = kDefaultEnumCap) {
  if (C < 0) throw SpaceError("contracting constant must be >= 0");
  if (R_v < 0) throw SpaceError("certification radius must be >= 0");
  if (X.extended())
    throw CapabilityError("certification over coset-extended axes is not supported");

  // Ball template: offsets q with |q| <= rho, shared across centers.
  ProjectionResult origin_proj = project(sp, X, identity());
  if (origin_proj.boundary)
    throw SpaceError("projection window hit its boundary at the basepoint for axis " +
                     axis_key(sp, X) + "; enlarge W");
  Int rho_cap = (R_v + origin_proj.distance) / 2 + 1;
  std::vector<std::pair<Word, Int>> tmpl;
  std::vector<size_t> tmpl_end;  // tmpl[0 .. tmpl_end[r]) covers |q| <= r
  enumerate_ball(sp, std::min(rho_cap, R_v),
                 [&](const Word& q, Int lq) { tmpl.emplace_back(q, lq); }, cap);
  std::stable_sort(tmpl.begin(), tmpl.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  tmpl_end.assign(static_cast<size_t>(std::min(rho_cap, R_v)) + 1, 0);
  for (size_t i = 0; i < tmpl.size(); ++i) tmpl_end[static_cast<size_t>(tmpl[i].second)] = i + 1;
  for (size_t r = 1; r < tmpl_end.size(); ++r)
    tmpl_end[r] = std::max(tmpl_end[r], tmpl_end[r - 1]);

  // Chunks: the short centers, then one prefix subtree per length-2 word.
  std::vector<Word> roots;
  if (R_v >= 2)
    enumerate_ball(sp, 2, [&](const Word& w, Int l) { if (l == 2) roots.push_back(w); }, cap);
  size_t n_chunks = roots.size() + 1;
  std::vector<detail::CertifyChunk> chunks(n_chunks);
  constexpr unsigned long long kChunkStride = 1ull << 40;

  auto run_chunk = [&](size_t ci) {
    detail::CertifyChunk& out = chunks[ci];
    std::unordered_map<Word, std::pair<Int, Int>, WordHash> memo;
    unsigned long long local_idx = 0;
    auto range_of = [&](const Word& p) -> const std::pair<Int, Int>& {
      auto it = memo.find(p);
      if (it != memo.end()) return it->second;
      ProjectionResult r = project(sp, X, p);
      if (r.boundary)
        throw SpaceError("projection window hit its boundary during certification for axis " +
                         axis_key(sp, X) + "; enlarge W");
      return memo.emplace(p, std::make_pair(r.t_lo, r.t_hi)).first->second;
    };
    auto visit_center = [&](const Word& c, Int lc) {
      unsigned long long order = static_cast<unsigned long long>(ci) * kChunkStride + local_idx++;
      ProjectionResult pc = project(sp, X, c);
      if (pc.boundary)
        throw SpaceError("projection window hit its boundary during certification for axis " +
                         axis_key(sp, X) + "; enlarge W");
      Int rho = std::min(pc.distance - 1, R_v - lc);
      if (rho < 0) return;
      Int t_lo = pc.t_lo, t_hi = pc.t_hi;
      if (rho > 0) {
        size_t end = tmpl_end[static_cast<size_t>(std::min<Int>(rho, static_cast<Int>(tmpl_end.size()) - 1))];
        for (size_t i = 1; i < end; ++i) {  // skip the identity offset
          const auto& [lo, hi] = range_of(mul(c, tmpl[i].first));
          t_lo = std::min(t_lo, lo);
          t_hi = std::max(t_hi, hi);
        }
      }
      ++out.balls;
      detail::CertifyHit hit{t_hi - t_lo, lc, order, c, rho};
      if (out.best.diam < 0 || hit.beats(out.best)) out.best = std::move(hit);
    };
    if (ci == 0) {
      enumerate_ball(sp, std::min<Int>(1, R_v), visit_center, cap);
    } else {
      enumerate_subtree(sp, roots[ci - 1], R_v, visit_center, cap);
    }
  };
  parallel_tasks(n_chunks, threads, run_chunk);

  ContractingCertificate cert;
  cert.C = C;
  cert.R_v = R_v;
  detail::CertifyHit best;
  for (const auto& ch : chunks) {
    cert.balls_tested += ch.balls;
    if (ch.best.diam >= 0 && (best.diam < 0 || ch.best.beats(best))) best = ch.best;
  }
  cert.max_diameter = best.diam < 0 ? 0 : best.diam;
  cert.certified = cert.max_diameter <= C;
  if (!cert.certified)
    cert.worst = BallCounterexample{best.center, best.radius, best.diam};
  return cert;
}

// Smallest constant that certifies over radius R_v (the scan does not
// depend on the candidate constant, only the verdict does).
inline Int smallest_contracting_constant(const Space& sp, const Axis& X, Int R_v,
                                         unsigned threads = 1, Int cap = kDefaultEnumCap) {
  return certify_contracting(sp, X, 0, R_v, threads, cap).max_diameter;
}

// Exact diameter of the windowed intersection of r-neighborhoods of two
// distinct axes: window points of each within r of the other's window.
inline Int bounded_intersection(const Space& sp, const Axis& X, const Axis& Y, Int r) {
  if (r < 0) throw SpaceError("neighborhood radius must be >= 0");
  if (axis_key(sp, X) == axis_key(sp, Y))
    throw SpaceError("bounded_intersection needs distinct axes");
  auto gather = [&](const Axis& A, const Axis& B, std::vector<Word>& out) {
    for (const auto& p : A.pts) {
      ProjectionResult pr = project(sp, B, p);
      if (pr.distance <= r) {
        if (pr.boundary)
          throw SpaceError("projection window inconclusive in bounded_intersection; enlarge W");
        out.push_back(p);
      }
    }
  };
  std::vector<Word> common;
  gather(X, Y, common);
  gather(Y, X, common);
  Int diam = 0;
  for (size_t i = 0; i < common.size(); ++i)
    for (size_t j = i + 1; j < common.size(); ++j)
      diam = std::max(diam, distance(common[i], common[j]));
  return diam;
}

// Stretch of a path inside the radius-r neighborhood of an axis window.
struct NeighborhoodOverlap {
  bool nonempty = false;
  size_t first = 0, last = 0;  // vertex indices on the path
  Int diameter = 0;
};

inline NeighborhoodOverlap axis_overlap(const Space& sp, const Axis& X,
                                        const GeodesicPath& path, Int r) {
  NeighborhoodOverlap out;
  for (size_t i = 0; i < path.vertices.size(); ++i) {
    ProjectionResult pr = project(sp, X, path.vertices[i]);
    if (pr.distance > r) continue;
    if (!out.nonempty) {
      out.nonempty = true;
      out.first = i;
    }
    out.last = i;
  }
  if (out.nonempty) out.diameter = static_cast<Int>(out.last - out.first);
  return out;
}

}  // namespace cayley
