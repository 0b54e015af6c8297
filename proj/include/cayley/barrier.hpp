#pragma once
// Barriers on geodesics: witnesses h whose orbit points h·o and h·f·o
// both lie within r of a host geodesic, with candidates drawn from the
// r-neighborhood of the geodesic.

#include <algorithm>
#include <string>
#include <unordered_set>
#include <vector>

#include "enumerate.hpp"
#include "geodesic.hpp"
#include "word.hpp"

namespace cayley {

struct BarrierWitness {
  Word h;
  Word f;
  Int r = 0;
  Int dist_h = 0;       // realized d(h·o, gamma)
  Int dist_hf = 0;      // realized d(h·f·o, gamma)
  size_t pos_start = 0; // nearest vertex index of h·o on gamma
  size_t pos_end = 0;   // nearest vertex index of h·f·o on gamma
};

inline std::vector<BarrierWitness> find_barriers(const Space& sp, const GeodesicPath& gamma,
                                                 const std::vector<Word>& F, Int r,
                                                 Int cap = kDefaultEnumCap) {
  if (r < 0) throw SpaceError("barrier radius must be >= 0");
  if (F.empty()) throw SpaceError("barrier element set must be non-empty");
  if (gamma.vertices.empty()) throw SpaceError("empty host geodesic");
  for (const auto& f : F) {
    validate(sp, f);
    if (f.is_identity()) throw SpaceError("identity cannot be a barrier element");
  }

  std::unordered_set<Word, WordHash> seen;
  std::vector<Word> cands;
  std::vector<Word> offsets = ball_points(sp, r, cap);
  for (const auto& v : gamma.vertices)
    for (const auto& q : offsets) {
      Word h = mul(v, q);
      if (seen.insert(h).second) cands.push_back(h);
    }
  std::sort(cands.begin(), cands.end(),
            [&](const Word& a, const Word& b) { return word_less(sp, a, b); });

  std::vector<BarrierWitness> out;
  for (const auto& h : cands) {
    Int d1 = dist_to_path(h, gamma);
    if (d1 > r) continue;
    for (const auto& f : F) {
      Word hf = mul(h, f);
      Int d2 = dist_to_path(hf, gamma);
      if (d2 > r) continue;
      BarrierWitness w;
      w.h = h;
      w.f = f;
      w.r = r;
      w.dist_h = d1;
      w.dist_hf = d2;
      w.pos_start = nearest_vertex(h, gamma);
      w.pos_end = nearest_vertex(hf, gamma);
      out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end(), [&](const BarrierWitness& a, const BarrierWitness& b) {
    if (a.pos_start != b.pos_start) return a.pos_start < b.pos_start;
    if (a.pos_end != b.pos_end) return a.pos_end < b.pos_end;
    if (a.h != b.h) return word_less(sp, a.h, b.h);
    return word_less(sp, a.f, b.f);
  });
  return out;
}

struct ExtensionResult {
  Word f;                 // the element of F that worked
  BarrierWitness witness; // verified barrier at h = g
  Word probe_target;      // endpoint of the probe geodesic
  std::string diagnostics;
};

// Pick f in F so that the geodesic from o to g·f^(probe_exponent+1)·o
// contains g as an (r, f)-barrier.
inline ExtensionResult extend(const Space& sp, const Word& g, const std::vector<Word>& F,
                              Int r, Int probe_exponent = 3) {
  if (F.size() != 3) throw SpaceError("extension expects exactly three candidate elements");
  if (r < 0) throw SpaceError("barrier radius must be >= 0");
  for (size_t i = 0; i < F.size(); ++i) {
    validate(sp, F[i]);
    if (F[i].is_identity()) throw SpaceError("identity cannot be an extension candidate");
    for (size_t j = i + 1; j < F.size(); ++j)
      if (F[i] == F[j]) throw SpaceError("extension candidates must be pairwise distinct");
  }
  std::string diag;
  for (const auto& f : F) {
    Word target = mul(g, power(f, probe_exponent + 1));
    GeodesicPath gamma = geodesic(sp, identity(), target);
    Int d1 = dist_to_path(g, gamma);
    Word gf = mul(g, f);
    Int d2 = dist_to_path(gf, gamma);
    if (d1 <= r && d2 <= r) {
      ExtensionResult out;
      out.f = f;
      out.witness.h = g;
      out.witness.f = f;
      out.witness.r = r;
      out.witness.dist_h = d1;
      out.witness.dist_hf = d2;
      out.witness.pos_start = nearest_vertex(g, gamma);
      out.witness.pos_end = nearest_vertex(gf, gamma);
      out.probe_target = std::move(target);
      out.diagnostics = std::move(diag);
      return out;
    }
    diag += format_word(sp, f) + ": d(g,geo)=" + std::to_string(d1) +
            " d(gf,geo)=" + std::to_string(d2) + "; ";
  }
  throw SpaceError("no candidate yields a barrier at r=" + std::to_string(r) + " [" + diag + "]");
}

}  // namespace cayley
