#pragma once
// Shadows cast from x through a ball around y, with two membership modes:
// the canonical-geodesic test, and an exhaustive mode that quantifies over
// every geodesic through an exact distance-chain identity.  Partial shadows
// additionally require y to carry a barrier from the given set F.

#include <string>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "geodesic.hpp"
#include "threads.hpp"
#include "word.hpp"

namespace cayley {

struct ShadowSpec {
  Word x;
  Word y;
  Int r = 0;
  bool partial = false;          // require an (r, F)-barrier at y
  std::vector<Word> F;
  bool all_geodesics = false;    // quantify over every geodesic, not just canonical
};

constexpr Int kMaxExhaustiveShadowRadius = 8;

inline void validate_shadow(const ShadowSpec& spec) {
  if (spec.r < 0) throw SpaceError("shadow radius must be non-negative");
  if (spec.partial && spec.F.empty())
    throw SpaceError("partial shadow needs a non-empty barrier set");
  if (spec.all_geodesics && spec.r > kMaxExhaustiveShadowRadius)
    throw CapabilityError("exhaustive shadow mode supports radius <= " +
                          std::to_string(kMaxExhaustiveShadowRadius));
}

inline bool shadow_contains(const Space& sp, const ShadowSpec& spec, const Word& z) {
  validate_shadow(spec);
  if (!spec.all_geodesics) {
    auto gamma = geodesic(sp, spec.x, z);
    if (spec.partial) {
      if (dist_to_path(spec.y, gamma) > spec.r) return false;
      for (const Word& f : spec.F)
        if (dist_to_path(mul(spec.y, f), gamma) <= spec.r) return true;
      return false;
    }
    return dist_to_path(spec.y, gamma) <= spec.r;
  }

  // Some geodesic from x to z meets B(y, r) iff a point p there satisfies
  // d(x, p) + d(p, z) = d(x, z); the partial form chains through B(yf, r).
  Int dxz = distance(spec.x, z);
  auto ball = ball_points(sp, spec.r);
  if (!spec.partial) {
    for (const Word& u : ball) {
      Word p = mul(spec.y, u);
      if (distance(spec.x, p) + distance(p, z) == dxz) return true;
    }
    return false;
  }
  for (const Word& f : spec.F) {
    Word yf = mul(spec.y, f);
    for (const Word& u1 : ball) {
      Word p1 = mul(spec.y, u1);
      Int head = distance(spec.x, p1);
      if (head > dxz) continue;
      for (const Word& u2 : ball) {
        Word p2 = mul(yf, u2);
        if (head + distance(p1, p2) + distance(p2, z) == dxz) return true;
      }
    }
  }
  return false;
}

inline std::vector<Word> shadow_members(const Space& sp, const ShadowSpec& spec,
                                        const std::vector<Word>& candidates,
                                        unsigned threads = 1) {
  validate_shadow(spec);
  std::vector<char> in(candidates.size(), 0);
  parallel_tasks(candidates.size(), threads, [&](size_t i) {
    in[i] = shadow_contains(sp, spec, candidates[i]) ? 1 : 0;
  });
  std::vector<Word> out;
  for (size_t i = 0; i < candidates.size(); ++i)
    if (in[i]) out.push_back(candidates[i]);
  return out;
}

struct NSReport {
  bool ok = false;
  Int n = -1;          // least power moving every sample across
  Word worst;          // a sample still escaping at the cap
  std::string detail;
};

// Least n with h^n (samples \ V) inside U and h^-n (samples \ U) inside V.
inline NSReport ns_dynamics(const Space& sp, const Word& h, const ShadowSpec& U,
                            const ShadowSpec& V, const std::vector<Word>& samples,
                            Int n_max) {
  validate_shadow(U);
  validate_shadow(V);
  if (n_max < 0) throw SpaceError("power cap must be non-negative");
  if (samples.empty()) throw SpaceError("no sample points given");

  std::vector<Word> to_u, to_v;
  for (const Word& z : samples) {
    if (!shadow_contains(sp, V, z)) to_u.push_back(z);
    if (!shadow_contains(sp, U, z)) to_v.push_back(z);
  }

  NSReport rep;
  Word hn = identity();
  Word hninv = identity();
  Word hinv = inverse(h);
  for (Int n = 0; n <= n_max; ++n) {
    bool all = true;
    for (const Word& z : to_u)
      if (!shadow_contains(sp, U, mul(hn, z))) { all = false; rep.worst = mul(hn, z); break; }
    if (all)
      for (const Word& z : to_v)
        if (!shadow_contains(sp, V, mul(hninv, z))) { all = false; rep.worst = mul(hninv, z); break; }
    if (all) {
      rep.ok = true;
      rep.n = n;
      rep.detail = "all samples cross by power " + std::to_string(n);
      return rep;
    }
    hn = mul(hn, h);
    hninv = mul(hninv, hinv);
  }
  rep.detail = "sample " + format_word(sp, rep.worst) + " still outside at power " +
               std::to_string(n_max);
  return rep;
}

}  // namespace cayley
