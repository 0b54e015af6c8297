#pragma once
// Barrier statistics along long rays, and conical-limit evidence from the
// projection spread of axis translates met along a ray prefix.
//
// The statistics scan anchors every near-ray candidate h = v_i * q at its
// nearest ray vertex (ties to the smaller index), so each candidate within
// distance r of the prefix is examined exactly once; the relative words
// needed per position live in a window of width O(r + |f|), which keeps the
// whole scan linear in the ray length.  Trees get a letter-arithmetic
// distance kernel, other spaces a word-product kernel.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "axis.hpp"
#include "barrier.hpp"
#include "enumerate.hpp"
#include "geodesic.hpp"
#include "rays.hpp"
#include "word.hpp"

namespace cayley {

struct MyrbergStats {
  Int r = 0;
  std::vector<size_t> depths;                 // scanned prefix lengths
  std::vector<std::vector<long long>> counts; // counts[f][depth]: distinct barriers h
};

namespace detail {

inline std::vector<Step> reduce_letters(std::vector<Step> a, const std::vector<Step>& b) {
  for (const Step& st : b) {
    if (!a.empty() && a.back().gen == st.gen && a.back().sign == -st.sign)
      a.pop_back();
    else
      a.push_back(st);
  }
  return a;
}

// Distinct barrier counts per f over the prefix of the first `depth` steps:
// h counts for f when d(h, gamma) <= r and d(h f, gamma) <= r.
inline std::vector<long long> barrier_counts_at_depth(const Space& sp,
                                                      const std::vector<Step>& steps,
                                                      size_t depth,
                                                      const std::vector<Word>& offsets,
                                                      const std::vector<std::vector<Word>>& qf,
                                                      Int r) {
  const bool tree = sp.is_tree();
  const size_t nq = offsets.size();
  const size_t nf = qf.empty() ? 0 : qf[0].size();
  std::vector<long long> counts(nf, 0);

  std::vector<Int> qlen(nq);
  for (size_t qi = 0; qi < nq; ++qi) qlen[qi] = length(offsets[qi]);
  std::vector<std::vector<Int>> wlen(nq, std::vector<Int>(nf));
  Int max_w = 0;
  for (size_t qi = 0; qi < nq; ++qi)
    for (size_t fi = 0; fi < nf; ++fi) {
      wlen[qi][fi] = length(qf[qi][fi]);
      max_w = std::max(max_w, wlen[qi][fi]);
    }
  const Int A = 2 * r;
  const Int M = std::max(A, max_w + r);

  // letter form of the offsets and their f-products, for the tree kernel
  std::vector<std::vector<Step>> qlet(nq);
  std::vector<std::vector<std::vector<Step>>> wlet(nq);
  if (tree) {
    for (size_t qi = 0; qi < nq; ++qi) {
      qlet[qi] = canonical_steps(sp, offsets[qi]);
      wlet[qi].resize(nf);
      for (size_t fi = 0; fi < nf; ++fi)
        wlet[qi][fi] = canonical_steps(sp, qf[qi][fi]);
    }
  }

  // d(v_{i-m}, v_i * L) and d(v_{i+m}, v_i * L) by junction cancellation
  auto d_minus = [&](size_t i, Int m, const std::vector<Step>& L) -> Int {
    Int c = 0;
    Int cmax = std::min<Int>(m, static_cast<Int>(L.size()));
    while (c < cmax) {
      const Step& s = steps[i - 1 - static_cast<size_t>(c)];
      if (L[static_cast<size_t>(c)].gen == s.gen && L[static_cast<size_t>(c)].sign == -s.sign)
        ++c;
      else
        break;
    }
    return m + static_cast<Int>(L.size()) - 2 * c;
  };
  auto d_plus = [&](size_t i, Int m, const std::vector<Step>& L) -> Int {
    Int c = 0;
    Int cmax = std::min<Int>(m, static_cast<Int>(L.size()));
    while (c < cmax) {
      const Step& s = steps[i + static_cast<size_t>(c)];
      if (L[static_cast<size_t>(c)].gen == s.gen && L[static_cast<size_t>(c)].sign == s.sign)
        ++c;
      else
        break;
    }
    return m + static_cast<Int>(L.size()) - 2 * c;
  };

  std::vector<Word> rel_minus, rel_plus;  // v_{i-m}^-1 v_i and v_{i+m}^-1 v_i
  for (size_t i = 0; i <= depth; ++i) {
    Int back = std::min<Int>(static_cast<Int>(i), M);
    Int fwd = std::min<Int>(static_cast<Int>(depth - i), M);
    if (!tree) {
      rel_minus.assign(1, identity());
      rel_plus.assign(1, identity());
      for (Int m = 1; m <= back; ++m) {
        const Step& st = steps[i - static_cast<size_t>(m)];
        rel_minus.push_back(mul(gen_word(sp, st.gen, st.sign), rel_minus.back()));
      }
      for (Int m = 1; m <= fwd; ++m) {
        const Step& st = steps[i + static_cast<size_t>(m) - 1];
        rel_plus.push_back(mul(gen_word(sp, st.gen, -st.sign), rel_plus.back()));
      }
    }

    for (size_t qi = 0; qi < nq; ++qi) {
      // h = v_i * q is processed only where i is its nearest vertex
      bool anchored = true;
      for (Int m = 1; m <= std::min(back, A); ++m) {
        Int d = tree ? d_minus(i, m, qlet[qi])
                     : length(mul(rel_minus[static_cast<size_t>(m)], offsets[qi]));
        if (d <= qlen[qi]) { anchored = false; break; }
      }
      if (anchored)
        for (Int m = 1; m <= std::min(fwd, A); ++m) {
          Int d = tree ? d_plus(i, m, qlet[qi])
                       : length(mul(rel_plus[static_cast<size_t>(m)], offsets[qi]));
          if (d < qlen[qi]) { anchored = false; break; }
        }
      if (!anchored) continue;

      for (size_t fi = 0; fi < nf; ++fi) {
        Int wl = wlen[qi][fi];
        bool hit = wl <= r;
        Int lo = std::max<Int>(1, wl - r);
        Int hi = wl + r;
        for (Int m = lo; !hit && m <= std::min(back, hi); ++m) {
          Int d = tree ? d_minus(i, m, wlet[qi][fi])
                       : length(mul(rel_minus[static_cast<size_t>(m)], qf[qi][fi]));
          hit = d <= r;
        }
        for (Int m = lo; !hit && m <= std::min(fwd, hi); ++m) {
          Int d = tree ? d_plus(i, m, wlet[qi][fi])
                       : length(mul(rel_plus[static_cast<size_t>(m)], qf[qi][fi]));
          hit = d <= r;
        }
        if (hit) ++counts[fi];
      }
    }
  }
  return counts;
}

}  // namespace detail

inline MyrbergStats myrberg_stats(const Space& sp, const Ray& ray,
                                  const std::vector<Word>& F, Int r,
                                  std::vector<size_t> depths = {}) {
  if (r < 0) throw SpaceError("barrier radius must be >= 0");
  if (ray.size() == 0) throw SpaceError("empty ray");
  for (const Word& f : F) {
    validate(sp, f);
    if (f.is_identity()) throw SpaceError("identity cannot be a barrier element");
  }
  size_t n = ray.size();
  if (depths.empty()) depths = {std::max<size_t>(n / 4, 1), std::max<size_t>(n / 2, 1), n};
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  if (depths.back() > n) throw SpaceError("scan depth exceeds ray length");

  MyrbergStats st;
  st.r = r;
  st.depths = depths;
  st.counts.assign(F.size(), std::vector<long long>(depths.size(), 0));
  if (F.empty()) return st;

  auto offsets = ball_points(sp, r);
  std::vector<std::vector<Word>> qf(offsets.size(), std::vector<Word>(F.size()));
  for (size_t qi = 0; qi < offsets.size(); ++qi)
    for (size_t fi = 0; fi < F.size(); ++fi) qf[qi][fi] = mul(offsets[qi], F[fi]);

  for (size_t di = 0; di < depths.size(); ++di) {
    auto counts = detail::barrier_counts_at_depth(sp, ray.steps, depths[di], offsets, qf, r);
    for (size_t fi = 0; fi < F.size(); ++fi) st.counts[fi][di] = counts[fi];
  }
  return st;
}

struct ConicalEntry {
  std::string id;        // axis key
  Axis axis;
  Int spread = 0;        // joint projection spread of the prefix endpoints
  size_t first_met = 0;  // smallest ray index producing this translate
};

struct ConicalWitness {
  Int L = 0;
  std::vector<ConicalEntry> entries;
  int inconclusive = 0;  // translates whose projections hit the window edge
  std::vector<BarrierWitness> barriers;
};

// Axis translates v_i * Ax(f) whose projections separate the prefix endpoints
// by at least L; recurring large spreads along one ray are the conical-limit
// picture at desk scale.
inline ConicalWitness conical_witness(const Space& sp, const GeodesicPath& ray,
                                      const std::vector<Word>& F, Int L, Int r,
                                      Int W = -1) {
  if (ray.vertices.empty()) throw SpaceError("empty ray prefix");
  if (L < 1) throw SpaceError("spread threshold must be positive");
  if (r < 0) throw SpaceError("barrier radius must be >= 0");
  for (size_t i = 0; i < ray.vertices.size(); ++i)
    if (length(ray.vertices[i]) != static_cast<Int>(i))
      throw SpaceError("prefix must be a geodesic starting at the basepoint");
  Int max_root = 0;
  for (const Word& f : F) {
    validate(sp, f);
    if (f.is_identity()) throw SpaceError("identity cannot witness a limit direction");
    max_root = std::max(max_root, length(f));
  }
  if (W < 0) W = static_cast<Int>(ray.len()) + 4 * max_root + 8;

  ConicalWitness out;
  out.L = L;
  std::map<std::string, std::pair<Axis, size_t>> seen;
  for (size_t i = 0; i < ray.vertices.size(); ++i)
    for (const Word& f : F) {
      Axis X = make_axis(sp, ray.vertices[i], f, W);
      std::string key = axis_key(sp, X);
      auto it = seen.find(key);
      if (it == seen.end()) seen.emplace(key, std::make_pair(std::move(X), i));
    }

  for (auto& [key, ax] : seen) {
    auto p1 = project(sp, ax.first, ray.front());
    auto p2 = project(sp, ax.first, ray.back());
    if (p1.boundary || p2.boundary) { ++out.inconclusive; continue; }
    Int spread = std::max(p1.t_hi, p2.t_hi) - std::min(p1.t_lo, p2.t_lo);
    if (spread >= L)
      out.entries.push_back(ConicalEntry{key, ax.first, spread, ax.second});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const ConicalEntry& a, const ConicalEntry& b) {
              if (a.first_met != b.first_met) return a.first_met < b.first_met;
              return a.id < b.id;
            });
  if (!F.empty()) out.barriers = find_barriers(sp, ray, F, r);
  return out;
}

}  // namespace cayley
