#pragma once
// Canonical geodesics.  Inside a lattice syllable the path moves along
// generator axes in fixed coordinate order (all first-generator steps,
// then the next, signs toward the target), which makes every geodesic
// below deterministic and left-translation equivariant.

#include <vector>

#include "word.hpp"

namespace cayley {

struct Step {
  int gen = 0;   // flat generator index
  int sign = 1;  // +1 or -1
};

inline std::vector<Step> canonical_steps(const Space& sp, const Word& w) {
  std::vector<Step> steps;
  steps.reserve(static_cast<size_t>(length(w)));
  for (const auto& s : w.syl) {
    for (int c = 0; c < sp.ranks[static_cast<size_t>(s.factor)]; ++c) {
      Int e = s.v[static_cast<size_t>(c)];
      if (e == 0) continue;
      int sg = e > 0 ? 1 : -1;
      for (Int i = 0; i < (e > 0 ? e : -e); ++i)
        steps.push_back(Step{sp.gen_index(s.factor, c), sg});
    }
  }
  return steps;
}

struct GeodesicPath {
  std::vector<Word> vertices;  // consecutive vertices at distance 1

  Int len() const { return static_cast<Int>(vertices.size()) - 1; }
  const Word& front() const { return vertices.front(); }
  const Word& back() const { return vertices.back(); }
};

inline GeodesicPath geodesic(const Space& sp, const Word& x, const Word& y) {
  GeodesicPath p;
  Word w = mul(inverse(x), y);
  auto steps = canonical_steps(sp, w);
  p.vertices.reserve(steps.size() + 1);
  Word cur = x;
  p.vertices.push_back(cur);
  for (const auto& st : steps) {
    Word g = gen_word(sp, st.gen, st.sign);
    cur = mul(cur, g);
    p.vertices.push_back(cur);
  }
  return p;
}

inline GeodesicPath translate(const Word& g, const GeodesicPath& p) {
  GeodesicPath out;
  out.vertices.reserve(p.vertices.size());
  for (const auto& v : p.vertices) out.vertices.push_back(mul(g, v));
  return out;
}

// Distance from a point to the vertex set of a path.
inline Int dist_to_path(const Word& x, const GeodesicPath& p) {
  Int best = -1;
  for (const auto& v : p.vertices) {
    Int d = distance(x, v);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

// Index of the closest vertex (smallest index on ties).
inline size_t nearest_vertex(const Word& x, const GeodesicPath& p) {
  Int best = -1;
  size_t arg = 0;
  for (size_t i = 0; i < p.vertices.size(); ++i) {
    Int d = distance(x, p.vertices[i]);
    if (best < 0 || d < best) { best = d; arg = i; }
  }
  return arg;
}

}  // namespace cayley
