#pragma once
// Geodesic rays from the basepoint, stored as unit-step sequences.  A step
// sequence is geodesic exactly when every step grows the word length by one,
// which the syllable normal form makes a local test on the last syllable, so
// long rays are validated and generated without materializing any vertex.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "geodesic.hpp"
#include "word.hpp"

namespace cayley {

struct Ray {
  std::vector<Step> steps;

  size_t size() const { return steps.size(); }
};

namespace detail {

// Tracks the last syllable of a growing word; a step is length-increasing
// iff it does not push its coordinate toward zero.
struct SyllableCursor {
  int factor = -1;
  std::vector<Int> v;

  bool try_step(const Space& sp, const Step& st) {
    int f = sp.factor_of_gen(st.gen);
    int c = sp.coord_of_gen(st.gen);
    if (f != factor) {
      factor = f;
      v.assign(static_cast<size_t>(sp.ranks[static_cast<size_t>(f)]), 0);
    }
    Int& x = v[static_cast<size_t>(c)];
    if ((st.sign > 0 && x < 0) || (st.sign < 0 && x > 0)) return false;
    x += st.sign;
    return true;
  }
};

}  // namespace detail

inline Ray ray_from_steps(const Space& sp, std::vector<Step> steps) {
  detail::SyllableCursor cur;
  for (size_t t = 0; t < steps.size(); ++t) {
    const Step& st = steps[t];
    if (st.gen < 0 || st.gen >= sp.num_generators() || (st.sign != 1 && st.sign != -1))
      throw SpaceError("ray step " + std::to_string(t) + " is not a generator step");
    if (!cur.try_step(sp, st))
      throw SpaceError("ray step " + std::to_string(t) + " does not extend a geodesic");
  }
  return Ray{std::move(steps)};
}

// The canonical geodesic from the basepoint to w, as a ray prefix.
inline Ray ray_to(const Space& sp, const Word& w) {
  return ray_from_steps(sp, canonical_steps(sp, w));
}

// Steps of u repeated cyclically out to n steps; rejects u whose powers do
// not stay geodesic.
inline Ray periodic_ray(const Space& sp, const Word& u, size_t n) {
  if (u.is_identity()) throw SpaceError("periodic ray needs a non-trivial period");
  auto unit = canonical_steps(sp, u);
  std::vector<Step> steps;
  steps.reserve(n);
  for (size_t t = 0; t < n; ++t) steps.push_back(unit[t % unit.size()]);
  return ray_from_steps(sp, std::move(steps));
}

// Uniform over the length-increasing steps at each position.
inline Ray random_geodesic_ray(const Space& sp, size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  detail::SyllableCursor cur;
  std::vector<Step> steps;
  steps.reserve(n);
  std::vector<Step> valid;
  for (size_t t = 0; t < n; ++t) {
    valid.clear();
    for (int g = 0; g < sp.num_generators(); ++g)
      for (int s : {1, -1}) {
        detail::SyllableCursor probe = cur;
        if (probe.try_step(sp, Step{g, s})) valid.push_back(Step{g, s});
      }
    Step pick = valid[static_cast<size_t>(rng() % valid.size())];
    cur.try_step(sp, pick);
    steps.push_back(pick);
  }
  return Ray{std::move(steps)};
}

inline Word ray_vertex(const Space& sp, const Ray& ray, size_t i) {
  if (i > ray.size()) throw SpaceError("ray vertex index out of range");
  Word w;
  for (size_t t = 0; t < i; ++t) {
    const Step& st = ray.steps[t];
    int f = sp.factor_of_gen(st.gen);
    std::vector<Int> v(static_cast<size_t>(sp.ranks[static_cast<size_t>(f)]), 0);
    v[static_cast<size_t>(sp.coord_of_gen(st.gen))] = st.sign;
    append_syllable(w, f, v);
  }
  return w;
}

// Materialized vertex path of a prefix; quadratic, for short rays only.
inline GeodesicPath ray_path(const Space& sp, const Ray& ray, size_t n,
                             size_t cap = 10000) {
  if (n > ray.size()) throw SpaceError("ray prefix longer than the ray");
  if (n > cap) throw CapabilityError("ray prefix too long to materialize");
  GeodesicPath p;
  p.vertices.reserve(n + 1);
  Word w;
  p.vertices.push_back(w);
  for (size_t t = 0; t < n; ++t) {
    const Step& st = ray.steps[t];
    int f = sp.factor_of_gen(st.gen);
    std::vector<Int> v(static_cast<size_t>(sp.ranks[static_cast<size_t>(f)]), 0);
    v[static_cast<size_t>(sp.coord_of_gen(st.gen))] = st.sign;
    append_syllable(w, f, v);
    p.vertices.push_back(w);
  }
  return p;
}

}  // namespace cayley
