#pragma once
// Translation axes and exact shortest projections.
//
// An axis is a window of the translation line of a group element: all
// vertices of the canonical geodesic through {rep · u^n · o} where u is
// the primitive cyclic root of the defining element and rep the shortest
// element of its coset.  Projections are exact argmins over the window;
// attainment on the window boundary is flagged so callers can tell an
// answer from a window that was too small.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "geodesic.hpp"
#include "word.hpp"

namespace cayley {

// f written as conj · core^exponent · conj^-1 with core cyclically
// reduced and primitive.
struct CyclicForm {
  Word conj;
  Word core;
  Int exponent = 1;
};

inline CyclicForm root_of(const Space& sp, const Word& f) {
  validate(sp, f);
  if (f.is_identity()) throw SpaceError("identity element has no axis");
  Word conj;
  Word core = f;
  while (core.syl.size() >= 2 && core.syl.front().factor == core.syl.back().factor) {
    Syllable head = core.syl.front();
    conj.syl.push_back(head);
    Word rest;
    rest.syl.assign(core.syl.begin() + 1, core.syl.end());
    append_syllable(rest, head.factor, head.v);
    core = std::move(rest);
    if (core.is_identity()) throw SpaceError("element is conjugate to the identity");
  }
  CyclicForm out;
  out.conj = std::move(conj);
  if (core.syl.size() == 1) {
    const Syllable& s = core.syl.front();
    Int g = 0;
    for (Int x : s.v) g = std::gcd(g, x < 0 ? -x : x);
    std::vector<Int> root_v(s.v.size());
    for (size_t i = 0; i < s.v.size(); ++i) root_v[i] = s.v[i] / g;
    out.core.syl.push_back(Syllable{s.factor, std::move(root_v)});
    out.exponent = g;
  } else {
    size_t k = core.syl.size();
    size_t period = k;
    for (size_t p = 1; p < k; ++p) {
      if (k % p != 0) continue;
      bool ok = true;
      for (size_t i = p; i < k && ok; ++i)
        if (!(core.syl[i] == core.syl[i % p])) ok = false;
      if (ok) { period = p; break; }
    }
    out.core.syl.assign(core.syl.begin(), core.syl.begin() + static_cast<std::ptrdiff_t>(period));
    out.exponent = static_cast<Int>(k / period);
  }
  return out;
}

struct Axis {
  Word base;   // defining element
  Word rep;    // canonical anchor: shortest element of its root-coset
  Word root;   // primitive cyclically reduced root, sign-canonical
  Int W = 0;   // requested window radius
  Int root_len = 0;
  Int half_extent = 0;             // line covers rep·root^n for |n|·root_len <= half_extent
  std::vector<Word> pts;           // line vertices; index t in [0, 2*half_extent]
  std::vector<Word> inv_pts;       // inverses of pts, for distance scans
  std::vector<Word> extra_pts;     // optional stabilizer-coset extension

  size_t size() const { return pts.size(); }
  size_t center() const { return static_cast<size_t>(half_extent); }
  const Word& pt(size_t t) const { return pts[t]; }
  bool extended() const { return !extra_pts.empty(); }
};

inline std::string axis_key(const Space& sp, const Axis& X) {
  return format_word(sp, X.rep) + "|" + format_word(sp, X.root);
}

inline Axis make_axis(const Space& sp, const Word& g, const Word& f, Int W = -1) {
  CyclicForm cf = root_of(sp, f);
  Word root = cf.core;
  Word root_inv = inverse(root);
  if (word_less(sp, root_inv, root)) root = root_inv;
  Int rl = length(root);
  if (W < 0) W = 10 * rl;
  if (W < rl) throw SpaceError("axis window smaller than one root length");

  Word anchor0 = mul(g, cf.conj);
  Int reach = 2 * length(anchor0) / rl + 2;
  Word best;
  bool have = false;
  for (Int n = -reach; n <= reach; ++n) {
    Word cand = mul(anchor0, power(root, n));
    if (!have || word_less(sp, cand, best)) { best = std::move(cand); have = true; }
  }

  Axis X;
  X.base = f;
  X.rep = std::move(best);
  X.root = std::move(root);
  X.W = W;
  X.root_len = rl;
  Int n_max = W / rl;
  X.half_extent = n_max * rl;
  GeodesicPath line = geodesic(sp, mul(X.rep, power(X.root, -n_max)),
                               mul(X.rep, power(X.root, n_max)));
  X.pts = std::move(line.vertices);
  X.inv_pts.reserve(X.pts.size());
  for (const auto& p : X.pts) X.inv_pts.push_back(inverse(p));
  return X;
}

inline Axis make_axis(const Space& sp, const Word& f, Int W = -1) {
  return make_axis(sp, identity(), f, W);
}

// Extend the window by extra coset points rep·c·root^n·o (stabilizer hook).
inline Axis make_axis_extended(const Space& sp, const Word& g, const Word& f,
                               const std::vector<Word>& coset_reps, Int W = -1) {
  Axis X = make_axis(sp, g, f, W);
  Int n_max = X.half_extent / X.root_len;
  for (const auto& c : coset_reps) {
    if (c.is_identity()) continue;
    for (Int n = -n_max; n <= n_max; ++n)
      X.extra_pts.push_back(mul(mul(X.rep, c), power(X.root, n)));
  }
  return X;
}

inline Axis translate_axis(const Space& sp, const Word& h, const Axis& X) {
  Axis out = make_axis(sp, mul(h, X.rep), X.root, X.W);
  out.base = X.base;
  for (const auto& p : X.extra_pts) out.extra_pts.push_back(mul(h, p));
  return out;
}

struct ProjectionResult {
  std::vector<Word> points;  // all minimizers
  Int distance = 0;
  Int diameter = 0;
  Int t_lo = 0, t_hi = 0;    // window parameter range of the minimizers
  bool boundary = false;     // minimum attained on the window edge
  bool used_extras = false;  // a coset-extension point is among the minimizers
};

inline ProjectionResult project([[maybe_unused]] const Space& sp, const Axis& X, const Word& y) {
  ProjectionResult r;
  const Int end = static_cast<Int>(X.pts.size()) - 1;
  const Int c = static_cast<Int>(X.center());
  Word y_norm = y;
  Int d0 = length(mul(X.inv_pts[static_cast<size_t>(c)], y_norm));
  Int lo = std::max<Int>(0, c - 2 * d0);
  Int hi = std::min<Int>(end, c + 2 * d0);
  Int best = -1;
  Int t_lo = 0, t_hi = 0;
  for (Int t = lo; t <= hi; ++t) {
    Int d = length(mul(X.inv_pts[static_cast<size_t>(t)], y_norm));
    if (best < 0 || d < best) {
      best = d;
      t_lo = t_hi = t;
    } else if (d == best) {
      t_hi = t;
    }
  }
  r.distance = best;
  r.t_lo = t_lo;
  r.t_hi = t_hi;
  r.boundary = (t_lo == 0 || t_hi == end);
  for (Int t = t_lo; t <= t_hi; ++t)
    if (length(mul(X.inv_pts[static_cast<size_t>(t)], y_norm)) == best)
      r.points.push_back(X.pts[static_cast<size_t>(t)]);
  for (const auto& p : X.extra_pts) {
    Int d = distance(p, y_norm);
    if (d < r.distance) {
      r.distance = d;
      r.points.assign(1, p);
      r.used_extras = true;
    } else if (d == r.distance) {
      r.points.push_back(p);
      r.used_extras = true;
    }
  }
  if (r.used_extras) {
    Int diam = 0;
    for (size_t i = 0; i < r.points.size(); ++i)
      for (size_t j = i + 1; j < r.points.size(); ++j)
        diam = std::max(diam, distance(r.points[i], r.points[j]));
    r.diameter = diam;
  } else {
    r.diameter = r.t_hi - r.t_lo;
  }
  return r;
}

// Union of the minimizer ranges over a set of points (window line only).
struct SetProjection {
  Int t_lo = 0, t_hi = -1;  // empty when t_hi < t_lo
  bool boundary = false;
  Int diameter() const { return t_hi < t_lo ? 0 : t_hi - t_lo; }
};

template <class It>
SetProjection project_set(const Space& sp, const Axis& X, It first, It last) {
  if (X.extended())
    throw CapabilityError("set projection is not supported on coset-extended axes");
  SetProjection s;
  for (It it = first; it != last; ++it) {
    ProjectionResult r = project(sp, X, *it);
    s.boundary = s.boundary || r.boundary;
    if (s.t_hi < s.t_lo) {
      s.t_lo = r.t_lo;
      s.t_hi = r.t_hi;
    } else {
      s.t_lo = std::min(s.t_lo, r.t_lo);
      s.t_hi = std::max(s.t_hi, r.t_hi);
    }
  }
  return s;
}

inline SetProjection project_path(const Space& sp, const Axis& X, const GeodesicPath& p) {
  return project_set(sp, X, p.vertices.begin(), p.vertices.end());
}

// d_U(x, y): diameter of the union of the two shortest projections.
inline Int proj_distance(const Space& sp, const Axis& U, const Word& x, const Word& y) {
  ProjectionResult a = project(sp, U, x);
  ProjectionResult b = project(sp, U, y);
  if (a.boundary || b.boundary)
    throw SpaceError("projection window inconclusive for axis " + axis_key(sp, U) +
                     "; enlarge W");
  if (a.used_extras || b.used_extras) {
    Int diam = 0;
    for (const auto& p : a.points)
      for (const auto& q : b.points) diam = std::max(diam, distance(p, q));
    for (size_t i = 0; i < a.points.size(); ++i)
      for (size_t j = i + 1; j < a.points.size(); ++j)
        diam = std::max(diam, distance(a.points[i], a.points[j]));
    for (size_t i = 0; i < b.points.size(); ++i)
      for (size_t j = i + 1; j < b.points.size(); ++j)
        diam = std::max(diam, distance(b.points[i], b.points[j]));
    return diam;
  }
  return std::max(a.t_hi, b.t_hi) - std::min(a.t_lo, b.t_lo);
}

// Window parameter of a point lying exactly on the axis line, if any.
inline std::optional<size_t> on_axis(const Axis& X, const Word& y) {
  for (size_t t = 0; t < X.pts.size(); ++t)
    if (X.pts[t] == y) return t;
  return std::nullopt;
}

}  // namespace cayley
