#pragma once
// Exact sphere/ball/annulus enumeration.
//
// Normal forms are generated as a prefix tree: the parent of a word is
// obtained by undoing the last step of its canonical staircase, so the
// ancestors of w are exactly the vertices of the canonical geodesic
// [e, w].  Shadow/cylinder accumulation in the density module leans on
// this correspondence.

#include <cstdint>
#include <vector>

#include "geodesic.hpp"
#include "word.hpp"

namespace cayley {

constexpr Int kDefaultEnumCap = 100000000;  // visited-word guard

namespace detail {

struct Frontier {
  int factor = -1;  // factor of the open syllable, -1 at the root
  int coord = 0;    // staircase frontier inside the syllable
  int sign = 1;
};

// Children of a prefix-tree node: continue the open coordinate, open a
// later coordinate of the same factor, or start a syllable in another
// factor.
template <class F>
void for_each_child_move(const Space& sp, const Frontier& fr, F&& emit) {
  for (int f = 0; f < sp.num_factors(); ++f) {
    if (f == fr.factor) {
      emit(f, fr.coord, fr.sign);
      for (int c = fr.coord + 1; c < sp.ranks[static_cast<size_t>(f)]; ++c) {
        emit(f, c, 1);
        emit(f, c, -1);
      }
    } else {
      for (int c = 0; c < sp.ranks[static_cast<size_t>(f)]; ++c) {
        emit(f, c, 1);
        emit(f, c, -1);
      }
    }
  }
}

template <class Visit>
void ball_dfs(const Space& sp, Word& cur, const Frontier& fr, Int depth, Int radius,
              Int& visited, Int cap, Visit&& visit) {
  if (++visited > cap)
    throw ResourceError("enumeration cap exceeded (cap=" + std::to_string(cap) + ")");
  visit(static_cast<const Word&>(cur), depth);
  if (depth == radius) return;
  for_each_child_move(sp, fr, [&](int f, int c, int sg) {
    std::vector<Int> unit(static_cast<size_t>(sp.ranks[static_cast<size_t>(f)]), 0);
    unit[static_cast<size_t>(c)] = sg;
    append_syllable(cur, f, unit);
    ball_dfs(sp, cur, Frontier{f, c, sg}, depth + 1, radius, visited, cap, visit);
    unit[static_cast<size_t>(c)] = -sg;
    append_syllable(cur, f, unit);  // undo
  });
}

}  // namespace detail

// Visit every point of B(o, radius) exactly once as (word, length).
// Deterministic depth-first order; returns the number of visited words.
template <class Visit>
Int enumerate_ball(const Space& sp, Int radius, Visit&& visit, Int cap = kDefaultEnumCap) {
  Word cur;
  Int visited = 0;
  detail::ball_dfs(sp, cur, detail::Frontier{}, 0, radius, visited, cap, visit);
  return visited;
}

// Staircase frontier after the last step of a nonempty word.
inline detail::Frontier frontier_of(const Word& w) {
  if (w.is_identity()) return detail::Frontier{};
  const Syllable& s = w.syl.back();
  int c = 0;
  for (int i = 0; i < static_cast<int>(s.v.size()); ++i)
    if (s.v[static_cast<size_t>(i)] != 0) c = i;
  return detail::Frontier{s.factor, c, s.v[static_cast<size_t>(c)] > 0 ? 1 : -1};
}

// Visit the prefix-tree descendants of base (base included) whose total
// length is <= radius.  Together with the length-(k-1) ancestors this
// partitions B(o, radius) by length-k prefix, which lets ball scans be
// chunked deterministically.
template <class Visit>
Int enumerate_subtree(const Space& sp, const Word& base, Int radius, Visit&& visit,
                      Int cap = kDefaultEnumCap) {
  Word cur = base;
  Int visited = 0;
  detail::ball_dfs(sp, cur, frontier_of(base), length(base), radius, visited, cap, visit);
  return visited;
}

struct AnnulusSpec {
  Word center;
  Int n = 0;
  Int delta = 0;
};

inline bool annulus_contains(const AnnulusSpec& a, const Word& v) {
  Int d = distance(a.center, v);
  Int diff = d - a.n;
  if (diff < 0) diff = -diff;
  return diff <= a.delta;
}

// Emit each element of A(center, n, delta) exactly once.
template <class Visit>
Int enumerate_annulus(const Space& sp, const AnnulusSpec& a, Visit&& visit,
                      Int cap = kDefaultEnumCap) {
  if (a.n < 0 || a.delta < 0) throw SpaceError("annulus radius/width must be >= 0");
  Int lo = a.n - a.delta;
  Int count = 0;
  enumerate_ball(
      sp, a.n + a.delta,
      [&](const Word& u, Int len) {
        if (len < lo) return;
        ++count;
        if (a.center.is_identity()) visit(u, len);
        else visit(mul(a.center, u), len);
      },
      cap);
  return count;
}

inline std::vector<Word> ball_points(const Space& sp, Int radius, Int cap = kDefaultEnumCap) {
  std::vector<Word> out;
  enumerate_ball(sp, radius, [&](const Word& w, Int) { out.push_back(w); }, cap);
  return out;
}

inline std::vector<Word> sphere_points(const Space& sp, Int radius, Int cap = kDefaultEnumCap) {
  std::vector<Word> out;
  enumerate_ball(sp, radius, [&](const Word& w, Int len) { if (len == radius) out.push_back(w); },
                 cap);
  return out;
}

}  // namespace cayley
