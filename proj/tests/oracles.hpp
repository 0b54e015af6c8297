#pragma once
// Independent oracles used to pin expected values: breadth-first search over
// the Cayley graph using only generator multiplication, and brute-force
// set scans.  These deliberately avoid the canonical-geodesic, enumeration
// and DP code paths they are used to check.

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_map>
#include <vector>

#include "cayley/word.hpp"

namespace oracle {

using cayley::Int;
using cayley::Space;
using cayley::Word;
using cayley::WordHash;

inline std::vector<Word> generator_moves(const Space& sp) {
  std::vector<Word> out;
  for (int g = 0; g < sp.num_generators(); ++g) {
    out.push_back(cayley::gen_word(sp, g, 1));
    out.push_back(cayley::gen_word(sp, g, -1));
  }
  return out;
}

// Exact distances from the identity out to `radius`, by plain BFS.
inline std::unordered_map<Word, Int, WordHash> bfs_ball(const Space& sp, Int radius) {
  std::unordered_map<Word, Int, WordHash> dist;
  std::deque<Word> queue;
  dist[Word{}] = 0;
  queue.push_back(Word{});
  auto moves = generator_moves(sp);
  while (!queue.empty()) {
    Word cur = queue.front();
    queue.pop_front();
    Int d = dist[cur];
    if (d == radius) continue;
    for (const auto& m : moves) {
      Word nxt = cayley::mul(cur, m);
      if (dist.emplace(nxt, d + 1).second) queue.push_back(nxt);
    }
  }
  return dist;
}

// Brute-force nearest points of an explicit list.
struct Nearest {
  Int distance = -1;
  std::vector<Word> points;
};

inline Nearest nearest_points(const std::vector<Word>& pts, const Word& y) {
  Nearest out;
  for (const auto& p : pts) {
    Int d = cayley::distance(p, y);
    if (out.distance < 0 || d < out.distance) {
      out.distance = d;
      out.points.assign(1, p);
    } else if (d == out.distance) {
      out.points.push_back(p);
    }
  }
  return out;
}

inline Int set_diameter(const std::vector<Word>& pts) {
  Int diam = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j)
      diam = std::max(diam, cayley::distance(pts[i], pts[j]));
  return diam;
}

// Uniformly random generator product of length <= max_len (not reduced).
inline Word random_word(const Space& sp, std::mt19937_64& rng, Int max_len) {
  auto moves = generator_moves(sp);
  std::uniform_int_distribution<Int> len_d(0, max_len);
  std::uniform_int_distribution<size_t> mv_d(0, moves.size() - 1);
  Word w;
  Int n = len_d(rng);
  for (Int i = 0; i < n; ++i) w = cayley::mul(w, moves[mv_d(rng)]);
  return w;
}

}  // namespace oracle
