#pragma once
// Horofunctions restricted to a finite ball.  The vector of a point y stores
// b_y(x) = d(x, y) - d(o, y) over B(o, R); limits along escaping sequences
// are detected by entrywise stabilization over a trailing window, which is
// sound on the stored ball but cannot certify behaviour outside it.

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "word.hpp"

namespace cayley {

struct HoroVector {
  Int R = 0;
  std::vector<Word> points;  // B(o, R), sorted
  std::vector<Int> values;
  std::string source;

  Int value_at(const Space& sp, const Word& x) const {
    auto it = std::lower_bound(points.begin(), points.end(), x,
                               [&](const Word& a, const Word& b) { return word_less(sp, a, b); });
    if (it == points.end() || !(*it == x))
      throw SpaceError("point is outside the stored ball");
    return values[static_cast<size_t>(it - points.begin())];
  }
};

inline std::vector<Word> sorted_ball(const Space& sp, Int R) {
  auto pts = ball_points(sp, R);
  std::sort(pts.begin(), pts.end(),
            [&](const Word& a, const Word& b) { return word_less(sp, a, b); });
  return pts;
}

inline HoroVector horofunction_vector(const Space& sp, const Word& y, Int R) {
  if (R < 0) throw SpaceError("ball radius must be non-negative");
  HoroVector h;
  h.R = R;
  h.points = sorted_ball(sp, R);
  h.values.reserve(h.points.size());
  Int dy = length(y);
  for (const Word& x : h.points) h.values.push_back(length(mul(inverse(x), y)) - dy);
  h.source = "y=" + format_word(sp, y);
  return h;
}

struct HoroLimit {
  bool converged = false;
  HoroVector vector;             // stabilized values (last term's if not converged)
  std::vector<Word> oscillating; // ball points still moving inside the window
};

// Entrywise stabilization of b_{y_k} over the last `window` terms.  The
// sequence must escape: d(o, y_k) strictly increasing.
inline HoroLimit horo_limit(const Space& sp, const std::vector<Word>& ys, Int R,
                            int window = 5) {
  if (window < 2) throw SpaceError("stabilization window must be at least 2");
  if (ys.size() < static_cast<size_t>(window))
    throw SpaceError("sequence shorter than the stabilization window");
  for (size_t k = 1; k < ys.size(); ++k)
    if (length(ys[k]) <= length(ys[k - 1]))
      throw SpaceError("sequence must have strictly increasing distance from the basepoint");

  std::vector<HoroVector> tail;
  for (size_t k = ys.size() - static_cast<size_t>(window); k < ys.size(); ++k)
    tail.push_back(horofunction_vector(sp, ys[k], R));

  HoroLimit out;
  out.vector = tail.back();
  for (size_t i = 0; i < out.vector.points.size(); ++i) {
    bool stable = true;
    for (size_t t = 0; t + 1 < tail.size(); ++t)
      if (tail[t].values[i] != tail.back().values[i]) { stable = false; break; }
    if (!stable) out.oscillating.push_back(out.vector.points[i]);
  }
  out.converged = out.oscillating.empty();
  out.vector.source = (out.converged ? "limit " : "unstable ") + out.vector.source +
                      " k=" + std::to_string(ys.size());
  return out;
}

// Max entrywise gap on the shared ball; a lower bound for the sup distance
// of the underlying horofunctions.
inline Int finite_difference(const HoroVector& a, const HoroVector& b) {
  if (a.R != b.R || a.points.size() != b.points.size())
    throw SpaceError("horofunction vectors live on different balls");
  Int best = 0;
  for (size_t i = 0; i < a.values.size(); ++i)
    best = std::max(best, std::llabs(a.values[i] - b.values[i]));
  return best;
}

inline Int busemann_cocycle(const Space& sp, const HoroVector& h, const Word& x,
                            const Word& y) {
  return h.value_at(sp, x) - h.value_at(sp, y);
}

}  // namespace cayley
