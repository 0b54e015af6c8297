// Exact four-point hyperbolicity constant of a finite graph.
//
// For a quadruple (w, x, y, z) form the three pairings d(w,x)+d(y,z),
// d(w,y)+d(x,z), d(w,z)+d(x,y); the quadruple's defect is half the gap
// between the largest and second largest, and delta is the maximum defect
// over all unordered quadruples.  Under this convention a tree scores 0 and
// an 8-cycle scores 2.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "projection_complex.hpp"

namespace cayley {

struct HyperbolicityReport {
  double delta = 0.0;
  std::array<int, 4> witness{-1, -1, -1, -1};
  long long quadruples = 0;
};

inline HyperbolicityReport hyperbolicity_scan(const PCGraph& g, int cap = 400) {
  if (g.n > cap)
    throw CapabilityError("hyperbolicity scan is exhaustive; graph exceeds cap " +
                          std::to_string(cap));
  if (!g.connected) throw SpaceError("hyperbolicity scan needs a connected graph");
  const int n = g.n;
  std::vector<std::int16_t> dist(static_cast<size_t>(n) * n, 0);
  for (int s = 0; s < n; ++s) {
    auto d = g.distances_from(s);
    for (int t = 0; t < n; ++t)
      dist[static_cast<size_t>(s) * n + t] = static_cast<std::int16_t>(d[static_cast<size_t>(t)]);
  }
  auto D = [&](int a, int b) { return dist[static_cast<size_t>(a) * n + b]; };

  HyperbolicityReport rep;
  int best2 = 0;  // doubled delta, to stay integral
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d) {
          ++rep.quadruples;
          int s1 = D(a, b) + D(c, d);
          int s2 = D(a, c) + D(b, d);
          int s3 = D(a, d) + D(b, c);
          int hi = std::max(s1, std::max(s2, s3));
          int lo = std::min(s1, std::min(s2, s3));
          int mid = s1 + s2 + s3 - hi - lo;
          if (hi - mid > best2) {
            best2 = hi - mid;
            rep.witness = {a, b, c, d};
          }
        }
  rep.delta = best2 / 2.0;
  return rep;
}

}  // namespace cayley
