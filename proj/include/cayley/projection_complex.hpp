// Separation machinery on an axis family: the projection axioms, ordered
// intervals of separating axes, the complex whose edges join unseparated
// pairs, and lifts of graph paths back to admissible paths in the group.
//
// All quantities are read from the family's cached projection table, so the
// exhaustive scans here are table lookups: pairs are O(n^2), triples O(n^3)
// with O(1) work each.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "admissible.hpp"
#include "family.hpp"
#include "geodesic.hpp"

namespace cayley {

struct AxisTriple {
  int u = -1, v = -1, w = -1;
};

struct AxiomReport {
  Int kappa = 0;
  bool pass = false;
  bool proj_bound_ok = false;  // every ||pi_U(V)|| <= kappa
  bool exclusion_ok = false;   // never two of d_U(V,W), d_V(U,W), d_W(U,V) > kappa
  Int max_projection = 0;
  AxisTriple first_proj_violation;  // (u, v) with ||pi_u(v)|| > kappa
  AxisTriple first_excl_violation;
  Int max_separator_count = 0;  // largest #{U : d_U(V,W) > kappa} over pairs
  AxisTriple busiest_pair;      // (v, w) attaining it
  long long pairs = 0, triples = 0;
};

inline AxiomReport check_axioms(const AxisFamily& fam, Int kappa) {
  const int n = fam.size();
  AxiomReport rep;
  rep.kappa = kappa;
  rep.proj_bound_ok = rep.exclusion_ok = true;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      ++rep.pairs;
      Int d = fam.proj_diameter(u, v);
      if (d > rep.max_projection) rep.max_projection = d;
      if (d > kappa && rep.proj_bound_ok) {
        rep.proj_bound_ok = false;
        rep.first_proj_violation = {u, v, -1};
      }
    }
  std::vector<int> busy(static_cast<size_t>(n) * n, 0);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        ++rep.triples;
        Int x = fam.pair_distance(u, v, w);
        Int y = fam.pair_distance(v, u, w);
        Int z = fam.pair_distance(w, u, v);
        int over = (x > kappa) + (y > kappa) + (z > kappa);
        if (over > 1 && rep.exclusion_ok) {
          rep.exclusion_ok = false;
          rep.first_excl_violation = {u, v, w};
        }
        if (x > kappa) ++busy[static_cast<size_t>(v) * n + w];
        if (y > kappa) ++busy[static_cast<size_t>(u) * n + w];
        if (z > kappa) ++busy[static_cast<size_t>(u) * n + v];
      }
  for (int v = 0; v < n; ++v)
    for (int w = v + 1; w < n; ++w) {
      int c = busy[static_cast<size_t>(v) * n + w];
      if (c > rep.max_separator_count) {
        rep.max_separator_count = c;
        rep.busiest_pair = {v, w, -1};
      }
    }
  rep.pass = rep.proj_bound_ok && rep.exclusion_ok;
  return rep;
}

// Smallest kappa at which both checks of check_axioms pass: the max pairwise
// projection diameter, and per triple the second largest of the three
// pair distances (two may never exceed kappa simultaneously).
inline Int smallest_axiom_kappa(const AxisFamily& fam) {
  const int n = fam.size();
  Int k = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) k = std::max(k, fam.proj_diameter(u, v));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = v + 1; w < n; ++w) {
        Int x = fam.pair_distance(u, v, w);
        Int y = fam.pair_distance(v, u, w);
        Int z = fam.pair_distance(w, u, v);
        Int hi = std::max(x, std::max(y, z));
        Int second = x + y + z - hi - std::min(x, std::min(y, z));
        k = std::max(k, second);
      }
  return k;
}

// Ordered interval: the axes separating v from w at threshold K, walked from
// v to w.  a precedes b when a separates v from b (d_a(v, b) > kappa); the
// relation is checked to be a strict total order before it is trusted.
struct IntervalChain {
  int v = -1, w = -1;
  Int K = 0;
  Int kappa = 0;
  std::vector<int> members;  // members.front() == v, members.back() == w
};

inline IntervalChain interval_set(const AxisFamily& fam, Int K, int v, int w,
                                  Int kappa = -1) {
  const int n = fam.size();
  if (v < 0 || w < 0 || v >= n || w >= n || v == w)
    throw SpaceError("interval endpoints must be distinct family members");
  if (kappa < 0) kappa = K / 2;
  IntervalChain chain;
  chain.v = v;
  chain.w = w;
  chain.K = K;
  chain.kappa = kappa;
  std::vector<int> interior;
  for (int u = 0; u < n; ++u)
    if (u != v && u != w && fam.pair_distance(u, v, w) > K) interior.push_back(u);
  auto separates = [&](int a, int b) { return fam.pair_distance(a, v, b) > kappa; };
  for (size_t i = 0; i < interior.size(); ++i)
    for (size_t j = i + 1; j < interior.size(); ++j) {
      int a = interior[i], b = interior[j];
      if (separates(a, b) == separates(b, a))
        throw SpaceError("interval order between " + fam.id(a) + " and " + fam.id(b) +
                         " over (" + fam.id(v) + ", " + fam.id(w) +
                         ") is not a dichotomy; K too small");
    }
  std::vector<std::pair<int, int>> ranked;  // (rank, axis)
  for (int a : interior) {
    int rank = 0;
    for (int b : interior)
      if (b != a && separates(b, a)) ++rank;
    ranked.emplace_back(rank, a);
  }
  std::sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return fam.id(x.second) < fam.id(y.second);
  });
  for (size_t i = 1; i < ranked.size(); ++i)
    if (ranked[i].first == ranked[i - 1].first)
      throw SpaceError("interval order over (" + fam.id(v) + ", " + fam.id(w) +
                       ") is not transitive at " + fam.id(ranked[i].second) +
                       "; K too small");
  chain.members.push_back(v);
  for (const auto& [rank, a] : ranked) chain.members.push_back(a);
  chain.members.push_back(w);
  return chain;
}

// Max over interior members m of d_m(endpoints) - d_m(neighbours): how much
// an interior projection can shrink when the endpoints are replaced by the
// adjacent interval members.  Zero when there is no interior.
inline Int interval_sandwich_defect(const AxisFamily& fam, const IntervalChain& c) {
  Int defect = 0;
  for (size_t i = 1; i + 1 < c.members.size(); ++i) {
    Int wide = fam.pair_distance(c.members[i], c.v, c.w);
    Int tight = fam.pair_distance(c.members[i], c.members[i - 1], c.members[i + 1]);
    defect = std::max(defect, wide - tight);
  }
  return defect;
}

struct PCGraph {
  Int K = 0;
  int n = 0;
  long long edges = 0;
  bool connected = false;
  std::vector<std::vector<int>> adj;

  static PCGraph from_edges(int n, const std::vector<std::pair<int, int>>& e) {
    PCGraph g;
    g.n = n;
    g.adj.assign(static_cast<size_t>(n), {});
    for (auto [a, b] : e) {
      g.adj[static_cast<size_t>(a)].push_back(b);
      g.adj[static_cast<size_t>(b)].push_back(a);
      ++g.edges;
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    g.connected = g.bfs_reach();
    return g;
  }

  bool adjacent(int a, int b) const {
    const auto& nb = adj[static_cast<size_t>(a)];
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  // BFS distances from src; skip (when >= 0) is treated as deleted; -1 means
  // unreachable.
  std::vector<int> distances_from(int src, int skip = -1) const {
    std::vector<int> dist(static_cast<size_t>(n), -1);
    if (src == skip) return dist;
    std::deque<int> q{src};
    dist[static_cast<size_t>(src)] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : adj[static_cast<size_t>(x)]) {
        if (y == skip || dist[static_cast<size_t>(y)] >= 0) continue;
        dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
        q.push_back(y);
      }
    }
    return dist;
  }

 private:
  bool bfs_reach() const {
    if (n == 0) return false;
    auto d = distances_from(0);
    for (int x : d)
      if (x < 0) return false;
    return true;
  }
};

// Edge iff no third axis sees both far apart: d_X(U, V) <= K for every X.
inline PCGraph build_complex(const AxisFamily& fam, Int K) {
  const int n = fam.size();
  PCGraph g;
  g.K = K;
  g.n = n;
  g.adj.assign(static_cast<size_t>(n), {});
  const size_t words = (static_cast<size_t>(n) * n + 63) / 64;
  std::vector<std::uint64_t> sep(words, 0);
  for (int x = 0; x < n; ++x) {
    const Int* lo = fam.plo_.data() + static_cast<size_t>(x) * n;
    const Int* hi = fam.phi_.data() + static_cast<size_t>(x) * n;
    for (int u = 0; u < n; ++u) {
      if (u == x) continue;
      for (int v = u + 1; v < n; ++v) {
        if (v == x) continue;
        Int d = std::max(hi[u], hi[v]) - std::min(lo[u], lo[v]);
        if (d > K) {
          size_t bit = static_cast<size_t>(u) * n + v;
          sep[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
      }
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      size_t bit = static_cast<size_t>(u) * n + v;
      if (!(sep[bit >> 6] >> (bit & 63) & 1)) {
        g.adj[static_cast<size_t>(u)].push_back(v);
        g.adj[static_cast<size_t>(v)].push_back(u);
        ++g.edges;
      }
    }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  auto d0 = g.distances_from(0);
  g.connected = n > 0 && std::all_of(d0.begin(), d0.end(), [](int x) { return x >= 0; });
  return g;
}

// Every non-adjacent pair must be joined by its interval: consecutive interval
// members are required to be edges of the complex.
struct IntervalPathReport {
  bool ok = true;
  long long pairs = 0;
  int u = -1, v = -1;     // first failing pair
  int at_a = -1, at_b = -1;  // its non-adjacent consecutive members
};

inline IntervalPathReport verify_interval_paths(const AxisFamily& fam, const PCGraph& g,
                                                Int kappa = -1) {
  IntervalPathReport rep;
  for (int u = 0; u < g.n && rep.ok; ++u)
    for (int v = u + 1; v < g.n && rep.ok; ++v) {
      ++rep.pairs;
      if (g.adjacent(u, v)) continue;
      IntervalChain c = interval_set(fam, g.K, u, v, kappa);
      for (size_t i = 1; i < c.members.size(); ++i)
        if (!g.adjacent(c.members[i - 1], c.members[i])) {
          rep.ok = false;
          rep.u = u;
          rep.v = v;
          rep.at_a = c.members[i - 1];
          rep.at_b = c.members[i];
          break;
        }
    }
  return rep;
}

// Strong separation: every member of the open interval between x and z must
// lie on every graph geodesic, i.e. deleting it lengthens (or cuts) all of
// them.  Exhaustive, so capped.
struct ForcingReport {
  bool ok = true;
  long long checked = 0;
  int x = -1, z = -1, y = -1;  // first member that some geodesic avoids
};

inline ForcingReport forcing_check(const AxisFamily& fam, const PCGraph& g,
                                   int cap = 120) {
  if (g.n > cap)
    throw CapabilityError("forcing check is exhaustive; graph exceeds cap " +
                          std::to_string(cap));
  ForcingReport rep;
  const int n = g.n;
  for (int x = 0; x < n && rep.ok; ++x) {
    auto base = g.distances_from(x);
    for (int z = x + 1; z < n && rep.ok; ++z) {
      if (base[static_cast<size_t>(z)] < 0) continue;
      for (int y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        if (fam.pair_distance(y, x, z) <= g.K) continue;
        ++rep.checked;
        auto cut = g.distances_from(x, y);
        int dz = cut[static_cast<size_t>(z)];
        if (dz >= 0 && dz <= base[static_cast<size_t>(z)]) {
          rep.ok = false;
          rep.x = x;
          rep.z = z;
          rep.y = y;
          break;
        }
      }
    }
  }
  return rep;
}

// First K in [K_lo, K_hi] whose complex is connected and passes the forcing
// check.
inline Int smallest_forcing_K(const AxisFamily& fam, Int K_lo, Int K_hi,
                              int cap = 120) {
  for (Int K = K_lo; K <= K_hi; ++K) {
    PCGraph g = build_complex(fam, K);
    if (!g.connected) continue;
    if (forcing_check(fam, g, cap).ok) return K;
  }
  throw SpaceError("no K in [" + std::to_string(K_lo) + ", " + std::to_string(K_hi) +
                   "] passes the forcing check");
}

// Interval members of [u,v] outside [u,w] union [w,v], in interval order.
// The containment is allowed to fail on at most two consecutive members.
struct TripodReport {
  bool ok = true;
  long long triples = 0;
  AxisTriple worst;            // (u, v, w) with the largest exception set
  int max_exceptions = 0;
  std::vector<int> exceptions;  // members of [u,v] missing from the union
};

inline TripodReport tripod_check(const AxisFamily& fam, Int K, Int kappa = -1,
                                 int cap = 200) {
  const int n = fam.size();
  if (n > cap)
    throw CapabilityError("tripod check is exhaustive; family exceeds cap " +
                          std::to_string(cap));
  TripodReport rep;
  // membership bitsets over axes, one row per unordered pair
  const size_t words = (static_cast<size_t>(n) + 63) / 64;
  std::vector<std::uint64_t> member(static_cast<size_t>(n) * n * words, 0);
  auto row = [&](int a, int b) {
    return member.data() + (static_cast<size_t>(a) * n + b) * words;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      std::uint64_t* m = row(a, b);
      auto set = [&](int u) { m[static_cast<size_t>(u) >> 6] |= std::uint64_t{1} << (u & 63); };
      set(a);
      set(b);
      for (int u = 0; u < n; ++u)
        if (u != a && u != b && fam.pair_distance(u, a, b) > K) set(u);
    }
  auto ordered_row = [&](int a, int b) { return a < b ? row(a, b) : row(b, a); };
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = 0; w < n; ++w) {
        if (w == u || w == v) continue;
        ++rep.triples;
        const std::uint64_t* uv = row(u, v);
        const std::uint64_t* uw = ordered_row(u, w);
        const std::uint64_t* wv = ordered_row(w, v);
        std::vector<int> missing;
        for (size_t i = 0; i < words; ++i) {
          std::uint64_t out = uv[i] & ~(uw[i] | wv[i]);
          while (out) {
            int bit = static_cast<int>(i * 64) + __builtin_ctzll(out);
            out &= out - 1;
            missing.push_back(bit);
          }
        }
        if (missing.empty()) continue;
        bool bad = missing.size() > 2;
        if (!bad) {
          IntervalChain c = interval_set(fam, K, u, v, kappa);
          std::vector<int> pos;
          for (size_t i = 0; i < c.members.size(); ++i)
            for (int m : missing)
              if (c.members[i] == m) pos.push_back(static_cast<int>(i));
          bad = pos.size() != missing.size() ||
                (pos.size() == 2 && pos[1] != pos[0] + 1);
        }
        if (static_cast<int>(missing.size()) > rep.max_exceptions) {
          rep.max_exceptions = static_cast<int>(missing.size());
          rep.worst = {u, v, w};
          rep.exceptions = missing;
        }
        if (bad) {
          rep.ok = false;
          rep.worst = {u, v, w};
          rep.exceptions = missing;
          return rep;
        }
      }
  return rep;
}

// Lift a graph geodesic between two axes back to an admissible path: walk the
// interval from U to V, entering each axis at the projection of its
// predecessor and leaving at the projection of its successor.
struct LiftResult {
  AdmissiblePath path;
  std::vector<int> chain;
};

inline LiftResult lift_path(const Space& sp, const AxisFamily& fam, Int K, int U,
                            int V, const Word& u, const Word& v, Int kappa = -1) {
  const int n = fam.size();
  if (U < 0 || V < 0 || U >= n || V >= n)
    throw SpaceError("lift endpoints must be family members");
  auto param_of = [&](const Axis& X, const Word& x, const char* which) {
    auto t = on_axis(X, x);
    if (!t)
      throw SpaceError(std::string("lift ") + which + " endpoint is off its axis window");
    return static_cast<Int>(*t);
  };
  auto window_leg = [&](const Axis& X, Int ta, Int tb) {
    GeodesicPath p;
    Int step = ta <= tb ? 1 : -1;
    for (Int t = ta;; t += step) {
      p.vertices.push_back(X.pts[static_cast<size_t>(t)]);
      if (t == tb) break;
    }
    return p;
  };

  LiftResult out;
  if (U == V) {
    const Axis& X = fam.axes[static_cast<size_t>(U)];
    Int ta = param_of(X, u, "start");
    Int tb = param_of(X, v, "end");
    AdmissibleSegment seg;
    seg.path = window_leg(X, ta, tb);
    seg.is_p = true;
    seg.axis = 0;
    out.path.segments.push_back(std::move(seg));
    out.path.saturation.push_back(X);
    out.path.L = std::max<Int>(out.path.segments[0].path.len() - 1, 0);
    out.path.B = 0;
    out.chain = {U};
    return out;
  }

  IntervalChain c = interval_set(fam, K, U, V, kappa);
  out.chain = c.members;
  const size_t k = c.members.size();
  // Enter each axis at the near edge of the previous axis's projection and
  // leave at the near edge of the next one's; when the two ranges overlap the
  // leg collapses to a point inside the overlap.  This keeps every leg moving
  // monotonically from the incoming side to the outgoing side.
  std::vector<Int> arrive(k, 0), depart(k, 0);
  auto clamp = [](Int t, Int lo, Int hi) { return std::min(std::max(t, lo), hi); };
  for (size_t i = 0; i < k; ++i) {
    int s = c.members[i];
    const Axis& X = fam.axes[static_cast<size_t>(s)];
    if (i == 0) {
      arrive[i] = param_of(X, u, "start");
      int next = c.members[i + 1];
      depart[i] = clamp(arrive[i], fam.proj_lo(s, next), fam.proj_hi(s, next));
      continue;
    }
    if (i + 1 == k) {
      depart[i] = param_of(X, v, "end");
      int prev = c.members[i - 1];
      arrive[i] = clamp(depart[i], fam.proj_lo(s, prev), fam.proj_hi(s, prev));
      continue;
    }
    Int p_lo = fam.proj_lo(s, c.members[i - 1]);
    Int p_hi = fam.proj_hi(s, c.members[i - 1]);
    Int q_lo = fam.proj_lo(s, c.members[i + 1]);
    Int q_hi = fam.proj_hi(s, c.members[i + 1]);
    if (q_lo > p_hi) {  // next side lies to the right
      arrive[i] = p_hi;
      depart[i] = q_lo;
    } else if (q_hi < p_lo) {  // next side lies to the left
      arrive[i] = p_lo;
      depart[i] = q_hi;
    } else {  // ranges touch: no travel needed on this axis
      arrive[i] = depart[i] = (std::max(p_lo, q_lo) + std::min(p_hi, q_hi)) / 2;
    }
  }

  for (size_t i = 0; i < k; ++i) {
    const Axis& X = fam.axes[static_cast<size_t>(c.members[i])];
    out.path.saturation.push_back(X);
    if (i > 0) {
      const Axis& P = fam.axes[static_cast<size_t>(c.members[i - 1])];
      AdmissibleSegment q;
      q.path = geodesic(sp, P.pts[static_cast<size_t>(depart[i - 1])],
                        X.pts[static_cast<size_t>(arrive[i])]);
      q.is_p = false;
      out.path.segments.push_back(std::move(q));
    }
    AdmissibleSegment p;
    p.path = window_leg(X, arrive[i], depart[i]);
    p.is_p = true;
    p.axis = static_cast<int>(i);
    out.path.segments.push_back(std::move(p));
  }

  Int min_len = -1;
  bool interior_seen = false;
  for (size_t i = 0; i < out.path.segments.size(); ++i) {
    const auto& seg = out.path.segments[i];
    if (!seg.is_p) continue;
    bool interior = i != 0 && i + 1 != out.path.segments.size();
    if (interior && !interior_seen) {
      min_len = seg.path.len();
      interior_seen = true;
    } else if (interior) {
      min_len = std::min(min_len, seg.path.len());
    } else if (!interior_seen) {
      min_len = min_len < 0 ? seg.path.len() : std::min(min_len, seg.path.len());
    }
  }
  out.path.L = std::max<Int>(min_len - 1, 0);

  Int B = 0;
  for (size_t i = 0; i < out.path.segments.size(); ++i) {
    const auto& seg = out.path.segments[i];
    if (seg.is_p) continue;
    SetProjection a = project_path(sp, out.path.saturation[static_cast<size_t>(
                                           out.path.segments[i - 1].axis)],
                                   seg.path);
    SetProjection b = project_path(sp, out.path.saturation[static_cast<size_t>(
                                           out.path.segments[i + 1].axis)],
                                   seg.path);
    if (a.boundary || b.boundary)
      throw SpaceError("lift connector projection inconclusive; enlarge W");
    B = std::max(B, std::max(a.diameter(), b.diameter()));
  }
  out.path.B = B;

  AdmissibleReport rep = verify_admissible(sp, out.path);
  if (!rep.pass)
    throw SpaceError("lifted path is not admissible: " + rep.failures.front());
  return out;
}

}  // namespace cayley
