#pragma once
// Driving-measure random walks: finitely supported step distributions,
// seeded reproducible trajectories, drift curves, and boundary-convergence
// evidence combining horofunction stabilization, Gromov products, and
// barrier recurrence along the limiting direction.
//
// RNG contract: std::mt19937_64 seeded directly with the trajectory seed.
// Every step consumes exactly one engine draw, mapped to a uniform double
// in [0,1) from the top 53 bits and inverted against the cumulative
// weights.  The engine's output sequence is fixed by the standard, so
// identical (seed, distribution, step count) produce bitwise-identical
// trajectories on every platform.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "enumerate.hpp"
#include "horo.hpp"
#include "myrberg.hpp"
#include "rays.hpp"
#include "word.hpp"

namespace cayley {

struct StepDistribution {
  std::vector<Word> atoms;
  std::vector<double> weights;     // positive, sum 1
  std::vector<double> cumulative;  // running sums, final entry exactly 1
  bool irreducible = false;        // support products cover the unit sphere
};

// Products of at most `depth` support atoms must reach every point of
// S(o, 1); a sufficient certificate for semigroup generation at walk scale.
inline bool covers_unit_sphere(const Space& sp, const std::vector<Word>& atoms, int depth = 3) {
  std::unordered_set<std::string> reached;
  std::vector<Word> frontier = {identity()};
  for (int d = 0; d < depth; ++d) {
    std::vector<Word> next;
    for (const Word& w : frontier)
      for (const Word& g : atoms) {
        Word p = mul(w, g);
        if (reached.insert(format_word(sp, p)).second) next.push_back(std::move(p));
      }
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  for (int i = 0; i < sp.num_generators(); ++i)
    for (Int e : {Int{1}, Int{-1}})
      if (reached.count(format_word(sp, gen_word(sp, i, e))) == 0) return false;
  return true;
}

inline StepDistribution make_distribution(const Space& sp, std::vector<Word> atoms,
                                          std::vector<double> weights) {
  if (atoms.empty()) throw SpaceError("step distribution needs at least one atom");
  if (atoms.size() != weights.size())
    throw SpaceError("step distribution atoms and weights differ in length");
  double total = 0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    validate(sp, atoms[i]);
    if (!(weights[i] > 0)) throw SpaceError("step weights must be positive");
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-9) throw SpaceError("step weights must sum to 1");
  StepDistribution mu;
  mu.atoms = std::move(atoms);
  mu.weights = std::move(weights);
  mu.cumulative.resize(mu.weights.size());
  double acc = 0;
  for (size_t i = 0; i < mu.weights.size(); ++i) {
    acc += mu.weights[i];
    mu.cumulative[i] = acc;
  }
  mu.cumulative.back() = 1.0;
  mu.irreducible = covers_unit_sphere(sp, mu.atoms);
  return mu;
}

// Uniform measure on the generators and their inverses.
inline StepDistribution simple_random_walk(const Space& sp) {
  std::vector<Word> atoms;
  for (int i = 0; i < sp.num_generators(); ++i) {
    atoms.push_back(gen_word(sp, i, 1));
    atoms.push_back(gen_word(sp, i, -1));
  }
  std::vector<double> weights(atoms.size(), 1.0 / static_cast<double>(atoms.size()));
  return make_distribution(sp, std::move(atoms), std::move(weights));
}

inline StepDistribution dirac_step(const Space& sp, const Word& g) {
  return make_distribution(sp, {g}, {1.0});
}

struct Trajectory {
  std::uint64_t seed = 0;
  Int n_steps = 0;
  std::vector<Int> checkpoint_n;  // step indices, final step included
  std::vector<Word> positions;    // w_n at each checkpoint
  std::vector<Word> increments;   // per-step g_n, kept only on request
};

namespace detail {

inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline size_t sample_index(const StepDistribution& mu, double u) {
  auto it = std::upper_bound(mu.cumulative.begin(), mu.cumulative.end(), u);
  if (it == mu.cumulative.end()) --it;
  return static_cast<size_t>(it - mu.cumulative.begin());
}

}  // namespace detail

inline Trajectory simulate(const Space& sp, const StepDistribution& mu, Int n_steps,
                           std::uint64_t seed, Int checkpoint_every = 0,
                           bool keep_increments = false) {
  if (mu.atoms.empty() || mu.cumulative.size() != mu.atoms.size())
    throw SpaceError("step distribution is not initialized");
  if (n_steps < 0) throw SpaceError("step count must be >= 0");
  for (const Word& g : mu.atoms) validate(sp, g);
  if (checkpoint_every <= 0) checkpoint_every = std::max<Int>(1, n_steps / 100);

  Trajectory out;
  out.seed = seed;
  out.n_steps = n_steps;
  std::mt19937_64 rng(seed);
  Word w;
  for (Int i = 1; i <= n_steps; ++i) {
    const Word& g = mu.atoms[detail::sample_index(mu, detail::uniform_unit(rng))];
    for (const Syllable& s : g.syl) append_syllable(w, s.factor, s.v);
    if (keep_increments) out.increments.push_back(g);
    if (i % checkpoint_every == 0 || i == n_steps) {
      out.checkpoint_n.push_back(i);
      out.positions.push_back(w);
    }
  }
  return out;
}

struct DriftCurve {
  std::vector<Int> n;
  std::vector<double> value;  // d(o, w_n) / n
  double terminal = 0;
};

inline DriftCurve drift(const Trajectory& traj) {
  if (traj.positions.empty()) throw SpaceError("trajectory has no checkpoints");
  DriftCurve out;
  out.n = traj.checkpoint_n;
  out.value.reserve(traj.positions.size());
  for (size_t i = 0; i < traj.positions.size(); ++i)
    out.value.push_back(static_cast<double>(length(traj.positions[i])) /
                        static_cast<double>(traj.checkpoint_n[i]));
  out.terminal = out.value.back();
  return out;
}

namespace detail {

// Forming x^{-1} y for x in B(o, R) touches at most R+1 leading syllables of
// y, so the horofunction vector of y on B(o, R) equals that of this prefix.
inline Word direction_prefix(const Word& y, Int R) {
  size_t keep = static_cast<size_t>(R) + 2;
  if (y.syl.size() <= keep) return y;
  Word p;
  p.syl.assign(y.syl.begin(), y.syl.begin() + static_cast<long>(keep));
  return p;
}

}  // namespace detail

struct ConvergenceReport {
  Int R = 0;
  int window = 0;
  std::vector<Int> record_n;            // checkpoints at strictly increasing distance
  bool stabilized = false;              // trailing horofunction vectors all agree
  HoroVector limit;                     // deepest record's vector (even when unstable)
  std::vector<Int> gromov_n;            // sampled checkpoint steps
  std::vector<double> gromov_tail_min;  // min Gromov product over pairs from index k on
  bool gromov_growing = false;
  MyrbergStats barrier_stats;           // filled when barrier elements are supplied
};

// Horofunction stabilization on B(o, R) over the trailing window of escaping
// checkpoints, the suffix-minimum curve of pairwise Gromov products, and
// barrier-recurrence counts along the deepest recorded direction.
inline ConvergenceReport boundary_convergence(const Space& sp, const Trajectory& traj, Int R,
                                              int window = 3, const std::vector<Word>& F = {},
                                              Int r = 0) {
  if (R < 0) throw SpaceError("ball radius must be non-negative");
  if (window < 2) throw SpaceError("stabilization window must be at least 2");
  if (traj.positions.empty()) throw SpaceError("trajectory has no checkpoints");

  ConvergenceReport out;
  out.R = R;
  out.window = window;

  std::vector<const Word*> records;
  Int best = 0;
  for (size_t i = 0; i < traj.positions.size(); ++i) {
    Int l = length(traj.positions[i]);
    if (l > best) {
      best = l;
      records.push_back(&traj.positions[i]);
      out.record_n.push_back(traj.checkpoint_n[i]);
    }
  }

  if (records.size() >= static_cast<size_t>(window)) {
    std::vector<HoroVector> tail;
    for (size_t k = records.size() - static_cast<size_t>(window); k < records.size(); ++k)
      tail.push_back(horofunction_vector(sp, detail::direction_prefix(*records[k], R), R));
    out.stabilized = true;
    for (size_t t = 0; t + 1 < tail.size(); ++t)
      if (finite_difference(tail[t], tail.back()) != 0) {
        out.stabilized = false;
        break;
      }
    out.limit = std::move(tail.back());
  } else if (!records.empty()) {
    out.limit = horofunction_vector(sp, detail::direction_prefix(*records.back(), R), R);
  }

  {
    const size_t m = std::min<size_t>(traj.positions.size(), 12);
    std::vector<size_t> idx(m);
    for (size_t k = 0; k < m; ++k)
      idx[k] = (k + 1) * traj.positions.size() / m - 1;
    std::vector<Word> inv(m);
    std::vector<Int> len(m);
    for (size_t k = 0; k < m; ++k) {
      inv[k] = inverse(traj.positions[idx[k]]);
      len[k] = length(traj.positions[idx[k]]);
      out.gromov_n.push_back(traj.checkpoint_n[idx[k]]);
    }
    if (m >= 2) {
      std::vector<double> pair_min(m - 1, std::numeric_limits<double>::infinity());
      for (size_t i = 0; i + 1 < m; ++i)
        for (size_t j = i + 1; j < m; ++j) {
          Int d = length(mul(inv[i], traj.positions[idx[j]]));
          double gp = static_cast<double>(len[i] + len[j] - d) / 2.0;
          pair_min[i] = std::min(pair_min[i], gp);
        }
      out.gromov_tail_min.resize(m - 1);
      double running = std::numeric_limits<double>::infinity();
      for (size_t k = m - 1; k-- > 0;) {
        running = std::min(running, pair_min[k]);
        out.gromov_tail_min[k] = running;
      }
      out.gromov_growing = out.gromov_tail_min.back() >= out.gromov_tail_min.front();
    }
  }

  if (!F.empty() && !records.empty())
    out.barrier_stats = myrberg_stats(sp, ray_to(sp, *records.back()), F, r);

  return out;
}

}  // namespace cayley
