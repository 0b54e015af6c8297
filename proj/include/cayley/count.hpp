#pragma once
// Exact counts of {g : d(x, g·y) = n} under subgroup constraints.
//
// The transfer DP runs over (total length, factor of the last syllable,
// constraint state); per-factor syllable tables aggregate all exponent
// vectors of a given L1 norm.  A streaming filter over the enumerated
// annulus provides the independent slow path.

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "enumerate.hpp"
#include "word.hpp"

namespace cayley {

using BigCount = unsigned __int128;

inline double big_to_double(BigCount c) {
  double hi = static_cast<double>(static_cast<std::uint64_t>(c >> 64));
  double lo = static_cast<double>(static_cast<std::uint64_t>(c));
  return hi * 18446744073709551616.0 + lo;
}

inline std::string big_to_string(BigCount c) {
  if (c == 0) return "0";
  std::string s;
  while (c > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(c % 10)));
    c /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

// ---- predicates ----------------------------------------------------------

struct WholeGroup {};

// Kernel of the induced map to Z given by one integer weight per generator.
struct ExponentKernel {
  std::vector<Int> weights;
};

// Kernel of the induced map to Z/q.
struct ModKernel {
  std::vector<Int> weights;
  Int q = 2;
};

// Finite-index coset description: right action on cosets {0..states-1} of a
// finite quotient, start and accept at coset 0.  trans[g][q] is the coset
// reached from q by the positive generator g; inverse moves use the inverse
// permutation.  Same-factor generators must commute for the action to be
// well defined on syllables.
struct CosetTable {
  int states = 1;
  std::vector<std::vector<int>> trans;
  bool normal = false;  // declared by the caller
};

using Predicate = std::variant<WholeGroup, ExponentKernel, ModKernel, CosetTable>;

inline Predicate whole_group() { return WholeGroup{}; }

inline Predicate exponent_kernel(const Space& sp, std::vector<Int> w) {
  if (static_cast<int>(w.size()) != sp.num_generators())
    throw SpaceError("exponent kernel needs one weight per generator");
  return ExponentKernel{std::move(w)};
}

inline Predicate parity_kernel(const Space& sp, std::vector<Int> w) {
  if (static_cast<int>(w.size()) != sp.num_generators())
    throw SpaceError("parity kernel needs one weight per generator");
  return ModKernel{std::move(w), 2};
}

inline Predicate mod_kernel(const Space& sp, std::vector<Int> w, Int q) {
  if (static_cast<int>(w.size()) != sp.num_generators())
    throw SpaceError("mod kernel needs one weight per generator");
  if (q < 2) throw SpaceError("modulus must be >= 2");
  return ModKernel{std::move(w), q};
}

namespace detail {

inline void check_coset_table(const Space& sp, const CosetTable& t) {
  if (t.states < 1) throw SpaceError("coset table needs >= 1 state");
  if (static_cast<int>(t.trans.size()) != sp.num_generators())
    throw SpaceError("coset table needs one row per generator");
  for (const auto& row : t.trans) {
    if (static_cast<int>(row.size()) != t.states)
      throw SpaceError("coset table row has wrong length");
    std::vector<char> seen(static_cast<size_t>(t.states), 0);
    for (int v : row) {
      if (v < 0 || v >= t.states || seen[static_cast<size_t>(v)])
        throw SpaceError("coset table row is not a permutation");
      seen[static_cast<size_t>(v)] = 1;
    }
  }
  for (int f = 0; f < sp.num_factors(); ++f)
    for (int c1 = 0; c1 < sp.ranks[static_cast<size_t>(f)]; ++c1)
      for (int c2 = c1 + 1; c2 < sp.ranks[static_cast<size_t>(f)]; ++c2) {
        const auto& p = t.trans[static_cast<size_t>(sp.gen_index(f, c1))];
        const auto& q = t.trans[static_cast<size_t>(sp.gen_index(f, c2))];
        for (int st = 0; st < t.states; ++st)
          if (p[static_cast<size_t>(q[static_cast<size_t>(st)])] !=
              q[static_cast<size_t>(p[static_cast<size_t>(st)])])
            throw SpaceError("coset table: same-factor generators must commute");
      }
}

inline int coset_step(const CosetTable& t, int state, int gen, Int e) {
  const auto& perm = t.trans[static_cast<size_t>(gen)];
  if (e >= 0) {
    for (Int i = 0; i < e; ++i) state = perm[static_cast<size_t>(state)];
  } else {
    std::vector<int> inv(perm.size());
    for (size_t j = 0; j < perm.size(); ++j) inv[static_cast<size_t>(perm[j])] = static_cast<int>(j);
    for (Int i = 0; i < -e; ++i) state = inv[static_cast<size_t>(state)];
  }
  return state;
}

}  // namespace detail

inline Int exponent_value(const Space& sp, const std::vector<Int>& w, const Word& g) {
  Int s = 0;
  for (const auto& y : g.syl)
    for (int c = 0; c < sp.ranks[static_cast<size_t>(y.factor)]; ++c)
      s += w[static_cast<size_t>(sp.gen_index(y.factor, c))] * y.v[static_cast<size_t>(c)];
  return s;
}

inline int coset_state(const Space& sp, const CosetTable& t, const Word& g, int start = 0) {
  int st = start;
  for (const auto& y : g.syl)
    for (int c = 0; c < sp.ranks[static_cast<size_t>(y.factor)]; ++c)
      st = detail::coset_step(t, st, sp.gen_index(y.factor, c), y.v[static_cast<size_t>(c)]);
  return st;
}

inline bool member(const Space& sp, const Predicate& pred, const Word& g) {
  if (std::holds_alternative<WholeGroup>(pred)) return true;
  if (const auto* e = std::get_if<ExponentKernel>(&pred))
    return exponent_value(sp, e->weights, g) == 0;
  if (const auto* m = std::get_if<ModKernel>(&pred)) {
    Int v = exponent_value(sp, m->weights, g) % m->q;
    return (v % m->q + m->q) % m->q == 0;
  }
  const auto& t = std::get<CosetTable>(pred);
  return coset_state(sp, t, g) == 0;
}

inline bool predicate_normal(const Predicate& pred) {
  if (std::holds_alternative<WholeGroup>(pred)) return true;
  if (std::holds_alternative<ExponentKernel>(pred)) return true;
  if (std::holds_alternative<ModKernel>(pred)) return true;
  return std::get<CosetTable>(pred).normal;
}

inline const char* predicate_name(const Predicate& pred) {
  if (std::holds_alternative<WholeGroup>(pred)) return "whole-group";
  if (std::holds_alternative<ExponentKernel>(pred)) return "exponent-kernel";
  if (std::holds_alternative<ModKernel>(pred)) return "mod-kernel";
  return "coset-table";
}

// ---- transfer DP ---------------------------------------------------------

namespace detail {

// Enumerate every exponent vector of L1 norm exactly `norm` in Z^rank.
template <class F>
void for_each_vector(int rank, Int norm, std::vector<Int>& v, int coord, F&& emit) {
  if (coord == rank - 1) {
    if (norm == 0) {
      v[static_cast<size_t>(coord)] = 0;
      emit(v);
    } else {
      v[static_cast<size_t>(coord)] = norm;
      emit(v);
      v[static_cast<size_t>(coord)] = -norm;
      emit(v);
    }
    return;
  }
  for (Int a = -norm; a <= norm; ++a) {
    v[static_cast<size_t>(coord)] = a;
    for_each_vector(rank, norm - (a < 0 ? -a : a), v, coord + 1, emit);
  }
}

struct DpTables {
  // whole[f][l]: number of vectors of norm l in factor f
  std::vector<std::vector<BigCount>> whole;
  // delta[f][l]: (weighted delta -> count), used by exponent/mod kernels
  std::vector<std::vector<std::map<Int, BigCount>>> delta;
  // state[f][l]: flattened states x states count matrix for coset tables
  std::vector<std::vector<std::vector<BigCount>>> state;
  int nstates = 1;
};

inline DpTables build_tables(const Space& sp, const Predicate& pred, Int n_max) {
  DpTables tb;
  int nf = sp.num_factors();
  bool use_delta = std::holds_alternative<ExponentKernel>(pred) ||
                   std::holds_alternative<ModKernel>(pred);
  const CosetTable* ct = std::get_if<CosetTable>(&pred);
  if (ct) {
    check_coset_table(sp, *ct);
    tb.nstates = ct->states;
  }
  std::vector<Int> weights;
  Int q = 0;
  if (const auto* e = std::get_if<ExponentKernel>(&pred)) weights = e->weights;
  if (const auto* m = std::get_if<ModKernel>(&pred)) { weights = m->weights; q = m->q; }

  tb.whole.assign(static_cast<size_t>(nf), {});
  tb.delta.assign(static_cast<size_t>(nf), {});
  tb.state.assign(static_cast<size_t>(nf), {});
  for (int f = 0; f < nf; ++f) {
    int rank = sp.ranks[static_cast<size_t>(f)];
    tb.whole[static_cast<size_t>(f)].assign(static_cast<size_t>(n_max + 1), 0);
    if (use_delta) tb.delta[static_cast<size_t>(f)].assign(static_cast<size_t>(n_max + 1), {});
    if (ct)
      tb.state[static_cast<size_t>(f)].assign(
          static_cast<size_t>(n_max + 1),
          std::vector<BigCount>(static_cast<size_t>(tb.nstates * tb.nstates), 0));
    std::vector<Int> v(static_cast<size_t>(rank));
    for (Int l = 1; l <= n_max; ++l) {
      for_each_vector(rank, l, v, 0, [&](const std::vector<Int>& vec) {
        tb.whole[static_cast<size_t>(f)][static_cast<size_t>(l)] += 1;
        if (use_delta) {
          Int d = 0;
          for (int c = 0; c < rank; ++c)
            d += weights[static_cast<size_t>(sp.gen_index(f, c))] * vec[static_cast<size_t>(c)];
          if (q > 0) d = ((d % q) + q) % q;
          tb.delta[static_cast<size_t>(f)][static_cast<size_t>(l)][d] += 1;
        }
        if (ct) {
          auto& mat = tb.state[static_cast<size_t>(f)][static_cast<size_t>(l)];
          for (int st = 0; st < tb.nstates; ++st) {
            int to = st;
            for (int c = 0; c < rank; ++c)
              to = coset_step(*ct, to, sp.gen_index(f, c), vec[static_cast<size_t>(c)]);
            mat[static_cast<size_t>(st * tb.nstates + to)] += 1;
          }
        }
      });
    }
  }
  return tb;
}

}  // namespace detail

// counts[n] = #{ g satisfying pred : d(x, g*y) = n } for n = 0..n_max.
// d(x, g*y) = |u| with g = x*u*y^{-1}, so the DP walks u and corrects the
// constraint state by the fixed x (front) and y^{-1} (back) offsets.
inline std::vector<BigCount> sphere_counts_constrained(const Space& sp, const Predicate& pred,
                                                       Int n_max, const Word& x = Word{},
                                                       const Word& y = Word{}) {
  if (n_max < 0) throw SpaceError("n_max must be >= 0");
  auto tb = detail::build_tables(sp, pred, n_max);
  int nf = sp.num_factors();

  // Constraint-state bookkeeping.
  bool use_delta = std::holds_alternative<ExponentKernel>(pred) ||
                   std::holds_alternative<ModKernel>(pred);
  const CosetTable* ct = std::get_if<CosetTable>(&pred);
  Int q = 0;
  std::vector<Int> weights;
  if (const auto* e = std::get_if<ExponentKernel>(&pred)) weights = e->weights;
  if (const auto* m = std::get_if<ModKernel>(&pred)) { weights = m->weights; q = m->q; }

  Int target = 0;       // required delta of u (exponent/mod kernels)
  Int offset = 0;       // index shift for signed deltas
  Int nst = 1;          // states per (length, factor) cell
  int accept_from = 0;  // coset state u must reach (so that x*u*y^-1 accepts)
  if (use_delta) {
    // member(x*u*y^-1) iff delta(x) + delta(u) - delta(y) == 0 (mod q)
    Int dx = exponent_value(sp, weights, x);
    Int dy = exponent_value(sp, weights, y);
    target = dy - dx;
    if (q > 0) target = ((target % q) + q) % q;
    if (q > 0) {
      nst = q;
      offset = 0;
    } else {
      Int maxw = 1;
      for (Int w : weights) maxw = std::max(maxw, w < 0 ? -w : w);
      offset = n_max * maxw;
      nst = 2 * offset + 1;
      if (target < -offset || target > offset) nst = -1;  // unreachable
    }
  } else if (ct) {
    nst = ct->states;
    // need state0 ->x-> s ->u-> t with t ->y^-1-> 0, i.e. t = state reached
    // from 0 by y (right action: state(y) since accept means coset H itself).
    accept_from = coset_state(sp, *ct, y);
  }

  std::vector<BigCount> counts(static_cast<size_t>(n_max + 1), 0);
  // identity term
  {
    Word g = mul(x, inverse(y));
    (void)g;
    if (member(sp, pred, mul(x, inverse(y)))) counts[0] = 1;
  }
  if (nst < 0) return counts;

  // dp[l][f*nst + s] = number of normal forms u of length l whose last
  // syllable is in factor f, with constraint state s accumulated along u.
  std::vector<std::vector<BigCount>> dp(static_cast<size_t>(n_max + 1),
                                        std::vector<BigCount>(static_cast<size_t>(nf) * static_cast<size_t>(nst), 0));

  auto state_cell = [&](std::vector<BigCount>& row, int f, Int s) -> BigCount& {
    return row[static_cast<size_t>(f) * static_cast<size_t>(nst) + static_cast<size_t>(s)];
  };

  Int start_state = 0;
  if (use_delta && q == 0) start_state = offset;  // delta 0
  if (ct) start_state = coset_state(sp, *ct, x);  // state after x

  // seed: first syllable of u
  for (Int l = 1; l <= n_max; ++l)
    for (int f = 0; f < nf; ++f) {
      if (use_delta) {
        for (const auto& [d, c] : tb.delta[static_cast<size_t>(f)][static_cast<size_t>(l)]) {
          Int s = q > 0 ? (start_state + d) % q : start_state + d;
          if (s < 0 || s >= nst) continue;
          state_cell(dp[static_cast<size_t>(l)], f, s) += c;
        }
      } else if (ct) {
        const auto& mat = tb.state[static_cast<size_t>(f)][static_cast<size_t>(l)];
        for (int to = 0; to < nst; ++to) {
          BigCount c = mat[static_cast<size_t>(start_state * nst + to)];
          if (c) state_cell(dp[static_cast<size_t>(l)], f, to) += c;
        }
      } else {
        state_cell(dp[static_cast<size_t>(l)], f, 0) +=
            tb.whole[static_cast<size_t>(f)][static_cast<size_t>(l)];
      }
    }

  // extend syllable by syllable
  for (Int total = 1; total <= n_max; ++total)
    for (Int l = 1; l < total; ++l) {
      const auto& prev = dp[static_cast<size_t>(total - l)];
      auto& next = dp[static_cast<size_t>(total)];
      for (int pf = 0; pf < nf; ++pf)
        for (Int s = 0; s < nst; ++s) {
          BigCount base = prev[static_cast<size_t>(pf) * static_cast<size_t>(nst) + static_cast<size_t>(s)];
          if (!base) continue;
          for (int f = 0; f < nf; ++f) {
            if (f == pf) continue;
            if (use_delta) {
              for (const auto& [d, c] : tb.delta[static_cast<size_t>(f)][static_cast<size_t>(l)]) {
                Int s2 = q > 0 ? (s + d) % q : s + d;
                if (s2 < 0 || s2 >= nst) continue;
                state_cell(next, f, s2) += base * c;
              }
            } else if (ct) {
              const auto& mat = tb.state[static_cast<size_t>(f)][static_cast<size_t>(l)];
              for (int to = 0; to < nst; ++to) {
                BigCount c = mat[static_cast<size_t>(s * nst + to)];
                if (c) state_cell(next, f, to) += base * c;
              }
            } else {
              state_cell(next, f, 0) += base * tb.whole[static_cast<size_t>(f)][static_cast<size_t>(l)];
            }
          }
        }
    }

  for (Int n = 1; n <= n_max; ++n) {
    BigCount total = 0;
    for (int f = 0; f < nf; ++f) {
      if (use_delta) {
        Int s = q > 0 ? target : target + offset;
        if (s >= 0 && s < nst)
          total += dp[static_cast<size_t>(n)][static_cast<size_t>(f) * static_cast<size_t>(nst) + static_cast<size_t>(s)];
      } else if (ct) {
        total += dp[static_cast<size_t>(n)][static_cast<size_t>(f) * static_cast<size_t>(nst) + static_cast<size_t>(accept_from)];
      } else {
        total += dp[static_cast<size_t>(n)][static_cast<size_t>(f) * static_cast<size_t>(nst)];
      }
    }
    counts[static_cast<size_t>(n)] = total;
  }
  return counts;
}

// |A(center, n, delta) ∩ pred| via the DP.
inline BigCount count_annulus_constrained(const Space& sp, const AnnulusSpec& spec,
                                          const Predicate& pred) {
  auto counts = sphere_counts_constrained(sp, pred, spec.n + spec.delta, spec.center, Word{});
  BigCount total = 0;
  for (Int n = std::max<Int>(0, spec.n - spec.delta); n <= spec.n + spec.delta; ++n)
    total += counts[static_cast<size_t>(n)];
  return total;
}

// Independent slow path: enumerate the annulus and test membership.
inline BigCount streaming_count_constrained(const Space& sp, const AnnulusSpec& spec,
                                            const Predicate& pred,
                                            Int cap = kDefaultEnumCap) {
  BigCount total = 0;
  enumerate_annulus(
      sp, spec,
      [&](const Word& g, Int) {
        if (member(sp, pred, g)) ++total;
      },
      cap);
  return total;
}

}  // namespace cayley
