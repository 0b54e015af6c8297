#pragma once
// Exact word-metric engine for the model families:
//   free groups F_k, free products of free-abelian factors, lattices Z^m.
// A group element is kept in syllable normal form (alternating factors,
// no zero syllables); its word length w.r.t. the standard symmetric
// generating set is the sum of the L1 norms of the syllables.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cayley {

using Int = long long;

struct SpaceError : std::runtime_error {
  explicit SpaceError(const std::string& m) : std::runtime_error(m) {}
};
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& m) : std::runtime_error(m) {}
};
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& m) : std::runtime_error(m) {}
};

// Family tag kept for reporting; the syllable engine is shared.
enum class Family { Free, Lattice, FreeProduct };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Free: return "free";
    case Family::Lattice: return "lattice";
    default: return "free_product";
  }
}

class Space {
 public:
  Family family = Family::Free;
  std::vector<int> ranks;            // rank of each free-abelian factor
  std::vector<std::string> labels;   // one label per (factor, coordinate), flattened
  std::vector<int> gen_offset;       // first flat generator index of each factor

  static Space free_group(int k) {
    if (k < 2) throw SpaceError("free group rank must be >= 2");
    Space s;
    s.family = Family::Free;
    s.ranks.assign(static_cast<size_t>(k), 1);
    s.labels = default_labels(k);
    s.finish();
    return s;
  }

  static Space lattice(int m) {
    if (m < 1) throw SpaceError("lattice rank must be >= 1");
    Space s;
    s.family = Family::Lattice;
    s.ranks = {m};
    s.labels = default_labels(m);
    s.finish();
    return s;
  }

  static Space free_product(std::vector<int> factor_ranks,
                            std::vector<std::string> labs = {}) {
    if (factor_ranks.size() < 2)
      throw SpaceError("free product needs at least two factors");
    Space s;
    s.family = Family::FreeProduct;
    s.ranks = std::move(factor_ranks);
    int total = 0;
    for (int r : s.ranks) {
      if (r < 1) throw SpaceError("factor rank must be >= 1");
      total += r;
    }
    s.labels = labs.empty() ? default_labels(total) : std::move(labs);
    s.finish();
    return s;
  }

  int num_factors() const { return static_cast<int>(ranks.size()); }
  int num_generators() const { return static_cast<int>(labels.size()); }
  int factor_of_gen(int g) const { return gen_factor_[static_cast<size_t>(g)]; }
  int coord_of_gen(int g) const { return gen_coord_[static_cast<size_t>(g)]; }
  int gen_index(int factor, int coord) const { return gen_offset[static_cast<size_t>(factor)] + coord; }

  bool is_tree() const {
    for (int r : ranks)
      if (r != 1) return false;
    return ranks.size() >= 2;
  }

 private:
  std::vector<int> gen_factor_;
  std::vector<int> gen_coord_;

  static std::vector<std::string> default_labels(int n) {
    static const char* base = "abcdefghijklmnopqrstuvwxyz";
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) {
      if (i < 26) out.emplace_back(1, base[i]);
      else out.push_back("x" + std::to_string(i));
    }
    return out;
  }

  void finish() {
    int total = 0;
    gen_offset.clear();
    for (int r : ranks) {
      gen_offset.push_back(total);
      total += r;
    }
    if (static_cast<int>(labels.size()) != total)
      throw SpaceError("label count does not match total rank");
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].empty()) throw SpaceError("empty generator label");
      for (size_t j = 0; j < i; ++j)
        if (labels[i] == labels[j]) throw SpaceError("duplicate generator label " + labels[i]);
    }
    gen_factor_.clear();
    gen_coord_.clear();
    for (int f = 0; f < num_factors(); ++f)
      for (int c = 0; c < ranks[static_cast<size_t>(f)]; ++c) {
        gen_factor_.push_back(f);
        gen_coord_.push_back(c);
      }
  }
};

struct Syllable {
  int factor = 0;
  std::vector<Int> v;  // exponent vector in Z^rank, not all zero

  friend bool operator==(const Syllable& a, const Syllable& b) {
    return a.factor == b.factor && a.v == b.v;
  }
};

inline Int l1(const std::vector<Int>& v) {
  Int s = 0;
  for (Int x : v) s += x < 0 ? -x : x;
  return s;
}

struct Word {
  std::vector<Syllable> syl;

  bool is_identity() const { return syl.empty(); }

  friend bool operator==(const Word& a, const Word& b) { return a.syl == b.syl; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
};

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (const auto& s : w.syl) {
      h ^= static_cast<size_t>(s.factor) + 0x9e3779b9u + (h << 6) + (h >> 2);
      for (Int x : s.v)
        h ^= static_cast<size_t>(x * 0x100000001b3ull + 0x2545F4914F6CDD1Dull) + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline Int length(const Word& w) {
  Int s = 0;
  for (const auto& y : w.syl) s += l1(y.v);
  return s;
}

inline Word identity() { return Word{}; }

// Append one syllable, merging with the tail and cascading cancellations.
inline void append_syllable(Word& w, int factor, const std::vector<Int>& v) {
  if (l1(v) == 0) return;
  if (!w.syl.empty() && w.syl.back().factor == factor) {
    auto& tail = w.syl.back().v;
    std::vector<Int> sum(tail.size());
    for (size_t i = 0; i < tail.size(); ++i) sum[i] = tail[i] + v[i];
    if (l1(sum) == 0) {
      w.syl.pop_back();
    } else {
      tail = std::move(sum);
    }
    return;
  }
  w.syl.push_back(Syllable{factor, v});
}

inline Word mul(const Word& a, const Word& b) {
  Word out = a;
  for (const auto& s : b.syl) append_syllable(out, s.factor, s.v);
  return out;
}

inline Word inverse(const Word& a) {
  Word out;
  out.syl.reserve(a.syl.size());
  for (auto it = a.syl.rbegin(); it != a.syl.rend(); ++it) {
    Syllable s = *it;
    for (auto& x : s.v) x = -x;
    out.syl.push_back(std::move(s));
  }
  return out;
}

inline Int distance(const Word& x, const Word& y) {
  if (x.is_identity()) return length(y);
  if (y.is_identity()) return length(x);
  return length(mul(inverse(x), y));
}

inline Word power(const Word& f, Int n) {
  Word out;
  Word base = n < 0 ? inverse(f) : f;
  Int k = n < 0 ? -n : n;
  for (Int i = 0; i < k; ++i) out = mul(out, base);
  return out;
}

inline Word conjugate(const Word& g, const Word& f) {  // g f g^-1
  return mul(mul(g, f), inverse(g));
}

inline void validate(const Space& sp, const Word& w) {
  int prev = -1;
  for (const auto& s : w.syl) {
    if (s.factor < 0 || s.factor >= sp.num_factors())
      throw SpaceError("syllable factor out of range");
    if (static_cast<int>(s.v.size()) != sp.ranks[static_cast<size_t>(s.factor)])
      throw SpaceError("syllable vector rank mismatch");
    if (l1(s.v) == 0) throw SpaceError("zero syllable");
    if (s.factor == prev) throw SpaceError("adjacent syllables in the same factor");
    prev = s.factor;
  }
}

// ---- serialization -------------------------------------------------------
// Words print as generator tokens with ^ powers: "a^2 t b^-1".  Identity
// prints as "e".  Parsing accepts arbitrary (even unreduced) products and
// normalizes; tokens may also be juxtaposed against whitespace only.

inline Word gen_word(const Space& sp, int gen, Int e) {
  Word w;
  if (e == 0) return w;
  int f = sp.factor_of_gen(gen);
  std::vector<Int> v(static_cast<size_t>(sp.ranks[static_cast<size_t>(f)]), 0);
  v[static_cast<size_t>(sp.coord_of_gen(gen))] = e;
  w.syl.push_back(Syllable{f, std::move(v)});
  return w;
}

inline std::string format_word(const Space& sp, const Word& w) {
  if (w.is_identity()) return "e";
  std::ostringstream os;
  bool first = true;
  for (const auto& s : w.syl) {
    for (int c = 0; c < sp.ranks[static_cast<size_t>(s.factor)]; ++c) {
      Int e = s.v[static_cast<size_t>(c)];
      if (e == 0) continue;
      if (!first) os << ' ';
      first = false;
      os << sp.labels[static_cast<size_t>(sp.gen_index(s.factor, c))];
      if (e != 1) os << '^' << e;
    }
  }
  return os.str();
}

inline Word parse_word(const Space& sp, const std::string& text) {
  Word out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "e" || tok == "1") continue;
    std::string lab = tok;
    Int e = 1;
    auto caret = tok.find('^');
    if (caret != std::string::npos) {
      lab = tok.substr(0, caret);
      std::string es = tok.substr(caret + 1);
      try {
        size_t used = 0;
        e = std::stoll(es, &used);
        if (used != es.size()) throw std::invalid_argument(es);
      } catch (const std::exception&) {
        throw SpaceError("bad exponent in token '" + tok + "'");
      }
    }
    int gen = -1;
    for (int g = 0; g < sp.num_generators(); ++g)
      if (sp.labels[static_cast<size_t>(g)] == lab) { gen = g; break; }
    if (gen < 0) throw SpaceError("unknown generator label '" + lab + "'");
    Word p = gen_word(sp, gen, e);
    for (const auto& s : p.syl) append_syllable(out, s.factor, s.v);
  }
  return out;
}

// Deterministic total order on words: by length, then serialized form.
inline bool word_less(const Space& sp, const Word& a, const Word& b) {
  Int la = length(a), lb = length(b);
  if (la != lb) return la < lb;
  return format_word(sp, a) < format_word(sp, b);
}

}  // namespace cayley
