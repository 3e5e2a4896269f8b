#pragma once

#include <string>
#include <vector>

#include "tilinv/substitution.hpp"

namespace tilinv {

// A pair of words (u/v) with equal letter counts; the dual swaps the rows.
struct BalancedPair {
  Word u;
  Word v;

  BalancedPair() = default;
  BalancedPair(Word uu, Word vv) : u(std::move(uu)), v(std::move(vv)) {}

  bool trivial() const { return u == v; }
  BalancedPair dual() const { return BalancedPair(v, u); }

  bool operator==(const BalancedPair& o) const { return u == o.u && v == o.v; }
  bool operator<(const BalancedPair& o) const {
    if (u != o.u) return u < o.u;
    return v < o.v;
  }
};

// Canonical representative: rows ordered lexicographically, plus a flag
// recording whether the input was the swapped orientation.
BalancedPair canonical(const BalancedPair& p, bool* was_dual = nullptr);

std::string pair_str(const Alphabet& a, const BalancedPair& p);

using BPWord = std::vector<BalancedPair>;

bool is_balanced(const Word& u, const Word& v, int d);

// Exact test A^d (l(u) - l(v)) = 0 against the abelianization of sigma.
bool is_geometrically_balanced(const Substitution& sigma, const Word& u,
                               const Word& v);

// Greedy leftmost splitting at every prefix-abelianization equality; the
// factors are irreducible and concatenate back to the input.
BPWord factorize(const Word& u, const Word& v, int d);

// Geometric variant: cut at the first index pair (i, j) whose prefix
// difference lies in the generalized null space, smallest i+j first.
BPWord factorize_geometric(const Substitution& sigma, const Word& u,
                           const Word& v);

// Image of a pair under sigma, refactored into irreducible pairs.
BPWord subst_bp(const Substitution& sigma, const BalancedPair& p);

// Reachability graph of irreducible pairs under "occurs in the image of".
// Vertices are canonical representatives, so a pair and its dual share one
// vertex.
struct FactorGraph {
  std::vector<BalancedPair> vertices;
  std::vector<std::vector<int>> out;  // out[y] = factors of subst_bp(y)
  std::vector<char> trivial;
  bool overflow = false;

  int find(const BalancedPair& p) const;  // canonical lookup, -1 if absent
};

FactorGraph closure(const Substitution& sigma,
                    const std::vector<BalancedPair>& seeds, int max_pairs,
                    bool parallel = true);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

struct TerminationResult {
  Verdict verdict = Verdict::Unknown;
  // Yes: all vertices of the closure; No: vertices that never reach a
  // trivial factor.
  std::vector<BalancedPair> pairs;
  FactorGraph graph;
};

TerminationResult terminates_with_coincidence(const Substitution& sigma,
                                              const BalancedPair& p,
                                              int max_pairs,
                                              bool parallel = true);

struct GccResult {
  Verdict verdict = Verdict::Unknown;
  Letter a = -1;  // witness letters for Yes
  Letter b = -1;
  bool strong_pisot_checked = false;
  std::string note;
};

// Try every two-letter exchange pair (ab/ba) with both orders allowed,
// lexicographically; Yes on the first terminating candidate. Throws
// std::domain_error when no candidate exists.
GccResult gcc_check(const Substitution& sigma, int max_pairs,
                    bool parallel = true);

}  // namespace tilinv
