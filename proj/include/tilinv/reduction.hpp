#pragma once

#include <set>
#include <string>
#include <vector>

#include "tilinv/balanced.hpp"
#include "tilinv/substitution.hpp"

namespace tilinv {

// A state of the image-reduction machine: the letter-count discrepancy of the
// input prefix read so far, plus the maximally reduced remainder pair of the
// output (no proper prefix of the remainders is balanced).
struct AutomatonState {
  std::vector<long long> discrepancy;
  Word rem_u;
  Word rem_v;

  bool operator==(const AutomatonState& o) const {
    return discrepancy == o.discrepancy && rem_u == o.rem_u && rem_v == o.rem_v;
  }
  bool operator<(const AutomatonState& o) const {
    if (discrepancy != o.discrepancy) return discrepancy < o.discrepancy;
    if (rem_u != o.rem_u) return rem_u < o.rem_u;
    return rem_v < o.rem_v;
  }
};

struct ReductionTransition {
  Letter a1 = -1;  // upper input letter
  Letter a2 = -1;  // lower input letter
  int target = -1;
  std::vector<BalancedPair> emitted;  // irreducible factors completed here
};

struct ReductionGraph {
  std::vector<AutomatonState> states;  // states[0] is the start state
  std::vector<std::vector<ReductionTransition>> out;
  // Factors emitted on transitions that lie on a start-to-start path, i.e.
  // inside the reduction of some genuinely balanced input pair.
  std::set<BalancedPair> emitted;
  std::vector<char> can_return;  // state can reach the start state again
  int max_discrepancy = 0;
  bool overflow = false;  // state cap hit; emitted set is incomplete
};

// Explore every reduction path: a transition consumes an input letter pair,
// appends the letter images to the remainders, and greedily strips complete
// balanced prefixes. Paths are pruned when the input discrepancy 1-norm
// exceeds 2*max_discrepancy or a remainder leaves the factor language.
ReductionGraph build_reduction_graph(const Substitution& sigma,
                                     int max_discrepancy,
                                     int max_states = 50000);

enum class UniverseVerdict { Verified, Counterexample, Unknown };

struct UniverseResult {
  UniverseVerdict kind = UniverseVerdict::Unknown;
  BalancedPair counterexample;  // emitted factor outside the candidates
  ReductionGraph graph;
};

// Certifies that reducing the image of any balanced pair over the language
// only ever produces factors from the candidate set.
UniverseResult verify_universe(const Substitution& sigma,
                               const std::vector<BalancedPair>& candidates,
                               int max_discrepancy, int max_states = 50000);

// Largest input discrepancy (1-norm over 2) seen across reachable states.
int discrepancy_bound(const ReductionGraph& graph);

// Concrete reduction of (sigma(u) / sigma(v)) for one balanced input pair;
// used to cross-check the graph.
struct ReductionTrace {
  std::vector<AutomatonState> visited;  // including start and final state
  std::vector<BalancedPair> emitted;
};

ReductionTrace reduce_pair(const Substitution& sigma, const Word& u,
                           const Word& v);

std::string to_dot(const ReductionGraph& graph, const Alphabet& a);

}  // namespace tilinv
