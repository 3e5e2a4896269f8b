#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tilinv/substitution.hpp"

namespace tilinv {

// First/last-letter maps with their eventual ranges and idempotency periods.
struct BoundaryMaps {
  std::vector<Letter> phi_plus;   // first letter of each image
  std::vector<Letter> phi_minus;  // last letter of each image
  std::vector<Letter> s_plus;     // eventual range of phi_plus
  std::vector<Letter> s_minus;    // eventual range of phi_minus
  int m_plus = 1;   // least power making phi_plus the identity on s_plus
  int m_minus = 1;  // same for the minus side
};

BoundaryMaps boundary_maps(const Substitution& sigma);

// P_phi: pairs (a in S-, b in S+) with ab allowed; the seeds of periodic
// bi-infinite words.
struct PairTable {
  int power = 1;  // the substitution power m that fixes every seed
  std::vector<std::pair<Letter, Letter>> pairs;
};

// m == 0 selects lcm(m_plus, m_minus) automatically.
PairTable pair_table(const Substitution& sigma, int m = 0);

struct CycleVerdict {
  bool no_cycles = true;
  // Alternating witness, closed (first pair repeated at the end).
  std::vector<std::pair<Letter, Letter>> witness;
};

// NoCycles iff the bipartite sharing graph of the pair table is a forest.
CycleVerdict no_cycle_check(const PairTable& table);

// Connected components of the sharing graph, as pair sets.
std::vector<std::vector<std::pair<Letter, Letter>>> equivalence_classes(
    const PairTable& table);

struct PeriodicPoint {
  enum class Kind { Vertex, Interior };
  Kind kind = Kind::Vertex;
  Letter a = -1;        // Vertex: left letter; Interior: the split letter
  Letter b = -1;        // Vertex only: right letter
  int occurrence = 0;   // Interior only: 1-based occurrence index in sigma^m(a)
  int period = 1;       // the power m fixing this point
};

std::vector<PeriodicPoint> periodic_points(const Substitution& sigma,
                                           int m = 0);

// Bounded materialization of a periodic bi-infinite word. left is stored
// with index 0 adjacent to the origin (left[0] = symbol at position -1).
struct TwoSidedWord {
  std::vector<Letter> left;
  std::vector<Letter> right;
};

TwoSidedWord expand_periodic(const Substitution& sigma,
                             const PeriodicPoint& seed, int depth);

struct AsymptoticGroup {
  std::vector<int> members;  // indices into the periodic point list
  // Alignment against members[0]: shared-ray symbol t of members[0] matches
  // symbol t + shifts[k] of members[k], for all t >= divs[k].
  std::vector<long long> shifts;
  std::vector<long long> divs;
};

struct AsymptoticStructure {
  std::vector<PeriodicPoint> points;   // deduplicated periodic points
  std::vector<AsymptoticGroup> forward_groups;   // shared right rays
  std::vector<AsymptoticGroup> backward_groups;  // shared left rays
  int depth = 0;
  bool heuristic = false;  // set when a comparison sat at the margin
};

AsymptoticStructure asymptotic_pairs(const Substitution& sigma, int m = 0,
                                     int depth = 256);

inline int backward_member_count(const AsymptoticStructure& s) {
  int n = 0;
  for (const auto& g : s.backward_groups) n += static_cast<int>(g.members.size());
  return n;
}
inline int forward_member_count(const AsymptoticStructure& s) {
  int n = 0;
  for (const auto& g : s.forward_groups) n += static_cast<int>(g.members.size());
  return n;
}

}  // namespace tilinv
