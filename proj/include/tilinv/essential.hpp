#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tilinv/balanced.hpp"
#include "tilinv/matrix.hpp"
#include "tilinv/periodic.hpp"
#include "tilinv/substitution.hpp"

namespace tilinv {

// Universe of candidate letters: all irreducible balanced pairs over allowed
// words of length <= max_len, dual-closed, trivial pairs included.
std::vector<BalancedPair> enumerate_irreducible_pairs(const Substitution& sigma,
                                                      int max_len,
                                                      std::size_t cap = 2000000);

struct EssentialSet {
  std::vector<BalancedPair> pairs;  // dual-closed, trivial pairs first
  bool forward_closed = false;      // images factor inside the set
  bool backward_covered = false;    // every member has an in-set predecessor
  bool contains_abp_closure = false;  // filled in by the report pipeline
  int max_len_used = 0;
  bool overflow = false;

  bool contains(const BalancedPair& p) const;
  std::vector<BalancedPair> nontrivial() const;
};

// Greatest fixed point of E -> {x in E : x occurs in the image of some y in
// E} on the bounded universe; max_len is raised (doubled, up to retries) when
// an image factor of a surviving pair falls outside the universe.
EssentialSet essential_set(const Substitution& sigma, int max_len = 12,
                           int max_iter = 1000);

// A substitution over an alphabet of balanced pairs, trivial letters first,
// with its block-triangular abelianization.
struct DerivedSubstitution {
  Substitution base;
  std::vector<BalancedPair> letter_pairs;  // derived letter -> pair
  int trivial_count = 0;
  IntMatrix block_a;  // trivial-by-trivial; equals the source abelianization
  IntMatrix block_b;  // trivial rows, nontrivial columns
  IntMatrix block_c;  // nontrivial-by-nontrivial
  double lambda = 0.0;  // PF eigenvalue of block_a
  double beta = 0.0;    // spectral radius of block_c

  int letter_of(const BalancedPair& p) const;  // -1 if absent
};

struct ClosureViolation : std::runtime_error {
  BalancedPair missing;
  explicit ClosureViolation(const std::string& what, BalancedPair p)
      : std::runtime_error(what), missing(std::move(p)) {}
};

// phi_BP restricted to the essential alphabet.
DerivedSubstitution build_phi_EBP(const Substitution& sigma,
                                  const EssentialSet& e);

// The restriction to bubbles of asymptotic pairs: factors collected along the
// divergence side of every asymptotic group, closed under image
// factorization. nontrivial_out receives the nontrivial derived letters.
DerivedSubstitution build_phi_ABP(const Substitution& sigma,
                                  const AsymptoticStructure& asym, int depth,
                                  std::vector<int>* nontrivial_out = nullptr);

// Trivial-forgetting reductions; throw std::domain_error when no nontrivial
// letter exists.
Substitution build_phi_A(const DerivedSubstitution& abp);
Substitution build_phi_P(const DerivedSubstitution& ebp);

}  // namespace tilinv
