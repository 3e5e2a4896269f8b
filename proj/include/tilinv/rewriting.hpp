#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tilinv/balanced.hpp"
#include "tilinv/substitution.hpp"

namespace tilinv {

// A marking of the fixed tiling at one cut: inside a letter's image (the
// letter is split) or at the shared vertex of an adjacent letter pair.
struct CutSpec {
  enum class Kind { Interior, Vertex };
  Kind kind = Kind::Interior;
  Letter a = -1;       // Interior: the split letter; Vertex: the left letter
  Letter b = -1;       // Vertex: the right letter
  int occurrence = 0;  // Interior: 1-based occurrence index in sigma^m(a)
  int power = 1;

  std::string str(const Alphabet& al) const;
};

std::vector<CutSpec> enumerate_cuts(const Substitution& sigma, int m = 1);

struct NotCuttable : std::runtime_error {
  Word offending;  // factor violating the cut-boundary condition
  NotCuttable(const std::string& what, Word w)
      : std::runtime_error(what), offending(std::move(w)) {}
};

struct RewritingResult {
  Substitution sigma_tilde;
  // Block spelling: new letter -> word over the rewritten-from alphabet
  // (the split alphabet in the interior case).
  std::vector<Word> rho;
  Substitution source;  // the substitution that was block-recoded
  CutSpec cut;
  bool split = false;  // interior case: source is over the split alphabet
  Letter a1 = -1;      // split halves of cut.a when split
  Letter a2 = -1;
  // Source letters mapped back to the pre-split alphabet (a1, a2 -> a).
  std::vector<Letter> to_original;

  Word rho_word(const Word& w) const;  // concatenated spelling
};

// Block recoding: cut points are the (stop, start) letter adjacencies; the
// new letters are the words between consecutive cut points. Verifies that the
// substitution maps cut points to cut points and that the language admits a
// cut at all.
RewritingResult rewrite_with_rules(const Substitution& sigma,
                                   const std::vector<Letter>& start,
                                   const std::vector<Letter>& stop);

RewritingResult one_cut_rewrite(const Substitution& sigma, const CutSpec& cut);

// An essential geometrically balanced pair of the rewriting together with its
// associated pair over the original alphabet.
struct BridgedPair {
  BalancedPair gbp;         // over sigma_tilde's alphabet
  BalancedPair associated;  // over sigma's alphabet; balanced for sigma
  bool balanced = false;    // whether gbp is (combinatorially) balanced
};

// Essential set under the geometric balance predicate, mapped through rho
// (with interior-case unsplitting) to pairs over the original alphabet; each
// association is verified balanced.
std::vector<BridgedPair> egbp_bridge(const RewritingResult& rw,
                                     const Substitution& sigma,
                                     int max_len = 12);

// Essential geometrically balanced pairs of sigma (upper/lower lengths may
// differ); greatest fixed point on the bounded universe, like essential_set.
std::vector<BalancedPair> essential_gbp(const Substitution& sigma,
                                        int max_len = 12);

}  // namespace tilinv
