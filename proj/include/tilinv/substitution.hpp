#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tilinv/word.hpp"

namespace tilinv {

// A substitution: a total map letter -> non-empty word, extended to words by
// concatenation.
class Substitution {
 public:
  Substitution() = default;
  Substitution(Alphabet alphabet, std::vector<Word> rules,
               std::string name = "");

  const Alphabet& alphabet() const { return alphabet_; }
  const std::string& name() const { return name_; }
  int letters() const { return alphabet_.size(); }

  const Word& image(Letter a) const;

  // sigma^n(w); apply(w, 0) == w.
  Word apply(const Word& w, int n = 1) const;

  // Column j counts the letters occurring in image(j).
  std::vector<std::vector<long long>> abelianization_counts() const;

  // First and last letters of image(a).
  Letter first_letter(Letter a) const { return image(a).front(); }
  Letter last_letter(Letter a) const { return image(a).back(); }

  Substitution power(int n) const;

  // Composition (this after other): letter -> this(other(letter)).
  Substitution compose(const Substitution& other) const;

 private:
  Alphabet alphabet_;
  std::vector<Word> rules_;
  std::string name_;
};

// All allowed words of length <= n, computed as the stable factor closure of
// the single letters under substitution. Works for non-primitive inputs; the
// factor set of every letter's iterated images is collected.
std::set<Word> allowed_words(const Substitution& sigma, int n,
                             std::size_t cap = 1000000);

enum class Properness { Proper, NotProper, Unknown };

struct PropernessVerdict {
  Properness kind = Properness::Unknown;
  Letter begin = -1;  // common first letter b when Proper
  Letter end = -1;    // common last letter e when Proper
  int power = 0;      // witnessing power k
};

// Proper iff some power starts every image with one letter and ends every
// image with one letter, both fixed under further iteration. NotProper is
// certified by a nontrivial cycle of the first/last-letter maps on their
// eventual ranges.
PropernessVerdict is_proper(const Substitution& sigma, int max_power = 64);

}  // namespace tilinv
