#include "tilinv/substitution.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tilinv {

Substitution::Substitution(Alphabet alphabet, std::vector<Word> rules,
                           std::string name)
    : alphabet_(std::move(alphabet)),
      rules_(std::move(rules)),
      name_(std::move(name)) {
  if (static_cast<int>(rules_.size()) != alphabet_.size())
    throw std::invalid_argument("rules must cover the whole alphabet");
  for (const Word& w : rules_) {
    if (w.empty()) throw std::invalid_argument("empty substitution image");
    for (Letter a : w)
      if (a < 0 || a >= alphabet_.size())
        throw std::domain_error("image letter outside alphabet");
  }
}

const Word& Substitution::image(Letter a) const {
  if (a < 0 || a >= alphabet_.size())
    throw std::domain_error("letter outside alphabet");
  return rules_[static_cast<std::size_t>(a)];
}

Word Substitution::apply(const Word& w, int n) const {
  if (n < 0) throw std::invalid_argument("iteration count must be >= 0");
  Word cur = w;
  for (Letter a : cur)
    if (a < 0 || a >= alphabet_.size())
      throw std::domain_error("letter outside alphabet");
  for (int k = 0; k < n; ++k) {
    Word next;
    for (Letter a : cur) {
      const Word& img = image(a);
      next.insert(next.end(), img.begin(), img.end());
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<std::vector<long long>> Substitution::abelianization_counts()
    const {
  const int d = alphabet_.size();
  std::vector<std::vector<long long>> m(
      static_cast<std::size_t>(d),
      std::vector<long long>(static_cast<std::size_t>(d), 0));
  for (Letter j = 0; j < d; ++j)
    for (Letter i : image(j)) ++m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

Substitution Substitution::power(int n) const {
  if (n < 1) throw std::invalid_argument("power must be >= 1");
  std::vector<Word> rules;
  rules.reserve(static_cast<std::size_t>(alphabet_.size()));
  for (Letter a = 0; a < alphabet_.size(); ++a)
    rules.push_back(apply(Word{a}, n));
  return Substitution(alphabet_, std::move(rules), name_);
}

Substitution Substitution::compose(const Substitution& other) const {
  if (!(other.alphabet_ == alphabet_))
    throw std::invalid_argument("composition requires a shared alphabet");
  std::vector<Word> rules;
  for (Letter a = 0; a < alphabet_.size(); ++a)
    rules.push_back(apply(other.image(a), 1));
  return Substitution(alphabet_, std::move(rules));
}

namespace {

void collect_factors(const Word& w, int n, std::set<Word>& out) {
  const int len = static_cast<int>(w.size());
  for (int i = 0; i < len; ++i)
    for (int l = 1; l <= n && i + l <= len; ++l)
      out.insert(Word(w.begin() + i, w.begin() + i + l));
}

}  // namespace

std::set<Word> allowed_words(const Substitution& sigma, int n,
                             std::size_t cap) {
  if (n < 1) throw std::invalid_argument("max length must be >= 1");
  // Factor closure at length n+1: a length-<=n factor of sigma^k(i) is a
  // factor of sigma applied to a length-<=(n+1) factor of sigma^{k-1}(i).
  const int m = n + 1;
  std::set<Word> factors;
  for (Letter a = 0; a < sigma.letters(); ++a) factors.insert(Word{a});
  for (;;) {
    std::set<Word> next = factors;
    for (const Word& w : factors) collect_factors(sigma.apply(w), m, next);
    if (next.size() > cap)
      throw std::length_error("allowed-word closure exceeded cap");
    if (next == factors) break;
    factors = std::move(next);
  }
  std::set<Word> out;
  for (const Word& w : factors)
    if (static_cast<int>(w.size()) <= n) out.insert(w);
  return out;
}

namespace {

// Iterates a one-letter map; reports either the power at which it becomes a
// constant fixed map, or a certificate that it cycles nontrivially.
struct LetterMapOrbit {
  bool constant_fixed = false;
  Letter value = -1;
  int power = 0;
  bool cycles = false;
};

LetterMapOrbit iterate_letter_map(const std::vector<Letter>& f, int max_power) {
  const int d = static_cast<int>(f.size());
  std::vector<std::vector<Letter>> seen;
  std::vector<Letter> cur(f);
  for (int k = 1; k <= max_power; ++k) {
    bool constant = true;
    for (Letter a = 1; a < d; ++a)
      if (cur[static_cast<std::size_t>(a)] != cur[0]) constant = false;
    if (constant) {
      Letter v = cur[0];
      if (f[static_cast<std::size_t>(v)] == v)
        return {true, v, k, false};
      // Constant but not fixed: the single image letter still moves; the
      // orbit of that letter decides the verdict below.
    }
    if (std::find(seen.begin(), seen.end(), cur) != seen.end())
      return {false, -1, k, true};
    seen.push_back(cur);
    std::vector<Letter> next(static_cast<std::size_t>(d));
    for (Letter a = 0; a < d; ++a)
      next[static_cast<std::size_t>(a)] =
          f[static_cast<std::size_t>(cur[static_cast<std::size_t>(a)])];
    cur = std::move(next);
  }
  return {false, -1, max_power, false};
}

}  // namespace

PropernessVerdict is_proper(const Substitution& sigma, int max_power) {
  const int d = sigma.letters();
  std::vector<Letter> first(static_cast<std::size_t>(d)), last(static_cast<std::size_t>(d));
  for (Letter a = 0; a < d; ++a) {
    first[static_cast<std::size_t>(a)] = sigma.first_letter(a);
    last[static_cast<std::size_t>(a)] = sigma.last_letter(a);
  }
  LetterMapOrbit fo = iterate_letter_map(first, max_power);
  LetterMapOrbit lo = iterate_letter_map(last, max_power);
  if (fo.constant_fixed && lo.constant_fixed)
    return {Properness::Proper, fo.value, lo.value,
            std::max(fo.power, lo.power)};
  if (fo.cycles || lo.cycles) return {Properness::NotProper, -1, -1, 0};
  return {Properness::Unknown, -1, -1, max_power};
}

}  // namespace tilinv
