#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tilinv {

// A letter is an index into an Alphabet; words are plain index sequences.
using Letter = int;
using Word = std::vector<Letter>;

class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      auto [it, fresh] = index_.emplace(names_[i], static_cast<Letter>(i));
      if (!fresh)
        throw std::invalid_argument("duplicate letter name: " + names_[i]);
    }
  }

  int size() const { return static_cast<int>(names_.size()); }

  const std::string& name(Letter a) const {
    if (a < 0 || a >= size()) throw std::domain_error("letter out of range");
    return names_[static_cast<std::size_t>(a)];
  }

  Letter index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
      throw std::domain_error("unknown letter: " + name);
    return it->second;
  }

  bool has(const std::string& name) const { return index_.count(name) != 0; }

  // Adds a letter; names must stay unique.
  Letter add(const std::string& name) {
    auto [it, fresh] = index_.emplace(name, size());
    if (!fresh) throw std::invalid_argument("duplicate letter name: " + name);
    names_.push_back(name);
    return it->second;
  }

  std::string spell(const Word& w, const std::string& sep = "") const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += sep;
      out += name(w[i]);
    }
    return out;
  }

  // Parses a word given either as single characters ("1122") or as
  // separator-free multi-char names; callers with multi-char alphabets
  // should use parse_tokens instead.
  Word parse(const std::string& s) const {
    Word w;
    for (char c : s) w.push_back(index(std::string(1, c)));
    return w;
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, Letter> index_;
};

inline Word concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Letter-count vector l(w).
inline std::vector<long long> abelianization(const Word& w, int d) {
  std::vector<long long> v(static_cast<std::size_t>(d), 0);
  for (Letter a : w) {
    if (a < 0 || a >= d) throw std::domain_error("letter out of range");
    ++v[static_cast<std::size_t>(a)];
  }
  return v;
}

}  // namespace tilinv
