#pragma once

#include <string>

#include "tilinv/balanced.hpp"
#include "tilinv/io.hpp"

inline tilinv::Substitution fixture(const std::string& stem) {
  return tilinv::parse_substitution_json(
      tilinv::read_file(std::string(FIXTURES_DIR) + "/" + stem + ".json"));
}

inline tilinv::Word W(const tilinv::Alphabet& a, const std::string& s) {
  tilinv::Word w;
  for (char c : s) w.push_back(a.index(std::string(1, c)));
  return w;
}

inline tilinv::BalancedPair BP(const tilinv::Alphabet& a, const std::string& u,
                               const std::string& v) {
  return {W(a, u), W(a, v)};
}

inline std::string bpw_str(const tilinv::Alphabet& a, const tilinv::BPWord& w) {
  std::string s;
  for (const auto& p : w) s += tilinv::pair_str(a, p);
  return s;
}
