#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tilinv/balanced.hpp"
#include "tilinv/report.hpp"
#include "tilinv/substitution.hpp"

namespace tilinv {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"name": "...", "letters": ["1","2"], "rules": {"1": ["1","1","1","2","2"],
// "2": ["1","2"]}}; unknown keys are rejected.
Substitution parse_substitution_json(const std::string& text);
std::string substitution_to_json(const Substitution& sigma);

// [{"u": ["2","1","1"], "v": ["1","1","2"], "dual": false}, ...]
std::vector<BalancedPair> parse_pairs_json(const std::string& text,
                                           const Alphabet& a);
std::string pairs_to_json(const std::vector<BalancedPair>& pairs,
                          const Alphabet& a);

std::string read_file(const std::string& path);

std::string render_report_text(const AnalysisReport& r,
                               const Substitution& sigma);
std::string render_report_json(const AnalysisReport& r,
                               const Substitution& sigma);
std::string render_compare_text(const CompareResult& c);
std::string render_compare_json(const CompareResult& c);

}  // namespace tilinv
