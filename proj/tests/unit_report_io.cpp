#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "tilinv/matrix.hpp"
#include "tilinv/report.hpp"

using namespace tilinv;

namespace {

bool has_reason(const CompareResult& c, const std::string& s) {
  return std::find(c.reasons.begin(), c.reasons.end(), s) != c.reasons.end();
}

}  // namespace

TEST_CASE("substitution json round trip and validation") {
  Substitution oc = fixture("onecut");
  Substitution back = parse_substitution_json(substitution_to_json(oc));
  CHECK(back.alphabet() == oc.alphabet());
  CHECK(back.name() == oc.name());
  for (Letter x = 0; x < oc.letters(); ++x)
    CHECK(back.image(x) == oc.image(x));

  CHECK_THROWS_AS(parse_substitution_json("[]"), ParseError);
  CHECK_THROWS_AS(parse_substitution_json(
                      R"({"letters":["1"],"rules":{"1":["1"]},"extra":1})"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_substitution_json(R"({"letters":["1","2"],"rules":{"1":["1"]}})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_substitution_json(
          R"({"letters":["1"],"rules":{"1":["1","9"]}})"),
      ParseError);
  CHECK_THROWS_AS(
      parse_substitution_json(R"({"letters":["1"],"rules":{"1":[]}})"),
      ParseError);
}

TEST_CASE("pair list json round trip") {
  Substitution oc = fixture("onecut");
  const Alphabet& a = oc.alphabet();
  std::vector<BalancedPair> pairs{BP(a, "12", "21"), BP(a, "211", "112")};
  std::vector<BalancedPair> back = parse_pairs_json(pairs_to_json(pairs, a), a);
  CHECK(back == pairs);
  CHECK_THROWS_AS(parse_pairs_json("{}", a), ParseError);
  CHECK_THROWS_AS(parse_pairs_json(R"([{"u":["1"]}])", a), ParseError);
}

TEST_CASE("full report on the nineteen-letter sibling") {
  Substitution psi = fixture("proximal-b");
  AnalysisReport r = invariant_report(psi);
  CHECK(r.spectral.pisot_class == PisotClass::StrongPisot);
  CHECK(r.cycles.no_cycles);
  CHECK(r.gcc_ok);
  CHECK(r.gcc.verdict == Verdict::Yes);
  CHECK(r.asym_ok);
  CHECK(forward_member_count(r.asym) == 2);
  CHECK(backward_member_count(r.asym) == 2);
  CHECK(r.essential_ok);
  CHECK(r.essential.nontrivial().size() == 4);
  CHECK(r.essential.contains_abp_closure);
  CHECK(r.ebp_ok);
  CHECK(r.ebp_beta == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(r.ebp_asym_ok);
  CHECK(r.ebp_backward == 3);
  CHECK(r.ebp_forward == 3);
  CHECK(r.phi_a_ok);
  CHECK(poly_str(r.phi_a_poly) == "x^2 - 8x + 7");
  CHECK(!r.bounded());

  std::string text = render_report_text(r, psi);
  CHECK(text.find("proximal-b") != std::string::npos);
  CHECK(text.find("backward-asymptotic 3") != std::string::npos);
  std::string json = render_report_json(r, psi);
  CHECK(json.find("\"no_cycles\": true") != std::string::npos);
  CHECK(json.find("\"exact\": true") != std::string::npos);
}

TEST_CASE("full report on its proximally richer sibling") {
  AnalysisReport r = invariant_report(fixture("proximal-a"));
  CHECK(r.essential.nontrivial().size() == 6);
  CHECK(r.ebp_backward == 5);
  CHECK(r.ebp_forward == 3);
  CHECK(r.ebp_beta == doctest::Approx(9.0).epsilon(1e-9));
  CHECK(r.ebp_lambda == doctest::Approx(13.9282032).epsilon(1e-6));
  CHECK(r.phi_a_letters == 4);
  CHECK(r.phi_a_rank == 2);
  CHECK(poly_str(r.phi_a_poly) == "x^2 - 10x + 9");
}

TEST_CASE("comparison verdicts and reasons") {
  RunConfig cfg;
  CompareResult c1 = compare(fixture("proximal-a"), fixture("proximal-b"), cfg);
  CHECK(c1.distinguished);
  CHECK(has_reason(c1, "backward-asymptotic EBP counts 5 vs 3"));

  CompareResult c2 = compare(fixture("tower-a"), fixture("tower-b"), cfg);
  CHECK(c2.distinguished);
  CHECK(has_reason(c2, "phi_A letters 2 vs 10"));
  CHECK(has_reason(c2, "phi_A eventual rank 2 vs 5"));
  CHECK(has_reason(c2,
                   "phi_A restricted char poly x^2 - 4 vs "
                   "x^5 - 2x^4 - 5x^3 + 8x^2 + 2x - 4"));

  CompareResult self = compare(fixture("proximal-a"), fixture("proximal-a"),
                               cfg);
  CHECK(!self.distinguished);
  CHECK(self.reasons.empty());
  CHECK(!self.compared.empty());

  std::string text = render_compare_text(c1);
  CHECK(text.find("DISTINGUISHED") != std::string::npos);
  std::string json = render_compare_json(self);
  CHECK(json.find("INCONCLUSIVE") != std::string::npos);
}
