#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "tilinv/reduction.hpp"

using namespace tilinv;

namespace {

std::set<BalancedPair> expected_psi_pairs(const Alphabet& a) {
  std::set<BalancedPair> s;
  for (auto [u, v] : {std::pair<const char*, const char*>{"1", "1"},
                      {"2", "2"},
                      {"21", "12"},
                      {"211", "112"},
                      {"21211", "11212"}}) {
    s.insert(BP(a, u, v));
    s.insert(BP(a, v, u));
  }
  return s;
}

}  // namespace

TEST_CASE("reduction machine closes on the two-seed substitution") {
  Substitution psi = fixture("proximal-b");
  ReductionGraph g = build_reduction_graph(psi, 2);
  CHECK(!g.overflow);
  CHECK(g.states.size() == 15);
  CHECK(discrepancy_bound(g) == 2);
  CHECK(g.emitted == expected_psi_pairs(psi.alphabet()));
}

TEST_CASE("universe certification and counterexample detection") {
  Substitution psi = fixture("proximal-b");
  const Alphabet& a = psi.alphabet();
  std::vector<BalancedPair> cand = parse_pairs_json(
      read_file(std::string(FIXTURES_DIR) + "/proximal-b-pairs.json"), a);
  REQUIRE(cand.size() == 8);
  CHECK(cand.back() == BP(a, "11212", "21211"));

  UniverseResult full = verify_universe(psi, cand, 2);
  CHECK(full.kind == UniverseVerdict::Verified);

  std::vector<BalancedPair> missing(cand.begin(), cand.end() - 2);
  UniverseResult partial = verify_universe(psi, missing, 2);
  REQUIRE(partial.kind == UniverseVerdict::Counterexample);
  CHECK(canonical(partial.counterexample) ==
        canonical(BP(a, "21211", "11212")));
}

TEST_CASE("constant-length machine stays tiny") {
  Substitution mt = fixture("thue-morse");
  const Alphabet& a = mt.alphabet();
  ReductionGraph g = build_reduction_graph(mt, 1);
  CHECK(!g.overflow);
  CHECK(g.states.size() == 3);
  CHECK(discrepancy_bound(g) == 1);
  std::set<BalancedPair> want{BP(a, "1", "1"), BP(a, "2", "2"),
                              BP(a, "12", "21"), BP(a, "21", "12")};
  CHECK(g.emitted == want);
}

TEST_CASE("concrete traces stay inside the graph's emitted set") {
  Substitution psi = fixture("proximal-b");
  const Alphabet& a = psi.alphabet();
  ReductionGraph g = build_reduction_graph(psi, 2);
  for (auto [u, v] : {std::pair<const char*, const char*>{"21", "12"},
                      {"211", "112"},
                      {"12", "21"},
                      {"21211", "11212"}}) {
    ReductionTrace t = reduce_pair(psi, W(a, u), W(a, v));
    CHECK(t.visited.size() >= 2);
    CHECK(t.visited.front() == t.visited.back());  // balanced input returns
    for (const auto& p : t.emitted) CHECK(g.emitted.count(p) == 1);
  }
  CHECK_THROWS_AS(reduce_pair(psi, W(a, "21"), W(a, "11")), std::domain_error);
}

TEST_CASE("dot rendering names every state") {
  Substitution mt = fixture("thue-morse");
  ReductionGraph g = build_reduction_graph(mt, 1);
  std::string dot = to_dot(g, mt.alphabet());
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}
