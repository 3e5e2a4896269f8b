#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "tilinv/periodic.hpp"

using namespace tilinv;

TEST_CASE("boundary maps and their periods") {
  BoundaryMaps b = boundary_maps(fixture("fibonacci"));
  CHECK(b.phi_plus == std::vector<Letter>{0, 0});
  CHECK(b.phi_minus == std::vector<Letter>{1, 0});
  CHECK(b.m_plus == 1);
  CHECK(b.m_minus == 2);  // last-letter map swaps 1 and 2
  CHECK(b.s_plus == std::vector<Letter>{0});

  BoundaryMaps oc = boundary_maps(fixture("onecut"));
  CHECK(oc.m_plus == 1);
  CHECK(oc.m_minus == 1);
  CHECK(oc.s_plus == std::vector<Letter>{0});
  CHECK(oc.s_minus == std::vector<Letter>{1});
}

TEST_CASE("pair table seeds") {
  PairTable t = pair_table(fixture("fibonacci"));
  CHECK(t.power == 2);
  std::set<std::pair<Letter, Letter>> got(t.pairs.begin(), t.pairs.end());
  std::set<std::pair<Letter, Letter>> want{{0, 0}, {1, 0}};
  CHECK(got == want);

  PairTable oc = pair_table(fixture("onecut"));
  CHECK(oc.power == 1);
  CHECK(oc.pairs.size() == 1);  // proper: single seed (2,1)
  CHECK(oc.pairs[0] == std::pair<Letter, Letter>{1, 0});
}

TEST_CASE("cycle detection in the sharing graph") {
  CycleVerdict fib = no_cycle_check(pair_table(fixture("fibonacci")));
  CHECK(fib.no_cycles);

  PairTable mt_table = pair_table(fixture("thue-morse"));
  CHECK(mt_table.pairs.size() == 4);  // full product: every gram allowed
  CycleVerdict mt = no_cycle_check(mt_table);
  CHECK(!mt.no_cycles);
  REQUIRE(mt.witness.size() == 5);  // closed alternating cycle of length 4
  CHECK(mt.witness.front() == mt.witness.back());

  CHECK(equivalence_classes(pair_table(fixture("fibonacci"))).size() == 1);
  CHECK(equivalence_classes(mt_table).size() == 1);
}

TEST_CASE("periodic point expansion") {
  Substitution fib = fixture("fibonacci");
  std::vector<PeriodicPoint> pts = periodic_points(fib);
  CHECK(!pts.empty());
  for (const auto& p : pts) {
    TwoSidedWord w = expand_periodic(fib, p, 32);
    REQUIRE(w.right.size() >= 32);
    REQUIRE(w.left.size() >= 32);
    // both rays are legal fixed-word rays: no 22 factor anywhere
    for (std::size_t i = 0; i + 1 < w.right.size(); ++i)
      CHECK(!(w.right[i] == 1 && w.right[i + 1] == 1));
    // left[0] is the symbol at position -1; vertex seeds expand to (a . b)
    if (p.kind == PeriodicPoint::Kind::Vertex) {
      CHECK(w.left[0] == p.a);
      CHECK(w.right[0] == p.b);
    }
  }
}

TEST_CASE("asymptotic ray structure of small fixtures") {
  AsymptoticStructure fib = asymptotic_pairs(fixture("fibonacci"));
  CHECK(forward_member_count(fib) == 2);
  CHECK(backward_member_count(fib) == 2);
  CHECK(!fib.heuristic);

  AsymptoticStructure mt = asymptotic_pairs(fixture("thue-morse"));
  CHECK(forward_member_count(mt) == 4);
  CHECK(backward_member_count(mt) == 4);
  CHECK(mt.forward_groups.size() == 2);
  CHECK(mt.backward_groups.size() == 2);

  // needs automatic power escalation: no ray pair is fixed at power 1
  AsymptoticStructure ta = asymptotic_pairs(fixture("tower-a"));
  CHECK(forward_member_count(ta) == 2);
  CHECK(backward_member_count(ta) == 2);
}

TEST_CASE("asymptotic rays of the two-seed proper substitutions") {
  for (const char* stem : {"proximal-a", "proximal-b", "tower-b", "onecut"}) {
    AsymptoticStructure s = asymptotic_pairs(fixture(stem));
    CHECK(forward_member_count(s) == 2);
    CHECK(backward_member_count(s) == 2);
    CHECK(!s.heuristic);
  }
}

TEST_CASE("deeper scans agree with the default depth") {
  Substitution psi = fixture("proximal-b");
  AsymptoticStructure d1 = asymptotic_pairs(psi, 0, 256);
  AsymptoticStructure d2 = asymptotic_pairs(psi, 0, 1024);
  CHECK(forward_member_count(d1) == forward_member_count(d2));
  CHECK(backward_member_count(d1) == backward_member_count(d2));
  REQUIRE(d1.backward_groups.size() == d2.backward_groups.size());
  for (std::size_t g = 0; g < d1.backward_groups.size(); ++g)
    CHECK(d1.backward_groups[g].shifts == d2.backward_groups[g].shifts);
}
