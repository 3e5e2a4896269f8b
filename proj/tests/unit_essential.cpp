#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "helpers.hpp"
#include "tilinv/essential.hpp"

using namespace tilinv;

namespace {

std::set<BalancedPair> as_set(const std::vector<BalancedPair>& v) {
  return {v.begin(), v.end()};
}

std::string image_str(const DerivedSubstitution& ds, const BalancedPair& p) {
  int k = ds.letter_of(p);
  REQUIRE(k >= 0);
  return ds.base.alphabet().spell(ds.base.image(static_cast<Letter>(k)), " ");
}

}  // namespace

TEST_CASE("persistent pairs of the five-letter-image substitution") {
  Substitution oc = fixture("onecut");
  const Alphabet& a = oc.alphabet();
  EssentialSet e = essential_set(oc);
  CHECK(e.forward_closed);
  CHECK(e.backward_covered);
  CHECK(!e.overflow);
  std::set<BalancedPair> want{
      BP(a, "1", "1"),       BP(a, "2", "2"),       BP(a, "12", "21"),
      BP(a, "21", "12"),     BP(a, "112", "211"),   BP(a, "211", "112"),
      BP(a, "1122", "2121"), BP(a, "2121", "1122")};
  CHECK(as_set(e.pairs) == want);
  for (const auto& p : want) CHECK(e.contains(p));
  CHECK(e.nontrivial().size() == 6);
}

TEST_CASE("persistent pairs of its nineteen-letter sibling") {
  Substitution psi = fixture("proximal-b");
  const Alphabet& a = psi.alphabet();
  EssentialSet e = essential_set(psi);
  CHECK(e.forward_closed);
  CHECK(e.backward_covered);
  std::set<BalancedPair> want{BP(a, "1", "1"),     BP(a, "2", "2"),
                              BP(a, "12", "21"),   BP(a, "21", "12"),
                              BP(a, "112", "211"), BP(a, "211", "112")};
  CHECK(as_set(e.pairs) == want);
}

TEST_CASE("derived substitution on persistent pairs") {
  Substitution oc = fixture("onecut");
  const Alphabet& a = oc.alphabet();
  DerivedSubstitution ebp = build_phi_EBP(oc, essential_set(oc));
  CHECK(ebp.trivial_count == 2);
  CHECK(ebp.letter_pairs.size() == 8);
  CHECK(ebp.lambda == doctest::Approx(3.7320508).epsilon(1e-6));
  CHECK(ebp.beta == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(ebp.beta < ebp.lambda);

  CHECK(image_str(ebp, BP(a, "1", "1")) == "1 1 1 2 2");
  CHECK(image_str(ebp, BP(a, "2", "2")) == "1 2");
  CHECK(image_str(ebp, BP(a, "12", "21")) == "1 b A 2");
  CHECK(image_str(ebp, BP(a, "21", "12")) == "1 B a 2");
  CHECK(image_str(ebp, BP(a, "112", "211")) == "1 b A b A 2");
  CHECK(image_str(ebp, BP(a, "1122", "2121")) == "1 b A c 1 A 2");

  Substitution pp = build_phi_P(ebp);
  const Alphabet& pa = pp.alphabet();
  CHECK(pp.letters() == 6);
  CHECK(pa.spell(pp.image(pa.index("a")), " ") == "b A");
  CHECK(pa.spell(pp.image(pa.index("c")), " ") == "b A c A");
}

TEST_CASE("derived substitution of the sibling pins its dual structure") {
  Substitution psi = fixture("proximal-b");
  const Alphabet& a = psi.alphabet();
  DerivedSubstitution ebp = build_phi_EBP(psi, essential_set(psi));
  CHECK(ebp.trivial_count == 2);
  CHECK(ebp.beta == doctest::Approx(7.0).epsilon(1e-9));
  CHECK(image_str(ebp, BP(a, "12", "21")) ==
        "1 1 1 2 2 1 b 1 2 a 1 A A A 1 a 2 1 2");
  CHECK(image_str(ebp, BP(a, "112", "211")) ==
        "1 1 1 2 2 1 b 1 2 a 1 A A A 1 a 2 1 b 1 2 a 1 A A A 1 a 2 1 2");
}

TEST_CASE("bubble alphabet and its trivial-forgetting reduction") {
  Substitution ta = fixture("tower-a");
  AsymptoticStructure as = asymptotic_pairs(ta);
  std::vector<int> nontrivial;
  DerivedSubstitution abp = build_phi_ABP(ta, as, 256, &nontrivial);
  CHECK(!nontrivial.empty());
  Substitution pa = build_phi_A(abp);
  CHECK(pa.letters() == 2);

  Substitution tb = fixture("tower-b");
  AsymptoticStructure bs = asymptotic_pairs(tb);
  DerivedSubstitution babp = build_phi_ABP(tb, bs, 256);
  Substitution pb = build_phi_A(babp);
  CHECK(pb.letters() == 10);
}

TEST_CASE("irreducible pair universe is dual-closed") {
  Substitution fib = fixture("fibonacci");
  std::vector<BalancedPair> uni = enumerate_irreducible_pairs(fib, 6);
  std::set<BalancedPair> s = as_set(uni);
  for (const auto& p : uni) {
    CHECK(s.count(p.dual()) == 1);
    CHECK(is_balanced(p.u, p.v, 2));
  }
}
