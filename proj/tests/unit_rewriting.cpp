#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "tilinv/matrix.hpp"
#include "tilinv/rewriting.hpp"
#include "tilinv/spectra.hpp"

using namespace tilinv;

TEST_CASE("cut enumeration on the five-letter-image substitution") {
  Substitution oc = fixture("onecut");
  std::vector<std::string> got;
  for (const auto& c : enumerate_cuts(oc)) got.push_back(c.str(oc.alphabet()));
  std::vector<std::string> want{"interior:1:2", "interior:1:3", "vertex:2:1"};
  CHECK(got == want);
}

TEST_CASE("interior split and block recoding") {
  Substitution oc = fixture("onecut");
  CutSpec cut;
  cut.kind = CutSpec::Kind::Interior;
  cut.a = 0;
  cut.occurrence = 2;
  RewritingResult rw = one_cut_rewrite(oc, cut);

  REQUIRE(rw.split);
  const Alphabet& sa = rw.source.alphabet();
  CHECK(sa.spell(rw.source.image(sa.index("1_1")), "") == "1_11_21_1");
  CHECK(sa.spell(rw.source.image(sa.index("1_2")), "") == "1_21_11_222");
  CHECK(sa.spell(rw.source.image(sa.index("2")), "") == "1_11_22");

  const Alphabet& na = rw.sigma_tilde.alphabet();
  REQUIRE(na.size() == 3);
  CHECK(sa.spell(rw.rho[na.index("a")], "") == "1_21_1");
  CHECK(sa.spell(rw.rho[na.index("b")], "") == "1_221_1");
  CHECK(sa.spell(rw.rho[na.index("c")], "") == "1_2221_1");
  CHECK(na.spell(rw.sigma_tilde.image(na.index("a")), "") == "aca");
  CHECK(na.spell(rw.sigma_tilde.image(na.index("b")), "") == "acba");
  CHECK(na.spell(rw.sigma_tilde.image(na.index("c")), "") == "acbba");

  IntMatrix m =
      IntMatrix::from_counts(rw.sigma_tilde.abelianization_counts());
  auto roots = poly_roots(char_poly(m));
  std::vector<double> mods;
  for (auto z : roots) mods.push_back(std::abs(z));
  std::sort(mods.begin(), mods.end());
  REQUIRE(mods.size() == 3);
  CHECK(std::abs(mods[0]) <= 1e-9);
  CHECK(std::abs(mods[1] - (2.0 - std::sqrt(3.0))) <= 1e-9);
  CHECK(std::abs(mods[2] - (2.0 + std::sqrt(3.0))) <= 1e-9);
  CHECK(is_proper(rw.sigma_tilde).kind == Properness::Proper);
}

TEST_CASE("a geometrically balanced pair that is not balanced") {
  Substitution oc = fixture("onecut");
  CutSpec cut;
  cut.kind = CutSpec::Kind::Interior;
  cut.a = 0;
  cut.occurrence = 2;
  RewritingResult rw = one_cut_rewrite(oc, cut);
  const Alphabet& na = rw.sigma_tilde.alphabet();

  CHECK(is_geometrically_balanced(rw.sigma_tilde, W(na, "ac"), W(na, "bb")));
  CHECK(!is_balanced(W(na, "ac"), W(na, "bb"), 3));
  std::vector<BalancedPair> gbp = essential_gbp(rw.sigma_tilde);
  CHECK(std::find(gbp.begin(), gbp.end(), BP(na, "ac", "bb")) != gbp.end());

  bool saw_unbalanced = false;
  for (const auto& b : egbp_bridge(rw, oc)) {
    // every association balances over the original two-letter alphabet
    CHECK(is_balanced(b.associated.u, b.associated.v, 2));
    if (b.gbp == BP(na, "ac", "bb")) {
      CHECK(!b.balanced);
      CHECK(b.associated == BP(oc.alphabet(), "1122", "1212"));
      saw_unbalanced = true;
    }
  }
  CHECK(saw_unbalanced);
}

TEST_CASE("vertex recoding of the golden-mean substitution") {
  Substitution fib = fixture("fibonacci");
  CutSpec cut;
  cut.kind = CutSpec::Kind::Vertex;
  cut.a = 0;
  cut.b = 0;
  cut.power = 2;
  RewritingResult rw = one_cut_rewrite(fib, cut);
  CHECK(!rw.split);
  const Alphabet& na = rw.sigma_tilde.alphabet();
  REQUIRE(na.size() == 2);
  const Alphabet& fa = fib.alphabet();
  CHECK(fa.spell(rw.rho[na.index("a")], "") == "121");
  CHECK(fa.spell(rw.rho[na.index("b")], "") == "12121");
  CHECK(is_proper(rw.sigma_tilde).kind == Properness::Proper);
  // the dominant eigenvalue survives the recoding
  IntMatrix m =
      IntMatrix::from_counts(rw.sigma_tilde.abelianization_counts());
  SpectralProfile sp = spectral_profile(m);
  double golden2 = std::pow((1.0 + std::sqrt(5.0)) / 2.0, 2);
  CHECK(sp.pf.lambda == doctest::Approx(golden2).epsilon(1e-8));
}

TEST_CASE("languages without a cut adjacency are rejected") {
  Substitution fib = fixture("fibonacci");
  bool threw = false;
  try {
    rewrite_with_rules(fib, {1}, {1});  // would need the factor 22
  } catch (const NotCuttable&) {
    threw = true;
  }
  CHECK(threw);
}
