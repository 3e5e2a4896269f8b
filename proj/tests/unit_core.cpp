#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "tilinv/matrix.hpp"
#include "tilinv/spectra.hpp"

using namespace tilinv;

TEST_CASE("alphabet basics") {
  Alphabet a;
  CHECK(a.add("1") == 0);
  CHECK(a.add("2") == 1);
  CHECK(a.size() == 2);
  CHECK(a.name(0) == "1");
  CHECK(a.index("2") == 1);
  CHECK(a.has("1"));
  CHECK(!a.has("3"));
  CHECK_THROWS_AS(a.index("3"), std::domain_error);
  CHECK(a.spell({0, 1, 0}) == "121");
  CHECK(a.spell({0, 1}, " ") == "1 2");
}

TEST_CASE("substitution apply, power, compose") {
  Substitution fib = fixture("fibonacci");
  const Alphabet& a = fib.alphabet();
  CHECK(a.spell(fib.apply(W(a, "1"))) == "12");
  CHECK(a.spell(fib.apply(W(a, "2"))) == "1");
  CHECK(a.spell(fib.apply(W(a, "1"), 2)) == "121");
  CHECK(a.spell(fib.apply(W(a, "1"), 5)) == "1211212112112");
  Substitution fib2 = fib.power(2);
  CHECK(a.spell(fib2.image(0)) == "121");
  CHECK(a.spell(fib2.image(1)) == "12");
  Substitution c = fib.compose(fib);
  CHECK(a.spell(c.image(0)) == "121");
  CHECK(fib.first_letter(0) == 0);
  CHECK(fib.last_letter(0) == 1);
}

TEST_CASE("allowed words of the golden-mean shift") {
  Substitution fib = fixture("fibonacci");
  const Alphabet& a = fib.alphabet();
  std::set<Word> got = allowed_words(fib, 2);
  std::set<Word> want{W(a, "1"), W(a, "2"), W(a, "11"), W(a, "12"),
                      W(a, "21")};
  CHECK(got == want);  // no factor 22
  std::set<Word> three = allowed_words(fib, 3);
  CHECK(three.count(W(a, "211")) == 1);
  CHECK(three.count(W(a, "111")) == 0);
}

TEST_CASE("properness of the boundary letter maps") {
  PropernessVerdict p = is_proper(fixture("onecut"));
  CHECK(p.kind == Properness::Proper);
  CHECK(p.begin == 0);
  CHECK(p.end == 1);
  CHECK(is_proper(fixture("fibonacci")).kind == Properness::NotProper);
  CHECK(is_proper(fixture("thue-morse")).kind == Properness::NotProper);
  CHECK(is_proper(fixture("recode-blocks")).kind == Properness::Proper);
}

TEST_CASE("exact matrix arithmetic") {
  Substitution fib = fixture("fibonacci");
  IntMatrix a = IntMatrix::from_counts(fib.abelianization_counts());
  CHECK(a(0, 0) == 1);
  CHECK(a(0, 1) == 1);
  CHECK(a(1, 0) == 1);
  CHECK(a(1, 1) == 0);
  CHECK(char_poly(a) == std::vector<BigInt>{-1, -1, 1});
  CHECK(poly_str(char_poly(a)) == "x^2 - x - 1");
  CHECK(determinant(a) == -1);
  CHECK(is_primitive(a));
  IntMatrix p2 = a.pow(10);
  CHECK(p2(0, 0) == 89);  // Fibonacci numbers
  std::vector<BigInt> v{1, 2};
  CHECK(a.apply(v) == std::vector<BigInt>{3, 1});
}

TEST_CASE("eventual range of a singular matrix") {
  IntMatrix m(2);
  m(0, 0) = 1;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 1;
  EventualRangeData e = eventual_range_data(m);
  CHECK(e.eventual_rank == 1);
  CHECK(poly_str(e.restricted_char_poly) == "x - 2");
  CHECK(e.det_on_range == 2);
  CHECK(!in_generalized_null_space(m, {1, 1}));
  CHECK(in_generalized_null_space(m, {1, -1}));
}

TEST_CASE("spectral classification") {
  auto profile = [](const char* stem) {
    Substitution s = fixture(stem);
    return spectral_profile(IntMatrix::from_counts(s.abelianization_counts()));
  };
  SpectralProfile fib = profile("fibonacci");
  CHECK(fib.pisot_class == PisotClass::StrongPisot);
  CHECK(fib.primitive);
  CHECK(fib.nonsingular);
  CHECK(fib.pf.lambda == doctest::Approx(1.6180339887).epsilon(1e-8));

  SpectralProfile mt = profile("thue-morse");
  CHECK(mt.pisot_class == PisotClass::WeakPisot);
  CHECK(!mt.nonsingular);

  SpectralProfile oc = profile("onecut");
  CHECK(oc.pisot_class == PisotClass::StrongPisot);
  CHECK(poly_str(oc.char_poly) == "x^2 - 4x + 1");
  CHECK(oc.pf.lambda == doctest::Approx(3.7320508).epsilon(1e-6));

  for (const char* stem : {"proximal-a", "proximal-b", "tower-a", "tower-b"})
    CHECK(profile(stem).pisot_class == PisotClass::StrongPisot);

  CHECK(profile("recode-blocks").pisot_class == PisotClass::WeakPisot);
}

TEST_CASE("characteristic polynomial roots") {
  // x^3 - 4x^2 + x: roots 2 +/- sqrt(3) and 0
  auto roots = poly_roots({0, 1, -4, 1});
  REQUIRE(roots.size() == 3);
  std::vector<double> mods;
  for (auto z : roots) mods.push_back(std::abs(z));
  std::sort(mods.begin(), mods.end());
  CHECK(mods[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(mods[1] == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-9));
  CHECK(mods[2] == doctest::Approx(2.0 + std::sqrt(3.0)).epsilon(1e-9));
}
