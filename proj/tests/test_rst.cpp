#include <catch_amalgamated.hpp>

#include <random>

#include "properties.hpp"
#include "wildquot/rst.hpp"

using namespace wq;

TEST_CASE("rational arithmetic", "[rst]") {
  CHECK(Rational(2, 6) == Rational(1, 3));
  CHECK(Rational(1, -3) == Rational(-1, 3));
  CHECK(Rational(1, 3) + Rational(2, 3) == Rational(1));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(1, 3).to_string() == "1/3");
  CHECK(Rational(-6, 2).to_string() == "-3");
  CHECK(Rational(0, 5).to_string() == "0");
}

TEST_CASE("age examples", "[rst]") {
  CHECK(age({3, {1, 1, 1}}) == Rational(1));
  CHECK(age({1, {0, 0, 0}}) == Rational(0));
  CHECK(age({3, {1, 2, 0}}) == Rational(1));
  CHECK(age({5, {1, 3}}) == Rational(4, 5));
  CHECK_THROWS_AS(age({3, {3, 0, 0}}), ExponentOutOfRange);
  CHECK_THROWS_AS(age({3, {-1}}), ExponentOutOfRange);
  CHECK_THROWS_AS(age({0, {0}}), ExponentOutOfRange);
}

TEST_CASE("classifier examples", "[rst]") {
  auto c3 = rst_classify({{3, {1, 1, 1}}, {3, {2, 2, 2}}});
  CHECK(c3.cls == RstClass::canonical_not_terminal);
  CHECK(c3.ages == std::vector<Rational>{Rational(1), Rational(2)});

  auto a1 = rst_classify({{2, {1, 1}}});
  CHECK(a1.cls == RstClass::canonical_not_terminal);

  auto pr = rst_classify(cyclic_group({3, {1, 0, 0}}));
  CHECK(pr.cls == RstClass::not_canonical);
  CHECK(!pr.pseudo_reflections.empty());

  auto term = rst_classify(cyclic_group({5, {1, 2, 3}}));  // ages 6/5, 7/5, 8/5, 9/5
  CHECK(term.cls == RstClass::terminal);
}

TEST_CASE("identity handling", "[rst]") {
  std::vector<AgeVector> g = cyclic_group({3, {1, 1, 1}});
  CHECK(g.size() == 2);
  g.push_back({3, {0, 0, 0}});
  CHECK(rst_classify(g).cls == RstClass::canonical_not_terminal);
  CHECK(rst_classify(g, true).cls == RstClass::not_canonical);
}

TEST_CASE("faithfulness is reported", "[rst]") {
  auto v = rst_classify({{4, {2, 2}}});
  CHECK(v.non_faithful.size() == 1);
  CHECK(AgeVector{4, {1, 2}}.faithful());
}

TEST_CASE("age of an element and its inverse", "[rst][property]") {
  auto t = wqtest::age_inverse_identity(1000, 17);
  CHECK(t.trials == 1000);
  CHECK(t.failures == 0);
}

TEST_CASE("classification is monotone under adding elements", "[rst][property]") {
  auto rank = [](RstClass c) { return c == RstClass::terminal ? 2 : c == RstClass::canonical_not_terminal ? 1 : 0; };
  std::mt19937_64 eng(23);
  for (int i = 0; i < 1000; ++i) {
    std::vector<AgeVector> el;
    std::int64_t l = 2 + static_cast<std::int64_t>(uniform_below(eng, 8));
    int count = 1 + static_cast<int>(uniform_below(eng, 4));
    for (int k = 0; k < count; ++k) {
      AgeVector v{l, {}};
      for (int j = 0; j < 3; ++j) v.exps.push_back(static_cast<std::int64_t>(uniform_below(eng, l)));
      el.push_back(v);
    }
    auto before = rank(rst_classify(el).cls);
    AgeVector extra{l, {}};
    for (int j = 0; j < 3; ++j) extra.exps.push_back(static_cast<std::int64_t>(uniform_below(eng, l)));
    el.push_back(extra);
    REQUIRE(rank(rst_classify(el).cls) <= before);
  }
}
