#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"
#include "wildquot/parser.hpp"
#include "wildquot/poly.hpp"

using namespace wq;
using wqtest::random_point;
using wqtest::random_poly;

namespace {

FieldPtr f3() { return make_field(3, 1, 0); }
FieldPtr f9() { return make_field(3, 2, 0); }

}  // namespace

TEST_CASE("char 3 arithmetic examples", "[poly]") {
  auto R = PolyRing::make(f3(), {"x", "y"});
  auto x = Poly::var(R, "x"), y = Poly::var(R, "y");
  CHECK((x + y).pow(3) == x.pow(3) + y.pow(3));
  CHECK((x + y).pow(3).to_string() == "x^3 + y^3");

  auto S = PolyRing::make(f3(), {"x1", "x2", "x3", "x4"});
  auto f = parse_poly("x2^9 - x3^2 + x1^9*x4", S);
  CHECK((f + (-f)).is_zero());
  auto g = parse_poly("x2^9 - x3^2", S);
  auto h = g * Poly::constant(S, 1);
  CHECK(h == g);
  CHECK(h.size() == 2);
}

TEST_CASE("mismatched rings are rejected", "[poly]") {
  auto R = PolyRing::make(f3(), {"x", "y"});
  auto S = PolyRing::make(f3(), {"x", "z"});
  CHECK_THROWS_AS(Poly::var(R, 0) + Poly::var(S, 0), RingMismatch);
  CHECK_THROWS_AS(Poly::var(R, 0) * Poly::var(S, 0), RingMismatch);
  CHECK_THROWS_AS(Poly::var(R, "w"), UnknownVariable);
}

TEST_CASE("chart substitutions", "[poly]") {
  auto S = PolyRing::make(f3(), {"x1", "x2", "x3", "x4"});
  auto T = PolyRing::make(f3(), {"x1", "x4", "u_t", "v_t"});
  auto x1 = Poly::var(T, "x1"), x4 = Poly::var(T, "x4");
  auto u = Poly::var(T, "u_t"), v = Poly::var(T, "v_t");
  std::map<std::string, Poly> chart{{"x1", x1}, {"x2", u * x1}, {"x3", v * x1}, {"x4", x4}};

  CHECK(substitute(Poly::var(S, "x2"), chart) == u * x1);
  auto g = parse_poly("x2^9 - x3^2", S);
  CHECK(substitute(g, chart) == u.pow(9) * x1.pow(9) - v.pow(2) * x1.pow(2));

  std::map<std::string, Poly> id;
  for (const auto& n : S->vars()) id[n] = Poly::var(S, n);
  CHECK(substitute(g, id) == g);

  std::map<std::string, Poly> partial{{"x1", x1}, {"x2", u}};
  CHECK_THROWS_AS(substitute(g, partial), MissingImage);
}

TEST_CASE("partial derivatives", "[poly]") {
  auto S = PolyRing::make(f3(), {"x1", "x2", "x3", "x4"});
  CHECK(partial_derivative(parse_poly("x3^2", S), "x3") == parse_poly("2*x3", S));
  CHECK(partial_derivative(parse_poly("x2^9", S), "x2").is_zero());
  CHECK(partial_derivative(parse_poly("x1^9*x4", S), "x4") == parse_poly("x1^9", S));
  CHECK_THROWS_AS(partial_derivative(parse_poly("x1", S), "y"), UnknownVariable);
}

TEST_CASE("vanishing orders", "[poly]") {
  auto T = PolyRing::make(f3(), {"x1", "x4", "u_t", "v_t"});
  CHECK(vanishing_order(parse_poly("x1^7*(u_t^9 + x4) - v_t^2*x1^2", T), "x1") == 2);
  CHECK(vanishing_order(parse_poly("x1", T), "x4") == 0);
  CHECK(vanishing_order(parse_poly("x1^3*(1 + x4 + u_t*x1)", T), "x1") == 3);
  CHECK_THROWS_AS(vanishing_order(Poly(T), "x1"), ZeroPolynomial);
}

TEST_CASE("weighted degree profiles", "[poly]") {
  auto R = PolyRing::make(f3(), {"x1", "x2", "x3"});
  CHECK(weighted_degree_profile(parse_poly("x2^9 - x3^2", R), {1, 2, 9}) == std::set<unsigned>{18});
  CHECK(weighted_degree_profile(parse_poly("x1^6*x2^2", R), {1, 2, 9}) == std::set<unsigned>{10});
  CHECK(weighted_degree_profile(Poly(R), {1, 2, 9}).empty());
  CHECK(weighted_degree_profile(parse_poly("x1^6*x2^2 + x3", R), {1, 2, 9}) == std::set<unsigned>{9, 10});
}

TEST_CASE("multiplication agrees with the term-map oracle", "[poly][property]") {
  auto R = PolyRing::make(f9(), {"x", "y", "z"});
  std::mt19937_64 eng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    auto f = random_poly(R, eng), g = random_poly(R, eng);
    REQUIRE(wqtest::term_map(f * g) == wqtest::oracle_product(f, g));
  }
}

TEST_CASE("ring axioms over F9", "[poly][property]") {
  auto R = PolyRing::make(f9(), {"x", "y", "z"});
  std::mt19937_64 eng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    auto f = random_poly(R, eng), g = random_poly(R, eng), h = random_poly(R, eng);
    REQUIRE((f * g) * h == f * (g * h));
    REQUIRE(f * (g + h) == f * g + f * h);
    REQUIRE((f + g) + h == f + (g + h));
    REQUIRE(f * g == g * f);
    REQUIRE((f - f).is_zero());
  }
}

TEST_CASE("substitution is a ring homomorphism", "[poly][property]") {
  auto R = PolyRing::make(f9(), {"x", "y", "z"});
  auto T = PolyRing::make(f9(), {"s", "t"});
  std::mt19937_64 eng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Poly> images;
    for (int i = 0; i < 3; ++i) images.push_back(random_poly(T, eng, 3, 2));
    auto f = random_poly(R, eng, 4, 3), g = random_poly(R, eng, 4, 3);
    REQUIRE(substitute(f * g, images) == substitute(f, images) * substitute(g, images));
    REQUIRE(substitute(f + g, images) == substitute(f, images) + substitute(g, images));
  }
}

TEST_CASE("Leibniz rule", "[poly][property]") {
  auto R = PolyRing::make(f9(), {"x", "y", "z"});
  std::mt19937_64 eng(3);
  for (int trial = 0; trial < 1000; ++trial) {
    auto f = random_poly(R, eng), g = random_poly(R, eng);
    std::size_t v = trial % 3;
    REQUIRE(partial_derivative(f * g, v) ==
            f * partial_derivative(g, v) + g * partial_derivative(f, v));
  }
}

TEST_CASE("vanishing order is additive", "[poly][property]") {
  auto R = PolyRing::make(f9(), {"x", "y", "z"});
  std::mt19937_64 eng(4);
  int tested = 0;
  while (tested < 1000) {
    auto f = random_poly(R, eng), g = random_poly(R, eng);
    if (f.is_zero() || g.is_zero()) continue;
    std::size_t v = tested % 3;
    REQUIRE(vanishing_order(f * g, v) == vanishing_order(f, v) + vanishing_order(g, v));
    ++tested;
  }
}

TEST_CASE("evaluation commutes with substitution", "[poly][property]") {
  auto F = f9();
  auto R = PolyRing::make(F, {"x", "y", "z"});
  auto T = PolyRing::make(F, {"s", "t"});
  std::mt19937_64 eng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Poly> images;
    for (int i = 0; i < 3; ++i) images.push_back(random_poly(T, eng, 3, 2));
    auto f = random_poly(R, eng, 4, 3);
    auto pt = random_point(F, 2, eng);
    std::vector<FieldElement> inner;
    for (const auto& im : images) inner.push_back(evaluate(im, pt));
    REQUIRE(evaluate(substitute(f, images), pt) == evaluate(f, inner));
  }
}

TEST_CASE("evaluation is a homomorphism and Frobenius-compatible", "[poly][property]") {
  auto F = f9();
  auto R = PolyRing::make(F, {"x", "y"});
  std::mt19937_64 eng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    auto f = random_poly(R, eng), g = random_poly(R, eng);
    auto pt = random_point(F, 2, eng);
    REQUIRE(evaluate(f * g, pt) == evaluate(f, pt) * evaluate(g, pt));
    REQUIRE(evaluate(f.pow(3), pt) == evaluate(f, pt).pow(3));
  }
}

TEST_CASE("monomial helpers", "[poly]") {
  auto R = PolyRing::make(f3(), {"x", "y"});
  auto f = parse_poly("x^3*y + 2*x^2*y^4", R);
  auto c = monomial_content(f);
  CHECK(c[0] == 2);
  CHECK(c[1] == 1);
  CHECK(divide_by_monomial(f, c) == parse_poly("x + 2*y^3", R));
  CHECK(divide_by_var_power(f, 0, 2) == parse_poly("x*y + 2*y^4", R));
  CHECK_THROWS_AS(divide_by_var_power(f, 0, 3), InvalidArgument);
  CHECK(equal_up_to_scalar(f, f.scaled(FieldElement::of(R->field(), 2))));
  CHECK(!equal_up_to_scalar(f, f + Poly::constant(R, 1)));
}

TEST_CASE("monomial orders", "[poly]") {
  auto G = PolyRing::make(f3(), {"x", "y", "z"});
  auto L = PolyRing::make(f3(), {"x", "y", "z"}, MonomialOrder::lex);
  Monomial a = Monomial::var(0), b = Monomial::var(1, 2);
  CHECK(G->greater(b, a));  // grevlex compares degree first
  CHECK(L->greater(a, b));
  auto W = PolyRing::make(f3(), {"x", "y"}, MonomialOrder::grevlex, {1, 3});
  CHECK(W->greater(Monomial::var(1), Monomial::var(0, 2)));
  CHECK(parse_poly("x + y^2 + z", G).to_string() == "y^2 + x + z");
}

TEST_CASE("extension coefficients render as tuples", "[poly]") {
  auto F = f9();
  auto R = PolyRing::make(F, {"x"});
  auto f = Poly::var(R, 0).scaled(FieldElement(F, 3)) + Poly::constant(R, 2);
  CHECK(f.to_string() == F->render(3) + "*x + (2,0)");
}
