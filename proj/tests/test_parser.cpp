#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"
#include "wildquot/parser.hpp"

using namespace wq;

namespace {

struct Setting {
  FieldPtr F = make_field(3, 4, 0);
  FieldElement a = sample_parameter(F, ParamConstraint::not_in_prime_subfield, 0);
  FieldElement b = sample_parameter(F, ParamConstraint::nonzero, 0x9e3779b97f4a7c15ull);
  Constants consts() const {
    auto c = parameter_constants(a, b);
    for (int i = 1; i <= 7; ++i) c["c" + std::to_string(i)] = a.pow(i) + b;
    return c;
  }
};

}  // namespace

TEST_CASE("parse examples", "[parser]") {
  auto F = make_field(3, 1, 0);
  auto R = PolyRing::make(F, {"x1", "x2", "x3", "x4"});
  auto f = parse_poly("x2^9 - x3^2 + x1^9*x4", R);
  CHECK(f.size() == 3);
  Monomial m;
  m[2] = 2;
  CHECK(f.coeff(m) == FieldElement::of(F, 2));
  CHECK(parse_poly("0", R).is_zero());
  CHECK(parse_poly("  7 ", R) == Poly::constant(R, 1));
  CHECK(parse_poly("-x1^2^3", R) == -Poly::var(R, 0).pow(6));  // ^ left to right
  CHECK(parse_poly("2*(x1 - x2)*(x1 + x2)", R) == parse_poly("2*x1^2 + x2^2", R));
}

TEST_CASE("syntax errors carry a position", "[parser]") {
  auto R = PolyRing::make(make_field(3, 1, 0), {"x1", "x2"});
  try {
    parse_poly("x1 + ", R);
    FAIL("no exception");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() >= 4);
  }
  CHECK_THROWS_AS(parse_poly("x1 x2", R), SyntaxError);
  CHECK_THROWS_AS(parse_poly("(x1 + x2", R), SyntaxError);
  CHECK_THROWS_AS(parse_poly("x1^", R), SyntaxError);
  CHECK_THROWS_AS(parse_poly("x1 $ x2", R), SyntaxError);
  try {
    parse_poly("x1\n+ * x2", R);
    FAIL("no exception");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_poly("x1 + y", R), UnknownVariable);
}

TEST_CASE("named constants and tuple literals", "[parser]") {
  Setting s;
  auto R = PolyRing::make(s.F, {"x", "y"});
  auto c = s.consts();
  auto alpha = s.a.pow(3) - s.a;
  CHECK(parse_poly("alpha", R, c) == Poly::constant(R, alpha));
  CHECK(parse_poly("a^3 - a - alpha", R, c).is_zero());
  CHECK(parse_poly("b*x", R, c) == Poly::var(R, 0).scaled(s.b));
  auto t = FieldElement(s.F, s.F->from_coeffs({1, 2, 0, 1}));
  CHECK(parse_poly("(1,2,0,1)*y", R) == Poly::var(R, 1).scaled(t));
  CHECK_THROWS_AS(parse_poly("(1,2,0,1,1)", R), Error);
}

TEST_CASE("print then parse is the identity on displayed equations", "[parser][property]") {
  Setting s;
  auto c = s.consts();
  auto X = PolyRing::make(s.F, {"x1", "x2", "x3", "x4"});
  auto T = PolyRing::make(s.F, {"x1", "x2", "x4", "u_t", "v_t", "t_u", "v_u", "h_t"});
  const std::vector<std::pair<RingPtr, std::string>> corpus = {
      {X, "x2^9 - x3^2 + x1^9*x4 + x1^6*((1+alpha^2)*x2^6 - alpha^2*x1^2*x2^5 + (1+alpha^2)^2*x1^6*x2^2"
          " + alpha^2*(1+alpha^2)*x1^8*x2^2 + alpha^4*x1^10*x2)"},
      {X, "alpha*b^2*x2^5 - b^4*x3^3 - b^10*x1^6*x4 + alpha*b^2*x1*x2^3*x3 + x1^3*(c1*x2^4 + c2*x1*x2^2*x3"
          " + c3*x1^2*x3^2 + c4*x1^3*x2^3 + c5*x1^4*x2*x3 + c6*x1^6*x2^3 + c7*x1^7*x3)"},
      {X, "alpha^3*b^2*x2^5 - b^4*x3^3 - b^10*x1^6*x4"},
      {T, "x1^7*(u_t^9 + x4 + x1^3*h_t) - v_t^2"},
      {T, "x2^7*(1 + t_u^9*x4 + x2^3*h_t) - v_u^2"},
      {T, "alpha^3*b^2*u_t^5*x1^2 - b^4*v_t^3 - b^10*x1^3*x4 + alpha*b^2*u_t^3*v_t*x1^2"},
      {T, "-alpha*b^2*x2^2 + b^4*v_u^3 + b^10*t_u^6*x2^3*x4"},
      {X, "0"},
      {X, "x1 - x1"},
  };
  for (const auto& [ring, text] : corpus) {
    auto p = parse_poly(text, ring, c);
    auto again = parse_poly(p.to_string(), ring, c);
    INFO(text);
    CHECK(again == p);
    CHECK(again.to_string() == p.to_string());
  }
}

TEST_CASE("round trip on random polynomials", "[parser][property]") {
  auto F = make_field(3, 2, 0);
  auto R = PolyRing::make(F, {"x", "y", "z"});
  std::mt19937_64 eng(21);
  for (int i = 0; i < 1000; ++i) {
    auto f = wqtest::random_poly(R, eng, 6, 5);
    REQUIRE(parse_poly(f.to_string(), R) == f);
  }
}
