#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "wildquot/ff.hpp"

using namespace wq;

namespace {

// Schoolbook product of power-basis vectors reduced by the monic modulus.
std::vector<unsigned> oracle_mul(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                 const std::vector<unsigned>& modulus, unsigned p) {
  const std::size_t k = modulus.size() - 1;
  std::vector<unsigned> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = 2 * k - 1; d >= k; --d) {
    unsigned c = prod[d];
    if (!c) continue;
    prod[d] = 0;
    for (std::size_t i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * modulus[i] % p) % p;
  }
  prod.resize(k);
  return prod;
}

}  // namespace

TEST_CASE("make_field picks the expected moduli", "[ff]") {
  auto f3 = make_field(3, 1, 0);
  CHECK(f3->order() == 3);
  CHECK(f3->modulus() == std::vector<unsigned>{0, 1});

  auto f9 = make_field(3, 2, 0);
  CHECK(f9->order() == 9);
  CHECK(is_irreducible(f9->modulus(), 3));

  auto f81 = make_field(3, 4, 0);
  CHECK(f81->order() == 81);
  CHECK(is_irreducible(f81->modulus(), 3));
  std::set<Field::Code> units;
  for (Field::Code x = 1; x < 81; ++x) units.insert(x);
  CHECK(units.size() == 80);
  // the primitive element generates the unit group
  std::set<Field::Code> powers;
  for (long long i = 0; i < 80; ++i) powers.insert(f81->pow(f81->primitive(), i));
  CHECK(powers.size() == 80);
}

TEST_CASE("seeded moduli are distinct irreducibles in lexicographic order", "[ff]") {
  // monic quadratics x^2 + c1 x + c0 over F_3, walked with c1 outer and c0 inner
  std::vector<std::vector<unsigned>> irreducible;
  for (unsigned c1 = 0; c1 < 3; ++c1)
    for (unsigned c0 = 0; c0 < 3; ++c0) {
      bool has_root = false;
      for (unsigned x = 0; x < 3; ++x) has_root = has_root || (x * x + c1 * x + c0) % 3 == 0;
      if (!has_root) irreducible.push_back({c0, c1, 1});
    }
  REQUIRE(irreducible.size() == 3);
  for (std::uint64_t s = 0; s < 6; ++s) CHECK(make_field(3, 2, s)->modulus() == irreducible[s % 3]);
}

TEST_CASE("make_field rejects composite characteristic", "[ff]") {
  CHECK_THROWS_AS(make_field(4, 1, 0), NotPrime);
  CHECK_THROWS_AS(make_field(9, 2, 0), NotPrime);
  CHECK_THROWS_AS(make_field(3, 0, 0), InvalidArgument);
}

TEST_CASE("multiplication agrees with the schoolbook oracle", "[ff]") {
  for (unsigned k : {1u, 2u, 3u, 4u}) {
    auto F = make_field(3, k, 0);
    for (Field::Code x = 0; x < F->order(); ++x)
      for (Field::Code y = 0; y < F->order(); ++y) {
        auto want = oracle_mul(F->coeffs(x), F->coeffs(y), F->modulus(), 3);
        REQUIRE(F->coeffs(F->mul(x, y)) == want);
      }
  }
  auto F25 = make_field(5, 2, 1);
  for (Field::Code x = 0; x < 25; ++x)
    for (Field::Code y = 0; y < 25; ++y)
      REQUIRE(F25->coeffs(F25->mul(x, y)) == oracle_mul(F25->coeffs(x), F25->coeffs(y), F25->modulus(), 5));
}

TEST_CASE("field axioms hold exhaustively over F3 and F9", "[ff]") {
  for (unsigned k : {1u, 2u}) {
    auto F = make_field(3, k, 0);
    const auto q = F->order();
    for (Field::Code x = 0; x < q; ++x) {
      if (x) CHECK(F->mul(x, F->inv(x)) == 1);
      CHECK(F->add(x, F->neg(x)) == 0);
      for (Field::Code y = 0; y < q; ++y)
        for (Field::Code z = 0; z < q; ++z) {
          REQUIRE(F->mul(F->mul(x, y), z) == F->mul(x, F->mul(y, z)));
          REQUIRE(F->add(F->add(x, y), z) == F->add(x, F->add(y, z)));
          REQUIRE(F->mul(x, F->add(y, z)) == F->add(F->mul(x, y), F->mul(x, z)));
        }
    }
  }
}

TEST_CASE("small worked identities", "[ff]") {
  auto F3 = make_field(3, 1, 0);
  CHECK((FieldElement::of(F3, 2) + FieldElement::of(F3, 2)) == FieldElement::of(F3, 1));
  for (long long a = 0; a < 3; ++a)
    for (long long b = 0; b < 3; ++b)
      for (long long c = 0; c < 3; ++c) {
        auto A = FieldElement::of(F3, a), B = FieldElement::of(F3, b), C = FieldElement::of(F3, c);
        CHECK((A + B + C).pow(3) == A.pow(3) + B.pow(3) + C.pow(3));
      }
  auto F9 = make_field(3, 2, 0);
  for (Field::Code x = 0; x < 9; ++x) {
    CHECK(F9->pow(x, 9) == x);
    if (x) CHECK(F9->pow(x, 8) == 1);
  }
}

TEST_CASE("Frobenius fixes exactly the prime subfield", "[ff]") {
  for (unsigned k : {1u, 2u}) {
    auto F = make_field(3, k, 0);
    for (Field::Code x = 0; x < F->order(); ++x) {
      CHECK((F->frobenius(x) == x) == F->in_prime_subfield(x));
      for (Field::Code y = 0; y < F->order(); ++y) {
        CHECK(F->frobenius(F->add(x, y)) == F->add(F->frobenius(x), F->frobenius(y)));
        CHECK(F->frobenius(F->mul(x, y)) == F->mul(F->frobenius(x), F->frobenius(y)));
      }
    }
  }
}

TEST_CASE("alpha = a^3 - a vanishes exactly on the prime field", "[ff]") {
  for (unsigned k : {2u, 3u}) {
    auto F = make_field(3, k, 0);
    for (Field::Code x = 0; x < F->order(); ++x) {
      auto a = FieldElement(F, x);
      CHECK((a.pow(3) - a).is_zero() == F->in_prime_subfield(x));
    }
  }
}

TEST_CASE("element arithmetic errors", "[ff]") {
  auto F9 = make_field(3, 2, 0);
  auto F9b = make_field(3, 2, 1);
  CHECK_THROWS_AS(FieldElement(F9, 3) / FieldElement(F9, 0), DivisionByZero);
  CHECK_THROWS_AS(FieldElement(F9, 0).inverse(), DivisionByZero);
  CHECK_THROWS_AS(FieldElement(F9, 1) + FieldElement(F9b, 1), FieldMismatch);
  CHECK(FieldElement(F9, 4).pow(-1) * FieldElement(F9, 4) == FieldElement(F9, 1));
  CHECK(F9->from_int(-1) == 2);
  CHECK(F9->render(1) == "(1,0)");
  CHECK(make_field(3, 1, 0)->render(2) == "2");
}

TEST_CASE("sample_parameter honours its constraint", "[ff]") {
  auto F3 = make_field(3, 1, 0);
  CHECK_THROWS_AS(sample_parameter(F3, ParamConstraint::not_in_prime_subfield, 0), InfeasibleConstraint);
  auto F9 = make_field(3, 2, 0);
  std::set<Field::Code> seen;
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto a = sample_parameter(F9, ParamConstraint::not_in_prime_subfield, s);
    CHECK(!(a.pow(3) - a).is_zero());
    CHECK(!sample_parameter(F9, ParamConstraint::nonzero, s).is_zero());
    CHECK(sample_parameter(F9, ParamConstraint::unconstrained, s) == sample_parameter(F9, ParamConstraint::unconstrained, s));
    seen.insert(a.code());
  }
  CHECK(seen.size() == 6);  // every element outside F3 shows up
}

TEST_CASE("uniform_below stays in range and reaches every value", "[ff]") {
  std::mt19937_64 eng(7);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    auto v = uniform_below(eng, 7);
    REQUIRE(v < 7);
    ++hits[v];
  }
  for (int h : hits) CHECK(h > 800);
}
