#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "support.hpp"
#include "wildquot/group.hpp"
#include "wildquot/invariants.hpp"

using namespace wq;

namespace {

FieldPtr f3() { return make_field(3, 1, 0); }
FieldPtr f9() { return make_field(3, 2, 0); }
FieldPtr f81() { return make_field(3, 4, 0); }

// Plain triple-loop product over field codes.
Mat3 oracle_mul(const Mat3& x, const Mat3& y) {
  const Field& F = *x.field;
  Mat3 out{x.field, {}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Field::Code s = 0;
      for (int k = 0; k < 3; ++k) s = F.add(s, F.mul(x(i, k), y(k, j)));
      out.a[3 * i + j] = s;
    }
  return out;
}

FieldElement rand_elem(const FieldPtr& F, std::mt19937_64& eng) {
  return FieldElement(F, static_cast<Field::Code>(uniform_below(eng, F->order())));
}

// (u, v) is an F3 combination of (1,0) and (a,b)
bool in_span(const AdditivePair& x, const FieldElement& a, const FieldElement& b) {
  auto F = a.field();
  for (long long m = 0; m < 3; ++m)
    for (long long n = 0; n < 3; ++n) {
      auto M = FieldElement::of(F, m), N = FieldElement::of(F, n);
      if (M + N * a == x.c1 && N * b == x.c2) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("sigma examples", "[group]") {
  auto F = f3();
  auto zero = FieldElement::of(F, 0), one = FieldElement::of(F, 1);
  CHECK(sigma({zero, zero}).is_identity());
  CHECK(sigma({one, zero}) == Mat3::from_ints(F, {1, 2, 1, 0, 1, 1, 0, 0, 1}));
  CHECK(sigma({one, zero}).det() == 1);
}

TEST_CASE("sigma is additive over F81", "[group][property]") {
  auto F = f81();
  std::mt19937_64 eng(31);
  for (int i = 0; i < 100; ++i) {
    AdditivePair c{rand_elem(F, eng), rand_elem(F, eng)};
    AdditivePair d{rand_elem(F, eng), rand_elem(F, eng)};
    REQUIRE(oracle_mul(sigma(c), sigma(d)) == sigma(c + d));
    REQUIRE(sigma(c) * sigma(d) == oracle_mul(sigma(c), sigma(d)));
  }
}

TEST_CASE("build_group orders", "[group]") {
  auto F = f9();
  auto a = sample_parameter(F, ParamConstraint::not_in_prime_subfield, 0);
  auto b = sample_parameter(F, ParamConstraint::nonzero, 1);
  auto G = build_group(a, b);
  CHECK(G.order() == 9);
  for (const auto& g : G.elements)
    if (!g.is_identity()) CHECK(g.order() == 3);

  auto D = build_group(FieldElement::of(F, 0), FieldElement::of(F, 0));
  CHECK(D.order() == 3);
  CHECK(!D.warnings.empty());

  auto P = build_group(FieldElement::of(F, 1), b);
  CHECK(P.order() == 9);
  CHECK(P.contains(sigma({FieldElement::of(F, 0), b})));
}

TEST_CASE("fixed space dimensions", "[group]") {
  auto F = f3();
  auto zero = FieldElement::of(F, 0), one = FieldElement::of(F, 1);
  CHECK(fixed_space_dim(Mat3::identity(F)) == 3);
  CHECK(fixed_space_dim(sigma({zero, one})) == 2);
  CHECK(is_pseudo_reflection(sigma({zero, one})));
  CHECK(fixed_space_dim(sigma({one, zero})) == 1);
}

TEST_CASE("smallness examples", "[group]") {
  auto F = f81();
  std::mt19937_64 eng(41);
  for (int i = 0; i < 50; ++i) {
    auto a = sample_parameter(F, ParamConstraint::not_in_prime_subfield, eng());
    auto b = rand_elem(F, eng);
    CHECK(is_small(build_group(a, b)).small);
  }
  auto b = sample_parameter(F, ParamConstraint::nonzero, 3);
  auto v = is_small(build_group(FieldElement::of(F, 2), b));
  CHECK(!v.small);
  REQUIRE(v.witness);
  CHECK(is_pseudo_reflection(*v.witness));
  bool on_b_axis = false;
  for (long long n = 1; n < 3; ++n)
    on_b_axis = on_b_axis || *v.witness == sigma({FieldElement::of(F, 0), b * FieldElement::of(F, n)});
  CHECK(on_b_axis);

  MatrixGroup trivial = generate_group(F, {Mat3::identity(F)});
  CHECK(is_small(trivial).small);
}

TEST_CASE("smallness over F9 x F9 matches a outside F3", "[group][property]") {
  auto F = f9();
  for (Field::Code x = 0; x < 9; ++x)
    for (Field::Code y = 0; y < 9; ++y) {
      FieldElement a(F, x), b(F, y);
      auto G = build_group(a, b);
      if (F->in_prime_subfield(x) && y == 0) {
        // (1,0) and (a,0) are dependent: U collapses to order 3, with no pseudo-reflection
        REQUIRE(G.order() == 3);
        REQUIRE(is_small(G).small);
        continue;
      }
      REQUIRE(G.order() == 9);
      REQUIRE(is_small(G).small == !F->in_prime_subfield(x));
      if (!F->in_prime_subfield(x)) {
        // sigma is injective on U(a,b), and every non-identity element has order 3
        std::set<Mat3> images;
        for (long long m = 0; m < 3; ++m)
          for (long long n = 0; n < 3; ++n) {
            AdditivePair u{FieldElement::of(F, m) + FieldElement::of(F, n) * a, FieldElement::of(F, n) * b};
            images.insert(sigma(u));
          }
        REQUIRE(images.size() == 9);
        REQUIRE(std::set<Mat3>(G.elements.begin(), G.elements.end()) == images);
        for (const auto& g : G.elements)
          if (!g.is_identity()) REQUIRE(g.order() == 3);
      }
    }
}

TEST_CASE("normalize_embedding", "[group]") {
  auto F = f81();
  auto a = sample_parameter(F, ParamConstraint::not_in_prime_subfield, 5);
  auto b = sample_parameter(F, ParamConstraint::nonzero, 6);
  auto one = FieldElement::of(F, 1), zero = FieldElement::of(F, 0);
  auto n = normalize_embedding({one, zero}, {a, b});
  CHECK(n.c1 == a);
  CHECK(n.c2 == b);

  std::mt19937_64 eng(51);
  for (int i = 0; i < 200; ++i) {
    AdditivePair p{rand_elem(F, eng), rand_elem(F, eng)};
    AdditivePair p2{rand_elem(F, eng), rand_elem(F, eng)};
    if (p.c1.is_zero()) continue;
    auto r = normalize_embedding(p, p2);
    // U' = {u^-1 (c1, -u^-2 v c1 + u^-1 c2)} applied to both generators
    auto ui = p.c1.inverse();
    auto map = [&](const AdditivePair& c) {
      return AdditivePair{c.c1 * ui, ui * (-(p.c2 * c.c1 * ui * ui) + c.c2 * ui)};
    };
    CHECK(map(p).c1.is_one());
    CHECK(map(p).c2.is_zero());
    CHECK(in_span(map(p), r.c1, r.c2));
    CHECK(in_span(map(p2), r.c1, r.c2));
  }
  CHECK_THROWS_AS(normalize_embedding({zero, one}, {a, b}), PseudoReflectionForced);
}

TEST_CASE("action on polynomials", "[group]") {
  auto F = f81();
  auto R = xyz_ring(F);
  auto z = Poly::var(R, 2);
  auto one = FieldElement::of(F, 1), zero = FieldElement::of(F, 0);
  CHECK(act_on_poly(Mat3::identity(F), z + Poly::var(R, 0)) == z + Poly::var(R, 0));
  CHECK(act_on_poly(sigma({one, zero}), z) == z);

  std::mt19937_64 eng(61);
  for (int i = 0; i < 200; ++i) {
    AdditivePair c{rand_elem(F, eng), rand_elem(F, eng)};
    AdditivePair d{rand_elem(F, eng), rand_elem(F, eng)};
    auto g = sigma(c), h = sigma(d);
    auto f = wqtest::random_poly(R, eng, 4, 3);
    auto gf = act_on_poly(g, act_on_poly(h, f));
    // f o g o h under the f -> f o g convention
    REQUIRE(act_on_poly(h * g, f) == gf);
    REQUIRE(act_on_poly(g, f).total_degree() == f.total_degree());
    auto f2 = wqtest::random_poly(R, eng, 3, 2);
    REQUIRE(act_on_poly(g, f * f2) == act_on_poly(g, f) * act_on_poly(g, f2));
  }
}

TEST_CASE("centralizer of the cyclic permutation over F3", "[group]") {
  auto F = f3();
  auto Rm = cyclic_permutation_matrix(F);
  CHECK(Rm.order() == 3);
  CHECK(!is_pseudo_reflection(Rm));
  auto rep = centralizer_bruteforce(Rm);
  CHECK(rep.group_order == 5616);
  CHECK(rep.centralizer.size() == 9);
  CHECK(rep.span_form_size == 9);
  CHECK(rep.equals_span_form);
  CHECK(rep.abelian);
  CHECK(rep.contains_identity);
  for (const auto& A : rep.centralizer) CHECK(A * Rm == Rm * A);
}

TEST_CASE("SL(3,3) has the expected order", "[group]") {
  auto all = enumerate_sl3(f3());
  CHECK(all.size() == 5616);  // 3^3 (3^2 - 1)(3^3 - 1)
  for (const auto& g : all) REQUIRE(g.det() == 1);
}

TEST_CASE("order-9 subgroup structure over F3", "[group]") {
  auto rep = verify_small_3group_structure(f3(), 2, EnumerationScope::full_sl3);
  CHECK(rep.ambient_order == 5616);
  CHECK(rep.subgroups > 0);
  CHECK(rep.claim_holds());
  CHECK(rep.small_subgroups + rep.non_small_subgroups == rep.subgroups);
  if (rep.non_small_subgroups) {
    REQUIRE(rep.non_small_witness);
    CHECK(is_pseudo_reflection(*rep.non_small_witness));
  }
  auto cyc = verify_small_3group_structure(f3(), 1, EnumerationScope::full_sl3);
  CHECK(cyc.subgroups > 0);
  CHECK(cyc.elementary_abelian == cyc.subgroups);
}

TEST_CASE("unitriangular check over F9", "[group]") {
  auto rep = verify_small_3group_structure(f9(), 2, EnumerationScope::unitriangular);
  CHECK(rep.ambient_order == 729);
  CHECK(rep.small_subgroups > 0);
  CHECK(rep.claim_holds());
  for (const auto& s : rep.small_examples) CHECK(is_elementary_abelian_3(s));
}

TEST_CASE("enumeration budget guard", "[group]") {
  auto F = f9();
  CHECK_THROWS_AS(enumerate_sl3(F), EnumerationBudgetExceeded);
  CHECK_THROWS_AS(centralizer_bruteforce(cyclic_permutation_matrix(F)), EnumerationBudgetExceeded);
  CHECK_THROWS_AS(verify_small_3group_structure(F, 2, EnumerationScope::full_sl3), EnumerationBudgetExceeded);
}
