#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wildquot/ff.hpp"
#include "wildquot/poly.hpp"

namespace wq {

struct Mat3 {
  FieldPtr field;
  std::array<Field::Code, 9> a{};  // row major

  static Mat3 identity(const FieldPtr& f);
  static Mat3 from_ints(const FieldPtr& f, const std::array<long long, 9>& v);

  Field::Code operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }
  FieldElement at(std::size_t i, std::size_t j) const { return {field, a[3 * i + j]}; }

  Mat3 operator*(const Mat3& o) const;
  Mat3 operator+(const Mat3& o) const;
  Mat3 scaled(Field::Code c) const;
  bool operator==(const Mat3& o) const { return a == o.a; }
  bool operator!=(const Mat3& o) const { return a != o.a; }
  bool operator<(const Mat3& o) const { return a < o.a; }

  bool is_identity() const;
  Field::Code det() const;
  Mat3 inverse() const;
  Mat3 pow(unsigned n) const;
  // multiplicative order, 0 if larger than `cap`
  unsigned order(unsigned cap = 1000) const;
  std::string to_string() const;
};

struct AdditivePair {
  FieldElement c1;
  FieldElement c2;

  AdditivePair operator+(const AdditivePair& o) const { return {c1 + o.c1, c2 + o.c2}; }
  AdditivePair times(long long n) const {
    auto k = FieldElement::of(c1.field(), n);
    return {c1 * k, c2 * k};
  }
};

// [[1, -c1, c1^2 + c2], [0, 1, c1], [0, 0, 1]]
Mat3 sigma(const AdditivePair& c);

struct MatrixGroup {
  FieldPtr field;
  std::vector<Mat3> elements;  // sorted, identity included
  std::vector<Mat3> generators;
  std::optional<AdditivePair> params;  // (a, b) when built from U(a, b)
  std::vector<std::string> warnings;

  std::size_t order() const { return elements.size(); }
  bool contains(const Mat3& g) const;
};

// Closure of the generators under multiplication (finite groups only).
MatrixGroup generate_group(const FieldPtr& f, const std::vector<Mat3>& gens,
                           std::size_t cap = 1u << 20);
// The image of U(a,b) = <(1,0),(a,b)> under sigma.
MatrixGroup build_group(const FieldElement& a, const FieldElement& b);

// 3 - rank(g - I)
unsigned fixed_space_dim(const Mat3& g);
inline bool is_pseudo_reflection(const Mat3& g) { return fixed_space_dim(g) == 2; }

struct SmallnessVerdict {
  bool small = true;
  std::optional<Mat3> witness;  // a pseudo-reflection when not small
};
SmallnessVerdict is_small(const MatrixGroup& G);

// Parameters (a, b) of the conjugate group generated by (1,0), (a,b).
AdditivePair normalize_embedding(const AdditivePair& u, const AdditivePair& u2);

// f -> f o g: variable i goes to sum_j g(i,j) x_j.
Poly act_on_poly(const Mat3& g, const Poly& f);

constexpr std::size_t kDefaultEnumerationBudget = 20000;

// All of SL(3, q), by running through the q^9 matrices. Throws
// EnumerationBudgetExceeded when q^9 exceeds the budget.
std::vector<Mat3> enumerate_sl3(const FieldPtr& f, std::size_t budget = kDefaultEnumerationBudget,
                                unsigned threads = 0);

struct CentralizerReport {
  std::size_t group_order = 0;  // |SL(3,q)|
  std::vector<Mat3> centralizer;
  std::size_t span_form_size = 0;  // |{aI + bR + cR^2 : a+b+c = 1}|
  bool equals_span_form = false;
  bool abelian = false;
  bool contains_identity = false;
};

CentralizerReport centralizer_bruteforce(const Mat3& R,
                                         std::size_t budget = kDefaultEnumerationBudget,
                                         unsigned threads = 0);

// The matrix with ones at (0,1), (1,2), (2,0).
Mat3 cyclic_permutation_matrix(const FieldPtr& f);

enum class EnumerationScope {
  full_sl3,       // every element of SL(3, q)
  unitriangular,  // upper unitriangular matrices; a Sylow 3-subgroup of SL(3, q)
};

struct SubgroupStructureReport {
  EnumerationScope scope = EnumerationScope::full_sl3;
  unsigned q = 0;
  unsigned r = 0;
  std::size_t ambient_order = 0;
  std::size_t order3_elements = 0;
  std::size_t pairs_examined = 0;
  std::size_t subgroups = 0;                    // subgroups of order 3^r found
  std::size_t small_subgroups = 0;
  std::size_t small_elementary_abelian = 0;
  std::size_t non_small_subgroups = 0;
  std::size_t elementary_abelian = 0;           // among all subgroups found
  std::optional<Mat3> non_small_witness;        // a pseudo-reflection in a non-small one
  std::vector<std::vector<Mat3>> small_examples;  // up to a few small subgroups
  bool claim_holds() const { return small_elementary_abelian == small_subgroups; }
  bool vacuous() const { return small_subgroups == 0; }
};

// Subgroups of order 3^r (r = 1 or 2) generated by order-3 elements.
SubgroupStructureReport verify_small_3group_structure(const FieldPtr& f, unsigned r,
                                                      EnumerationScope scope,
                                                      std::size_t budget = kDefaultEnumerationBudget,
                                                      unsigned threads = 0);

bool is_elementary_abelian_3(const std::vector<Mat3>& elements);

}  // namespace wq
