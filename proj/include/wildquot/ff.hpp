#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "wildquot/errors.hpp"

namespace wq {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_{p^k} as F_p[X]/(m(X)). An element is stored as an integer code whose
// base-p digits are its power-basis coordinates, lowest degree first.
class Field {
 public:
  using Code = std::uint32_t;

  // Largest field order we are willing to tabulate.
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 22;

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  Code order() const { return q_; }
  // Monic modulus, coefficients lowest degree first (length k+1).
  const std::vector<unsigned>& modulus() const { return modulus_; }
  Code primitive() const { return gen_; }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  Code from_int(long long n) const;
  Code from_coeffs(const std::vector<unsigned>& c) const;
  std::vector<unsigned> coeffs(Code x) const;

  Code add(Code x, Code y) const;
  Code sub(Code x, Code y) const { return add(x, neg(y)); }
  Code neg(Code x) const;
  Code mul(Code x, Code y) const {
    if (x == 0 || y == 0) return 0;
    return exp_[log_[x] + log_[y]];
  }
  Code inv(Code x) const;
  Code div(Code x, Code y) const { return mul(x, inv(y)); }
  Code pow(Code x, long long n) const;
  Code frobenius(Code x) const { return pow(x, p_); }
  bool in_prime_subfield(Code x) const { return x < p_; }

  // "2" for prime fields, "(c0,c1,...)" for proper extensions.
  std::string render(Code x) const;
  std::string describe() const;

  bool same_as(const Field& o) const {
    return this == &o || (p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_);
  }

  // Use make_field.
  Field(unsigned p, unsigned k, std::vector<unsigned> modulus);

 private:
  unsigned p_;
  unsigned k_;
  Code q_;
  std::vector<unsigned> modulus_;
  Code gen_ = 1;
  std::vector<Code> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;
  std::vector<std::uint16_t> add_table_;  // q*q when small
  std::vector<Code> neg_;

  Code add_digits(Code x, Code y) const;
  Code slow_mul(Code x, Code y) const;
};

// Deterministic choice of modulus: monic degree-k polynomials are walked in
// lexicographic order of (c_{k-1}, ..., c_0); seed s picks the s-th
// irreducible one (wrapping around).
FieldPtr make_field(unsigned p, unsigned k, std::uint64_t seed = 0);

bool is_prime(unsigned n);
// Irreducibility over F_p by trial division (coefficients lowest first, monic).
bool is_irreducible(const std::vector<unsigned>& f, unsigned p);

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr f, Field::Code c) : field_(std::move(f)), code_(c) {}

  static FieldElement of(const FieldPtr& f, long long n) {
    return FieldElement(f, f->from_int(n));
  }

  const FieldPtr& field() const { return field_; }
  Field::Code code() const { return code_; }
  std::vector<unsigned> coeffs() const { return field_->coeffs(code_); }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement pow(long long n) const { return {field_, field_->pow(code_, n)}; }
  FieldElement inverse() const;

  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  std::string to_string() const { return field_->render(code_); }

 private:
  void check_same(const FieldElement& o) const;

  FieldPtr field_;
  Field::Code code_ = 0;
};

enum class ParamConstraint { unconstrained, nonzero, not_in_prime_subfield };

// Uniform draw from mt19937_64(seed) by rejection on the raw output.
FieldElement sample_parameter(const FieldPtr& f, ParamConstraint c,
                              std::uint64_t seed);

// Uniform integer in [0, n) from a 64-bit engine, by rejection.
template <class Engine>
std::uint64_t uniform_below(Engine& eng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t r = eng();
    if (r < limit) return r % n;
  }
}

}  // namespace wq
