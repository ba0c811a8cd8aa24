#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace wq {

// Exact reduced fraction with positive denominator.
class Rational {
 public:
  Rational(std::int64_t num = 0, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  std::string to_string() const;  // "1", "-3", "1/3"

 private:
  std::int64_t num_;
  std::int64_t den_;
};

// diag(zeta^a_1, ..., zeta^a_d) for a primitive l-th root of unity zeta.
struct AgeVector {
  std::int64_t l = 1;
  std::vector<std::int64_t> exps;

  // ExponentOutOfRange unless l >= 1 and 0 <= a_i <= l - 1
  void validate() const;
  AgeVector inverse() const;  // exponents (l - a_i) mod l
  bool is_identity() const;
  bool faithful() const;  // gcd(l, a_1, ..., a_d) == 1
  // exactly one nonzero exponent: the element fixes a hyperplane
  bool is_pseudo_reflection() const;
  std::string to_string() const;
};

Rational age(const AgeVector& v);

enum class RstClass { terminal, canonical_not_terminal, not_canonical };
std::string rst_class_name(RstClass c);

struct RstVerdict {
  RstClass cls = RstClass::terminal;
  std::vector<Rational> ages;                    // one per non-identity element
  std::vector<std::string> pseudo_reflections;   // elements flagged on the way
  std::vector<std::string> non_faithful;
};

// Identity elements are skipped unless include_identity, in which case the
// identity contributes age 0 and forces not_canonical.
RstVerdict rst_classify(const std::vector<AgeVector>& elements, bool include_identity = false);

// The powers g, g^2, ..., g^(l-1) of one diagonal element.
std::vector<AgeVector> cyclic_group(const AgeVector& g);

}  // namespace wq
