#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wildquot/ff.hpp"

namespace wq {

constexpr std::size_t kMaxVars = 8;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  unsigned operator[](std::size_t i) const { return e[i]; }
  std::uint16_t& operator[](std::size_t i) { return e[i]; }
  unsigned total() const {
    unsigned s = 0;
    for (auto x : e) s += x;
    return s;
  }
  bool is_one() const { return total() == 0; }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool operator!=(const Monomial& o) const { return e != o.e; }
  // arbitrary but fixed order for use as a map key
  bool operator<(const Monomial& o) const { return e < o.e; }

  static Monomial var(std::size_t i, unsigned power = 1);
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : m.e) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

Monomial mono_mul(const Monomial& a, const Monomial& b);
bool mono_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial mono_div(const Monomial& b, const Monomial& a);  // b / a, requires a | b
Monomial mono_lcm(const Monomial& a, const Monomial& b);
bool mono_coprime(const Monomial& a, const Monomial& b);

enum class MonomialOrder { lex, grevlex };

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

class PolyRing {
 public:
  static RingPtr make(FieldPtr field, std::vector<std::string> vars,
                      MonomialOrder order = MonomialOrder::grevlex,
                      std::vector<unsigned> weights = {});

  const FieldPtr& field() const { return field_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  MonomialOrder order() const { return order_; }
  const std::vector<unsigned>& weights() const { return weights_; }

  std::optional<std::size_t> index_of(const std::string& name) const;
  std::size_t require(const std::string& name) const;

  // > 0 when a is bigger than b in this ring's order
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  bool same_as(const PolyRing& o) const;
  std::string describe() const;

  PolyRing(FieldPtr field, std::vector<std::string> vars, MonomialOrder order,
           std::vector<unsigned> weights);

 private:
  FieldPtr field_;
  std::vector<std::string> vars_;
  MonomialOrder order_;
  std::vector<unsigned> weights_;
};

struct Term {
  Monomial m;
  Field::Code c;
};

class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(const RingPtr& ring, const FieldElement& c);
  static Poly constant(const RingPtr& ring, long long n);
  static Poly var(const RingPtr& ring, std::size_t i);
  static Poly var(const RingPtr& ring, const std::string& name);
  static Poly monomial(const RingPtr& ring, const Monomial& m, Field::Code c);
  // terms in any order, duplicates summed
  static Poly from_terms(const RingPtr& ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const FieldPtr& field() const { return ring_->field(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().m; }
  FieldElement leading_coeff() const { return {field(), leading_term().c}; }
  FieldElement coeff(const Monomial& m) const;
  FieldElement constant_term() const { return coeff(Monomial{}); }
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const FieldElement& c) const;
  Poly scaled(Field::Code c) const;
  Poly times_monomial(const Monomial& m, Field::Code c) const;
  Poly pow(unsigned n) const;
  Poly monic() const;

  // this - c*m*g, the reduction step
  Poly sub_mul(const Poly& g, const Monomial& m, Field::Code c) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_ring(const Poly& o) const;
  void normalize();

  RingPtr ring_;
  std::vector<Term> terms_;  // strictly descending, no zero coefficients
};

// Ring homomorphism: variable i of f's ring goes to images[i]. All images
// must live in one ring.
Poly substitute(const Poly& f, const std::vector<Poly>& images);
Poly substitute(const Poly& f, const std::map<std::string, Poly>& images);
// Same polynomial read in another ring whose variables include f's by name.
Poly change_ring(const Poly& f, const RingPtr& target);

Poly partial_derivative(const Poly& f, std::size_t var);
Poly partial_derivative(const Poly& f, const std::string& var);
unsigned vanishing_order(const Poly& f, std::size_t var);
unsigned vanishing_order(const Poly& f, const std::string& var);
std::set<unsigned> weighted_degree_profile(const Poly& f,
                                           const std::vector<unsigned>& weights);
FieldElement evaluate(const Poly& f, const std::vector<FieldElement>& point);
// f / var^k; throws InvalidArgument when not divisible
Poly divide_by_var_power(const Poly& f, std::size_t var, unsigned k);
// f / m for a monomial m dividing every term
Poly divide_by_monomial(const Poly& f, const Monomial& m);
// largest monomial dividing every term
Monomial monomial_content(const Poly& f);
// true when g = c*f for some nonzero scalar c
bool equal_up_to_scalar(const Poly& f, const Poly& g);

std::string render_monomial(const PolyRing& ring, const Monomial& m);

}  // namespace wq
