#include "wildquot/rst.hpp"

#include <numeric>

#include "wildquot/errors.hpp"

namespace wq {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DivisionByZero("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::operator+(const Rational& o) const {
  std::int64_t g = std::gcd(den_, o.den_);
  return Rational(num_ * (o.den_ / g) + o.num_ * (den_ / g), den_ / g * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num_, o.den_); }

bool Rational::operator<(const Rational& o) const {
  // denominators are positive
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

void AgeVector::validate() const {
  if (l < 1) throw ExponentOutOfRange("element order must be positive");
  for (auto a : exps)
    if (a < 0 || a > l - 1)
      throw ExponentOutOfRange("exponent " + std::to_string(a) + " outside [0, " + std::to_string(l - 1) + "]");
}

AgeVector AgeVector::inverse() const {
  validate();
  AgeVector v{l, {}};
  for (auto a : exps) v.exps.push_back((l - a) % l);
  return v;
}

bool AgeVector::is_identity() const {
  for (auto a : exps)
    if (a) return false;
  return true;
}

bool AgeVector::faithful() const {
  std::int64_t g = l;
  for (auto a : exps) g = std::gcd(g, a);
  return g == 1;
}

bool AgeVector::is_pseudo_reflection() const {
  std::size_t nz = 0;
  for (auto a : exps) nz += a != 0;
  return nz == 1;
}

std::string AgeVector::to_string() const {
  std::string s = "l=" + std::to_string(l) + " (";
  for (std::size_t i = 0; i < exps.size(); ++i) s += (i ? "," : "") + std::to_string(exps[i]);
  return s + ")";
}

Rational age(const AgeVector& v) {
  v.validate();
  std::int64_t sum = 0;
  for (auto a : v.exps) sum += a;
  return Rational(sum, v.l);
}

std::string rst_class_name(RstClass c) {
  switch (c) {
    case RstClass::terminal: return "terminal";
    case RstClass::canonical_not_terminal: return "canonical_not_terminal";
    case RstClass::not_canonical: return "not_canonical";
  }
  return "unknown";
}

RstVerdict rst_classify(const std::vector<AgeVector>& elements, bool include_identity) {
  RstVerdict v;
  bool all_ge = true, all_gt = true;
  const Rational one(1);
  for (const auto& g : elements) {
    g.validate();
    if (g.is_identity() && !include_identity) continue;
    if (g.is_pseudo_reflection()) v.pseudo_reflections.push_back(g.to_string());
    if (!g.faithful()) v.non_faithful.push_back(g.to_string());
    Rational a = age(g);
    v.ages.push_back(a);
    all_ge = all_ge && a >= one;
    all_gt = all_gt && a > one;
  }
  v.cls = all_gt ? RstClass::terminal : all_ge ? RstClass::canonical_not_terminal : RstClass::not_canonical;
  return v;
}

std::vector<AgeVector> cyclic_group(const AgeVector& g) {
  g.validate();
  std::vector<AgeVector> out;
  for (std::int64_t k = 1; k < g.l; ++k) {
    AgeVector p{g.l, {}};
    for (auto a : g.exps) p.exps.push_back(a * k % g.l);
    out.push_back(p);
  }
  return out;
}

}  // namespace wq
