#include "wildquot/ff.hpp"

#include <random>
#include <sstream>

namespace wq {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using UPoly = std::vector<unsigned>;  // lowest degree first

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a by monic b over F_p
UPoly poly_rem(UPoly a, const UPoly& b, unsigned p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    unsigned lc = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = (a[shift + i] + (p - lc) * b[i]) % p;
    }
    trim(a);
  }
  return a;
}

}  // namespace

bool is_irreducible(const std::vector<unsigned>& f, unsigned p) {
  const std::size_t k = f.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  // try every monic divisor of degree 1..k/2
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      UPoly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t t = idx;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<unsigned>(t % p);
        t /= p;
      }
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

Field::Field(unsigned p, unsigned k, std::vector<unsigned> modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) q *= p;
  q_ = static_cast<Code>(q);

  neg_.resize(q_);
  for (Code x = 0; x < q_; ++x) {
    auto c = coeffs(x);
    for (auto& d : c) d = (p_ - d) % p_;
    neg_[x] = from_coeffs(c);
  }
  if (q_ <= 729) {
    add_table_.resize(std::size_t{q_} * q_);
    for (Code x = 0; x < q_; ++x)
      for (Code y = 0; y < q_; ++y)
        add_table_[std::size_t{x} * q_ + y] =
            static_cast<std::uint16_t>(add_digits(x, y));
  }

  // find a primitive element, smallest code first
  exp_.assign(2 * (q_ - 1), 0);
  log_.assign(q_, 0);
  if (q_ == 2) {
    gen_ = 1;
    exp_[0] = exp_[1] = 1;
    return;
  }
  for (Code g = 2; g < q_; ++g) {
    Code x = 1;
    Code n = 0;
    bool ok = true;
    do {
      exp_[n++] = x;
      x = slow_mul(x, g);
      if (x == 1 && n < q_ - 1) {
        ok = false;
        break;
      }
    } while (n < q_ - 1);
    if (ok && x == 1) {
      gen_ = g;
      break;
    }
  }
  for (Code i = 0; i < q_ - 1; ++i) {
    exp_[i + q_ - 1] = exp_[i];
    log_[exp_[i]] = i;
  }
}

Field::Code Field::add_digits(Code x, Code y) const {
  Code r = 0, place = 1;
  while (x || y) {
    r += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return r;
}

Field::Code Field::add(Code x, Code y) const {
  if (!add_table_.empty()) return add_table_[std::size_t{x} * q_ + y];
  return add_digits(x, y);
}

Field::Code Field::neg(Code x) const { return neg_[x]; }

Field::Code Field::slow_mul(Code x, Code y) const {
  auto a = coeffs(x), b = coeffs(y);
  UPoly prod(2 * k_, 0);
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = 0; j < k_; ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
  auto r = poly_rem(prod, modulus_, p_);
  r.resize(k_, 0);
  return from_coeffs(r);
}

Field::Code Field::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Code>(r);
}

Field::Code Field::from_coeffs(const std::vector<unsigned>& c) const {
  if (c.size() > k_) throw InvalidArgument("too many power-basis coefficients");
  Code r = 0, place = 1;
  for (unsigned d : c) {
    r += (d % p_) * place;
    place *= p_;
  }
  return r;
}

std::vector<unsigned> Field::coeffs(Code x) const {
  std::vector<unsigned> c(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    c[i] = x % p_;
    x /= p_;
  }
  return c;
}

Field::Code Field::inv(Code x) const {
  if (x == 0) throw DivisionByZero("inverse of zero in " + describe());
  if (x == 1) return 1;
  return exp_[(q_ - 1) - log_[x]];
}

Field::Code Field::pow(Code x, long long n) const {
  if (n == 0) return 1;
  if (x == 0) {
    if (n < 0) throw DivisionByZero("negative power of zero");
    return 0;
  }
  const long long m = q_ - 1;
  long long e = (static_cast<long long>(log_[x]) * (n % m)) % m;
  if (e < 0) e += m;
  return exp_[e];
}

std::string Field::render(Code x) const {
  if (k_ == 1) return std::to_string(x);
  std::ostringstream os;
  os << '(';
  auto c = coeffs(x);
  for (unsigned i = 0; i < k_; ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ')';
  return os.str();
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << q_ << " = F_" << p_ << "[X]/(";
  bool first = true;
  for (std::size_t i = modulus_.size(); i-- > 0;) {
    if (modulus_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (modulus_[i] != 1 || i == 0) os << modulus_[i];
    if (i > 0) {
      if (modulus_[i] != 1) os << '*';
      os << 'X';
      if (i > 1) os << '^' << i;
    }
  }
  if (first) os << '0';
  os << ')';
  return os.str();
}

FieldPtr make_field(unsigned p, unsigned k, std::uint64_t seed) {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (k < 1 || k > 8) throw InvalidArgument("extension degree must be in 1..8");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    q *= p;
    if (q > Field::kMaxOrder)
      throw ResourceBudgetExceeded("field of order " + std::to_string(p) + "^" +
                                   std::to_string(k) + " is too large to tabulate");
  }

  // walk monic degree-k polynomials; idx enumerates (c_{k-1},...,c_0) in
  // lexicographic order, i.e. c_0 varies fastest
  auto nth = [&](std::uint64_t idx) {
    std::vector<unsigned> f(k + 1, 0);
    f[k] = 1;
    for (unsigned i = 0; i < k; ++i) {
      f[i] = static_cast<unsigned>(idx % p);
      idx /= p;
    }
    return f;
  };
  std::vector<std::uint64_t> found;
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    if (is_irreducible(nth(idx), p)) {
      if (found.size() == seed) return std::make_shared<const Field>(p, k, nth(idx));
      found.push_back(idx);
    }
  }
  return std::make_shared<const Field>(p, k, nth(found[seed % found.size()]));
}

void FieldElement::check_same(const FieldElement& o) const {
  if (!field_ || !o.field_ || !field_->same_as(*o.field_))
    throw FieldMismatch("operands live in different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->add(code_, o.code_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->sub(code_, o.code_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->mul(code_, o.code_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
  check_same(o);
  return {field_, field_->div(code_, o.code_)};
}
FieldElement FieldElement::inverse() const { return {field_, field_->inv(code_)}; }

bool FieldElement::operator==(const FieldElement& o) const {
  check_same(o);
  return code_ == o.code_;
}

FieldElement sample_parameter(const FieldPtr& f, ParamConstraint c,
                              std::uint64_t seed) {
  if (c == ParamConstraint::not_in_prime_subfield && f->degree() == 1)
    throw InfeasibleConstraint("a prime field has no element outside F_p");
  if (c == ParamConstraint::nonzero && f->order() == 1)
    throw InfeasibleConstraint("no nonzero element");
  std::mt19937_64 eng(seed);
  for (;;) {
    auto x = static_cast<Field::Code>(uniform_below(eng, f->order()));
    if (c == ParamConstraint::nonzero && x == 0) continue;
    if (c == ParamConstraint::not_in_prime_subfield && f->in_prime_subfield(x))
      continue;
    return FieldElement(f, x);
  }
}

}  // namespace wq
