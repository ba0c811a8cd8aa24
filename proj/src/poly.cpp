#include "wildquot/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace wq {

Monomial Monomial::var(std::size_t i, unsigned power) {
  Monomial m;
  m.e[i] = static_cast<std::uint16_t>(power);
  return m;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned{a.e[i]} + b.e[i];
    if (s > std::numeric_limits<std::uint16_t>::max())
      throw ExponentOverflow("exponent exceeds 65535");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

bool mono_divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] > b.e[i]) return false;
  return true;
}

Monomial mono_div(const Monomial& b, const Monomial& a) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = b.e[i] - a.e[i];
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

PolyRing::PolyRing(FieldPtr field, std::vector<std::string> vars,
                   MonomialOrder order, std::vector<unsigned> weights)
    : field_(std::move(field)),
      vars_(std::move(vars)),
      order_(order),
      weights_(std::move(weights)) {}

RingPtr PolyRing::make(FieldPtr field, std::vector<std::string> vars,
                       MonomialOrder order, std::vector<unsigned> weights) {
  if (vars.size() > kMaxVars)
    throw InvalidArgument("at most " + std::to_string(kMaxVars) + " variables");
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw InvalidArgument("duplicate variable " + vars[i]);
  if (!weights.empty()) {
    if (weights.size() != vars.size())
      throw InvalidArgument("one weight per variable expected");
    for (auto w : weights)
      if (w < 1) throw InvalidArgument("weights must be positive");
  }
  return std::make_shared<const PolyRing>(std::move(field), std::move(vars), order,
                                          std::move(weights));
}

std::optional<std::size_t> PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

std::size_t PolyRing::require(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw UnknownVariable("'" + name + "' is not a variable of " + describe());
  return *i;
}

int PolyRing::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = vars_.size();
  if (!weights_.empty()) {
    unsigned long wa = 0, wb = 0;
    for (std::size_t i = 0; i < n; ++i) {
      wa += static_cast<unsigned long>(weights_[i]) * a.e[i];
      wb += static_cast<unsigned long>(weights_[i]) * b.e[i];
    }
    if (wa != wb) return wa > wb ? 1 : -1;
  }
  if (order_ == MonomialOrder::lex) {
    for (std::size_t i = 0; i < n; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
    return 0;
  }
  if (weights_.empty()) {
    unsigned da = a.total(), db = b.total();
    if (da != db) return da > db ? 1 : -1;
  }
  for (std::size_t i = n; i-- > 0;)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

bool PolyRing::same_as(const PolyRing& o) const {
  return this == &o || (field_->same_as(*o.field_) && vars_ == o.vars_ &&
                        order_ == o.order_ && weights_ == o.weights_);
}

std::string PolyRing::describe() const {
  std::ostringstream os;
  os << "F_" << field_->order() << '[';
  for (std::size_t i = 0; i < vars_.size(); ++i) os << (i ? "," : "") << vars_[i];
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------- Poly

Poly Poly::constant(const RingPtr& ring, const FieldElement& c) {
  if (!c.field()->same_as(*ring->field()))
    throw FieldMismatch("constant from another field");
  return monomial(ring, Monomial{}, c.code());
}

Poly Poly::constant(const RingPtr& ring, long long n) {
  return monomial(ring, Monomial{}, ring->field()->from_int(n));
}

Poly Poly::var(const RingPtr& ring, std::size_t i) {
  if (i >= ring->nvars()) throw UnknownVariable("variable index out of range");
  return monomial(ring, Monomial::var(i), 1);
}

Poly Poly::var(const RingPtr& ring, const std::string& name) {
  return var(ring, ring->require(name));
}

Poly Poly::monomial(const RingPtr& ring, const Monomial& m, Field::Code c) {
  Poly p(ring);
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(const RingPtr& ring, std::vector<Term> terms) {
  Poly p(ring);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void Poly::normalize() {
  const PolyRing& R = *ring_;
  const Field& F = *R.field();
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return R.greater(a.m, b.m); });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    Term t = terms_[i];
    std::size_t j = i + 1;
    while (j < terms_.size() && terms_[j].m == t.m) t.c = F.add(t.c, terms_[j++].c);
    if (t.c != 0) terms_[out++] = t;
    i = j;
  }
  terms_.resize(out);
}

void Poly::check_ring(const Poly& o) const {
  if (!ring_ || !o.ring_ || !ring_->same_as(*o.ring_))
    throw RingMismatch("operands live in different rings");
}

const Term& Poly::leading_term() const {
  if (terms_.empty()) throw ZeroPolynomial("zero polynomial has no leading term");
  return terms_.front();
}

FieldElement Poly::coeff(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.m == m) return {field(), t.c};
  return {field(), 0};
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.m.total());
  return d;
}

unsigned Poly::degree_in(std::size_t v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.m[v]);
  return d;
}

namespace {

// merge a + c*b where b's terms are already multiplied out, both sorted
std::vector<Term> merge_add(const PolyRing& R, const std::vector<Term>& a,
                            const std::vector<Term>& b) {
  const Field& F = *R.field();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = R.compare(a[i].m, b[j].m);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
    } else {
      Field::Code s = F.add(a[i].c, b[j].c);
      if (s) out.push_back({a[i].m, s});
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

}  // namespace

Poly Poly::operator+(const Poly& o) const {
  check_ring(o);
  Poly r(ring_);
  r.terms_ = merge_add(*ring_, terms_, o.terms_);
  return r;
}

Poly Poly::operator-() const {
  Poly r(*this);
  const Field& F = *field();
  for (auto& t : r.terms_) t.c = F.neg(t.c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::sub_mul(const Poly& g, const Monomial& m, Field::Code c) const {
  check_ring(g);
  const Field& F = *field();
  Field::Code nc = F.neg(c);
  std::vector<Term> tmp;
  tmp.reserve(g.terms_.size());
  for (const auto& t : g.terms_) tmp.push_back({mono_mul(t.m, m), F.mul(t.c, nc)});
  Poly r(ring_);
  r.terms_ = merge_add(*ring_, terms_, tmp);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  check_ring(o);
  Poly r(ring_);
  if (is_zero() || o.is_zero()) return r;
  const Field& F = *field();
  if (terms_.size() == 1 || o.terms_.size() == 1) {
    const Poly& mono = terms_.size() == 1 ? *this : o;
    const Poly& other = terms_.size() == 1 ? o : *this;
    return other.times_monomial(mono.terms_[0].m, mono.terms_[0].c);
  }
  std::unordered_map<Monomial, Field::Code, MonomialHash> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      auto& slot = acc[mono_mul(a.m, b.m)];
      slot = F.add(slot, F.mul(a.c, b.c));
    }
  r.terms_.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c) r.terms_.push_back({m, c});
  const PolyRing& R = *ring_;
  std::sort(r.terms_.begin(), r.terms_.end(),
            [&](const Term& x, const Term& y) { return R.greater(x.m, y.m); });
  return r;
}

Poly Poly::times_monomial(const Monomial& m, Field::Code c) const {
  Poly r(ring_);
  if (c == 0) return r;
  const Field& F = *field();
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({mono_mul(t.m, m), F.mul(t.c, c)});
  return r;
}

Poly Poly::scaled(Field::Code c) const { return times_monomial(Monomial{}, c); }

Poly Poly::scaled(const FieldElement& c) const {
  if (!c.field()->same_as(*field())) throw FieldMismatch("scalar from another field");
  return scaled(c.code());
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field()->inv(terms_.front().c));
}

bool Poly::operator==(const Poly& o) const {
  check_ring(o);
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

std::string render_monomial(const PolyRing& ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += '*';
    s += ring.vars()[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  const Field& F = *field();
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    std::string mono = render_monomial(*ring_, t.m);
    if (mono.empty()) {
      out += F.render(t.c);
    } else if (t.c == 1) {
      out += mono;
    } else {
      out += F.render(t.c) + '*' + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------- free functions

Poly substitute(const Poly& f, const std::vector<Poly>& images) {
  const std::size_t n = f.ring()->nvars();
  if (images.size() < n) throw MissingImage("every variable needs an image");
  RingPtr target;
  for (std::size_t i = 0; i < n; ++i) {
    if (!images[i].ring()) throw MissingImage("image of " + f.ring()->vars()[i] + " is unset");
    if (!target) {
      target = images[i].ring();
    } else if (!target->same_as(*images[i].ring())) {
      throw RingMismatch("substitution images live in different rings");
    }
  }
  if (!target) {
    // no variables: constants carry over only when fields agree
    throw MissingImage("substitution from a ring without variables needs a target");
  }
  if (!target->field()->same_as(*f.field()))
    throw FieldMismatch("substitution target has another base field");

  // cache powers per variable
  std::vector<std::vector<Poly>> powers(n);
  auto power = [&](std::size_t i, unsigned k) -> const Poly& {
    auto& v = powers[i];
    if (v.empty()) {
      v.push_back(Poly::constant(target, 1));
    }
    while (v.size() <= k) v.push_back(v.back() * images[i]);
    return v[k];
  };

  std::vector<Term> acc;
  for (const auto& t : f.terms()) {
    Poly prod = Poly::constant(target, FieldElement(f.field(), t.c));
    for (std::size_t i = 0; i < n && !prod.is_zero(); ++i)
      if (t.m[i]) prod = prod * power(i, t.m[i]);
    acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
  }
  return Poly::from_terms(target, std::move(acc));
}

Poly substitute(const Poly& f, const std::map<std::string, Poly>& images) {
  std::vector<Poly> v;
  for (const auto& name : f.ring()->vars()) {
    auto it = images.find(name);
    if (it == images.end()) throw MissingImage("no image given for " + name);
    v.push_back(it->second);
  }
  return substitute(f, v);
}

Poly change_ring(const Poly& f, const RingPtr& target) {
  if (!target->field()->same_as(*f.field()))
    throw FieldMismatch("change_ring across fields");
  const auto& src = f.ring()->vars();
  std::vector<std::size_t> where(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) where[i] = target->require(src[i]);
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < src.size(); ++i) m[where[i]] = t.m[i];
    terms.push_back({m, t.c});
  }
  return Poly::from_terms(target, std::move(terms));
}

Poly partial_derivative(const Poly& f, std::size_t v) {
  if (v >= f.ring()->nvars()) throw UnknownVariable("variable index out of range");
  const Field& F = *f.field();
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    if (!t.m[v]) continue;
    Field::Code c = F.mul(t.c, F.from_int(t.m[v]));
    if (!c) continue;
    Monomial m = t.m;
    --m[v];
    terms.push_back({m, c});
  }
  return Poly::from_terms(f.ring(), std::move(terms));
}

Poly partial_derivative(const Poly& f, const std::string& v) {
  return partial_derivative(f, f.ring()->require(v));
}

unsigned vanishing_order(const Poly& f, std::size_t v) {
  if (f.is_zero()) throw ZeroPolynomial("vanishing order of the zero polynomial");
  if (v >= f.ring()->nvars()) throw UnknownVariable("variable index out of range");
  unsigned best = std::numeric_limits<unsigned>::max();
  for (const auto& t : f.terms()) best = std::min<unsigned>(best, t.m[v]);
  return best;
}

unsigned vanishing_order(const Poly& f, const std::string& v) {
  return vanishing_order(f, f.ring()->require(v));
}

std::set<unsigned> weighted_degree_profile(const Poly& f,
                                           const std::vector<unsigned>& weights) {
  if (weights.size() < f.ring()->nvars())
    throw InvalidArgument("weights must cover every variable");
  std::set<unsigned> out;
  for (const auto& t : f.terms()) {
    unsigned d = 0;
    for (std::size_t i = 0; i < f.ring()->nvars(); ++i) d += weights[i] * t.m[i];
    out.insert(d);
  }
  return out;
}

FieldElement evaluate(const Poly& f, const std::vector<FieldElement>& point) {
  const std::size_t n = f.ring()->nvars();
  if (point.size() < n) throw InvalidArgument("point has too few coordinates");
  const Field& F = *f.field();
  for (std::size_t i = 0; i < n; ++i)
    if (!point[i].field()->same_as(F)) throw FieldMismatch("point from another field");
  Field::Code acc = 0;
  for (const auto& t : f.terms()) {
    Field::Code v = t.c;
    for (std::size_t i = 0; i < n && v; ++i)
      if (t.m[i]) v = F.mul(v, F.pow(point[i].code(), t.m[i]));
    acc = F.add(acc, v);
  }
  return {f.field(), acc};
}

Poly divide_by_monomial(const Poly& f, const Monomial& m) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    if (!mono_divides(m, t.m)) throw InvalidArgument("monomial does not divide every term");
    terms.push_back({mono_div(t.m, m), t.c});
  }
  // dividing by a monomial keeps the order only for order-compatible terms;
  // renormalize to be safe with weighted orders
  return Poly::from_terms(f.ring(), std::move(terms));
}

Poly divide_by_var_power(const Poly& f, std::size_t v, unsigned k) {
  return divide_by_monomial(f, Monomial::var(v, k));
}

Monomial monomial_content(const Poly& f) {
  if (f.is_zero()) return Monomial{};
  Monomial g = f.terms().front().m;
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < kMaxVars; ++i) g[i] = std::min<std::uint16_t>(g[i], t.m.e[i]);
  return g;
}

bool equal_up_to_scalar(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  return f.monic() == g.monic();
}

}  // namespace wq
