#include "wildquot/group.hpp"

#include <algorithm>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "wildquot/linalg.hpp"

namespace wq {

Mat3 Mat3::identity(const FieldPtr& f) {
  Mat3 m{f, {}};
  m.a[0] = m.a[4] = m.a[8] = 1;
  return m;
}

Mat3 Mat3::from_ints(const FieldPtr& f, const std::array<long long, 9>& v) {
  Mat3 m{f, {}};
  for (std::size_t i = 0; i < 9; ++i) m.a[i] = f->from_int(v[i]);
  return m;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  const Field& F = *field;
  Mat3 r{field, {}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Field::Code s = 0;
      for (std::size_t k = 0; k < 3; ++k) s = F.add(s, F.mul(a[3 * i + k], o.a[3 * k + j]));
      r.a[3 * i + j] = s;
    }
  return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
  Mat3 r{field, {}};
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = field->add(a[i], o.a[i]);
  return r;
}

Mat3 Mat3::scaled(Field::Code c) const {
  Mat3 r{field, {}};
  for (std::size_t i = 0; i < 9; ++i) r.a[i] = field->mul(a[i], c);
  return r;
}

bool Mat3::is_identity() const {
  for (std::size_t i = 0; i < 9; ++i)
    if (a[i] != (i % 4 == 0 ? 1u : 0u)) return false;
  return true;
}

Field::Code Mat3::det() const {
  const Field& F = *field;
  auto m = [&](Field::Code x, Field::Code y, Field::Code z) { return F.mul(F.mul(x, y), z); };
  Field::Code pos = F.add(F.add(m(a[0], a[4], a[8]), m(a[1], a[5], a[6])), m(a[2], a[3], a[7]));
  Field::Code neg = F.add(F.add(m(a[2], a[4], a[6]), m(a[0], a[5], a[7])), m(a[1], a[3], a[8]));
  return F.sub(pos, neg);
}

Mat3 Mat3::inverse() const {
  const Field& F = *field;
  Field::Code d = det();
  if (!d) throw DivisionByZero("singular matrix has no inverse");
  Field::Code di = F.inv(d);
  auto c = [&](std::size_t i, std::size_t j) { return a[3 * i + j]; };
  Mat3 r{field, {}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      // adjugate entry (i,j) is the cofactor of (j,i)
      std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      Field::Code cof = F.sub(F.mul(c(r0, c0), c(r1, c1)), F.mul(c(r0, c1), c(r1, c0)));
      r.a[3 * i + j] = F.mul(cof, di);
    }
  return r;
}

Mat3 Mat3::pow(unsigned n) const {
  Mat3 r = identity(field), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

unsigned Mat3::order(unsigned cap) const {
  Mat3 x = *this;
  for (unsigned n = 1; n <= cap; ++n) {
    if (x.is_identity()) return n;
    x = x * *this;
  }
  return 0;
}

std::string Mat3::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < 3; ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < 3; ++j) os << (j ? "," : "") << field->render(a[3 * i + j]);
    os << ']';
  }
  os << ']';
  return os.str();
}

Mat3 sigma(const AdditivePair& c) {
  const FieldPtr& f = c.c1.field();
  if (!c.c2.field()->same_as(*f)) throw FieldMismatch("pair entries from different fields");
  Mat3 m = Mat3::identity(f);
  m.a[1] = (-c.c1).code();
  m.a[2] = (c.c1 * c.c1 + c.c2).code();
  m.a[5] = c.c1.code();
  return m;
}

bool MatrixGroup::contains(const Mat3& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

MatrixGroup generate_group(const FieldPtr& f, const std::vector<Mat3>& gens, std::size_t cap) {
  MatrixGroup G;
  G.field = f;
  G.generators = gens;
  std::vector<Mat3> elems{Mat3::identity(f)};
  std::set<Mat3> seen(elems.begin(), elems.end());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      Mat3 y = elems[i] * g;
      if (seen.insert(y).second) {
        elems.push_back(y);
        if (elems.size() > cap) throw EnumerationBudgetExceeded("group closure exceeded cap");
      }
    }
  }
  G.elements.assign(seen.begin(), seen.end());
  return G;
}

MatrixGroup build_group(const FieldElement& a, const FieldElement& b) {
  const FieldPtr& f = a.field();
  if (!b.field()->same_as(*f)) throw FieldMismatch("a and b from different fields");
  auto zero = FieldElement(f, 0), one = FieldElement(f, 1);
  MatrixGroup G = generate_group(f, {sigma({one, zero}), sigma({a, b})});
  G.params = AdditivePair{a, b};
  if (f->characteristic() != 3) G.warnings.push_back("characteristic is not 3");
  if (G.order() != 9)
    G.warnings.push_back("(1,0) and (a,b) are dependent over F_3; group has order " +
                         std::to_string(G.order()));
  return G;
}

unsigned fixed_space_dim(const Mat3& g) {
  Matrix m(g.field, 3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      m.at(i, j) = i == j ? g.field->sub(g(i, j), 1) : g(i, j);
  return 3 - static_cast<unsigned>(rank(m));
}

SmallnessVerdict is_small(const MatrixGroup& G) {
  for (const auto& g : G.elements) {
    if (g.is_identity()) continue;
    if (is_pseudo_reflection(g)) return {false, g};
  }
  return {true, std::nullopt};
}

AdditivePair normalize_embedding(const AdditivePair& u1, const AdditivePair& u2) {
  const FieldElement& u = u1.c1;
  const FieldElement& v = u1.c2;
  if (u.is_zero())
    throw PseudoReflectionForced("first generator has u = 0, so sigma(u, v) fixes a plane");
  FieldElement ui = u.inverse();
  // image of (u', v') under (c1, c2) -> u^-1 (c1, -u^-2 v c1 + u^-1 c2)
  FieldElement a = ui * u2.c1;
  FieldElement b = -(ui * ui * ui * v * u2.c1) + ui * ui * u2.c2;
  return {a, b};
}

Poly act_on_poly(const Mat3& g, const Poly& f) {
  const RingPtr& R = f.ring();
  if (R->nvars() != 3) throw RingMismatch("the action needs a ring in three variables");
  if (!R->field()->same_as(*g.field)) throw FieldMismatch("matrix and polynomial fields differ");
  std::vector<Poly> images;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<Term> t;
    for (std::size_t j = 0; j < 3; ++j)
      if (g(i, j)) t.push_back({Monomial::var(j), g(i, j)});
    images.push_back(Poly::from_terms(R, std::move(t)));
  }
  return substitute(f, images);
}

namespace {

unsigned resolve_threads(unsigned threads) {
  if (threads) return threads;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

std::size_t checked_power(std::size_t base, unsigned e, std::size_t budget, const char* what) {
  std::size_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > budget / base)
      throw EnumerationBudgetExceeded(std::string(what) + ": q^" + std::to_string(e) +
                                      " candidates exceed the budget of " +
                                      std::to_string(budget));
    r *= base;
  }
  if (r > budget)
    throw EnumerationBudgetExceeded(std::string(what) + ": candidates exceed the budget");
  return r;
}

}  // namespace

std::vector<Mat3> enumerate_sl3(const FieldPtr& f, std::size_t budget, unsigned threads) {
  const std::size_t q = f->order();
  const std::size_t total = checked_power(q, 9, budget, "SL(3,q) enumeration");
  const unsigned T = resolve_threads(threads);
  auto shard = [&](std::size_t lo, std::size_t hi) {
    std::vector<Mat3> out;
    for (std::size_t idx = lo; idx < hi; ++idx) {
      Mat3 m{f, {}};
      std::size_t t = idx;
      for (std::size_t k = 9; k-- > 0;) {
        m.a[k] = static_cast<Field::Code>(t % q);
        t /= q;
      }
      if (m.det() == 1) out.push_back(m);
    }
    return out;
  };
  std::vector<std::future<std::vector<Mat3>>> parts;
  const std::size_t step = (total + T - 1) / T;
  for (std::size_t lo = 0; lo < total; lo += step)
    parts.push_back(std::async(std::launch::async, shard, lo, std::min(total, lo + step)));
  std::vector<Mat3> all;
  for (auto& p : parts) {
    auto v = p.get();
    all.insert(all.end(), v.begin(), v.end());
  }
  return all;  // already in lexicographic order of entries
}

Mat3 cyclic_permutation_matrix(const FieldPtr& f) {
  return Mat3::from_ints(f, {0, 1, 0, 0, 0, 1, 1, 0, 0});
}

CentralizerReport centralizer_bruteforce(const Mat3& R, std::size_t budget, unsigned threads) {
  const FieldPtr& f = R.field;
  CentralizerReport rep;
  auto sl = enumerate_sl3(f, budget, threads);
  rep.group_order = sl.size();
  for (const auto& A : sl)
    if (A * R == R * A) rep.centralizer.push_back(A);

  // independent description: a I + b R + c R^2 with a + b + c = 1
  std::set<Mat3> span;
  const Field& F = *f;
  Mat3 I = Mat3::identity(f), R2 = R * R;
  for (Field::Code a = 0; a < F.order(); ++a)
    for (Field::Code b = 0; b < F.order(); ++b) {
      Field::Code c = F.sub(F.sub(1, a), b);
      span.insert(I.scaled(a) + R.scaled(b) + R2.scaled(c));
    }
  rep.span_form_size = span.size();
  std::set<Mat3> cent(rep.centralizer.begin(), rep.centralizer.end());
  rep.equals_span_form = cent == span;
  rep.contains_identity = cent.count(I) > 0;
  rep.abelian = true;
  for (const auto& x : rep.centralizer)
    for (const auto& y : rep.centralizer)
      if (x * y != y * x) {
        rep.abelian = false;
        break;
      }
  return rep;
}

bool is_elementary_abelian_3(const std::vector<Mat3>& elements) {
  for (const auto& g : elements) {
    if (g.is_identity()) continue;
    if (!(g * g * g).is_identity()) return false;
  }
  for (const auto& x : elements)
    for (const auto& y : elements)
      if (x * y != y * x) return false;
  return true;
}

SubgroupStructureReport verify_small_3group_structure(const FieldPtr& f, unsigned r,
                                                      EnumerationScope scope,
                                                      std::size_t budget, unsigned threads) {
  if (f->characteristic() != 3) throw InvalidArgument("3-subgroups are checked in characteristic 3");
  if (r != 1 && r != 2) throw InvalidArgument("only r = 1 and r = 2 are enumerable");
  SubgroupStructureReport rep;
  rep.scope = scope;
  rep.q = f->order();
  rep.r = r;

  std::vector<Mat3> ambient;
  if (scope == EnumerationScope::full_sl3) {
    ambient = enumerate_sl3(f, budget, threads);
  } else {
    const std::size_t q = f->order();
    checked_power(q, 3, budget, "unitriangular enumeration");
    for (Field::Code x = 0; x < q; ++x)
      for (Field::Code y = 0; y < q; ++y)
        for (Field::Code z = 0; z < q; ++z) {
          Mat3 m = Mat3::identity(f);
          m.a[1] = x;
          m.a[2] = y;
          m.a[5] = z;
          ambient.push_back(m);
        }
  }
  rep.ambient_order = ambient.size();

  std::vector<Mat3> order3;
  for (const auto& g : ambient)
    if (!g.is_identity() && (g * g * g).is_identity()) order3.push_back(g);
  rep.order3_elements = order3.size();

  const std::size_t target = r == 1 ? 3 : 9;
  const Mat3 I = Mat3::identity(f);

  // closure of <g, h>, giving up once it passes `target` elements
  auto closure = [&](const std::vector<const Mat3*>& gens, std::vector<Mat3>& elems) {
    elems.assign(1, I);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (const Mat3* g : gens) {
        Mat3 y = elems[i] * *g;
        if (std::find(elems.begin(), elems.end(), y) == elems.end()) {
          elems.push_back(y);
          if (elems.size() > target) return false;
        }
      }
    return true;
  };

  using Key = std::vector<Mat3>;
  const unsigned T = resolve_threads(threads);
  auto shard = [&](unsigned which) {
    std::set<Key> found;
    std::size_t pairs = 0;
    std::vector<Mat3> elems;
    for (std::size_t i = which; i < order3.size(); i += T) {
      if (r == 1) {
        ++pairs;
        if (closure({&order3[i]}, elems) && elems.size() == target) {
          std::sort(elems.begin(), elems.end());
          found.insert(elems);
        }
        continue;
      }
      for (std::size_t j = i + 1; j < order3.size(); ++j) {
        ++pairs;
        if (closure({&order3[i], &order3[j]}, elems) && elems.size() == target) {
          std::sort(elems.begin(), elems.end());
          found.insert(elems);
        }
      }
    }
    return std::make_pair(found, pairs);
  };
  std::vector<std::future<std::pair<std::set<Key>, std::size_t>>> parts;
  for (unsigned t = 0; t < T; ++t) parts.push_back(std::async(std::launch::async, shard, t));
  std::set<Key> subgroups;
  for (auto& p : parts) {
    auto [s, n] = p.get();
    subgroups.insert(s.begin(), s.end());
    rep.pairs_examined += n;
  }

  rep.subgroups = subgroups.size();
  for (const auto& H : subgroups) {
    bool ea = is_elementary_abelian_3(H);
    if (ea) ++rep.elementary_abelian;
    std::optional<Mat3> refl;
    for (const auto& g : H)
      if (!g.is_identity() && is_pseudo_reflection(g)) {
        refl = g;
        break;
      }
    if (refl) {
      ++rep.non_small_subgroups;
      if (!rep.non_small_witness) rep.non_small_witness = refl;
    } else {
      ++rep.small_subgroups;
      if (ea) ++rep.small_elementary_abelian;
      if (rep.small_examples.size() < 3) rep.small_examples.push_back(H);
    }
  }
  return rep;
}

}  // namespace wq
