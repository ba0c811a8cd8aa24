#include "wildquot/invariants.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "wildquot/linalg.hpp"

namespace wq {

RingPtr xyz_ring(const FieldPtr& f) { return PolyRing::make(f, {"x", "y", "z"}); }

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  Monomial m;
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i + 1 == nvars) {
      m[i] = static_cast<std::uint16_t>(left);
      out.push_back(m);
      return;
    }
    for (unsigned e = left + 1; e-- > 0;) {
      m[i] = static_cast<std::uint16_t>(e);
      rec(i + 1, left - e);
    }
  };
  if (nvars == 0) return d == 0 ? std::vector<Monomial>{Monomial{}} : out;
  rec(0, d);
  // descending grevlex: for equal degree, smaller exponent in the last
  // differing variable (from the right) is bigger
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    for (std::size_t i = nvars; i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  });
  return out;
}

namespace {

std::map<Monomial, std::size_t> index_map(const std::vector<Monomial>& ms) {
  std::map<Monomial, std::size_t> idx;
  for (std::size_t i = 0; i < ms.size(); ++i) idx[ms[i]] = i;
  return idx;
}

Vec to_vec(const Poly& f, const std::map<Monomial, std::size_t>& idx) {
  Vec v(idx.size(), 0);
  for (const auto& t : f.terms()) {
    auto it = idx.find(t.m);
    if (it == idx.end()) throw InvalidArgument("polynomial is not homogeneous of the expected degree");
    v[it->second] = t.c;
  }
  return v;
}

Poly from_vec(const Vec& v, const std::vector<Monomial>& ms, const RingPtr& ring) {
  std::vector<Term> t;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) t.push_back({ms[i], v[i]});
  return Poly::from_terms(ring, std::move(t));
}

}  // namespace

std::vector<Poly> invariant_basis(const MatrixGroup& G, unsigned d, const RingPtr& ring) {
  const FieldPtr& F = ring->field();
  const auto ms = monomials_of_degree(ring->nvars(), d);
  const auto idx = index_map(ms);
  const std::vector<Mat3>& gens = G.generators.empty() ? G.elements : G.generators;

  std::vector<Mat3> active;
  for (const auto& g : gens)
    if (!g.is_identity()) active.push_back(g);

  Matrix A(F, std::max<std::size_t>(1, active.size() * ms.size()), ms.size());
  for (std::size_t gi = 0; gi < active.size(); ++gi)
    for (std::size_t j = 0; j < ms.size(); ++j) {
      Poly img = act_on_poly(active[gi], Poly::monomial(ring, ms[j], 1));
      for (const auto& t : img.terms()) {
        std::size_t row = gi * ms.size() + idx.at(t.m);
        A.at(row, j) = F->add(A.at(row, j), t.c);
      }
      std::size_t row = gi * ms.size() + j;
      A.at(row, j) = F->sub(A.at(row, j), 1);
    }
  auto kernel = nullspace(A);
  // canonical echelon form of the kernel
  Matrix K(F, kernel.size(), ms.size());
  for (std::size_t i = 0; i < kernel.size(); ++i)
    for (std::size_t j = 0; j < ms.size(); ++j) K.at(i, j) = kernel[i][j];
  rref(K);
  std::vector<Poly> out;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    Vec row(K.data.begin() + static_cast<std::ptrdiff_t>(i * ms.size()),
            K.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * ms.size()));
    out.push_back(from_vec(row, ms, ring));
  }
  return out;
}

Poly orbit_product(const MatrixGroup& G, const Poly& f) {
  std::vector<Poly> orbit;
  for (const auto& g : G.elements) {
    Poly img = act_on_poly(g, f);
    if (std::find(orbit.begin(), orbit.end(), img) == orbit.end()) orbit.push_back(img);
  }
  Poly prod = Poly::constant(f.ring(), 1);
  for (const auto& p : orbit) prod = prod * p;
  return prod;
}

std::vector<unsigned> GeneratorSet::degrees() const {
  std::vector<unsigned> d;
  for (const auto& g : gens) d.push_back(g.degree);
  return d;
}

std::vector<Poly> GeneratorSet::polys() const {
  std::vector<Poly> p;
  for (const auto& g : gens) p.push_back(g.poly);
  return p;
}

namespace {

// all products prod g_i^{e_i} with sum e_i deg_i = d
void products_of_degree(const std::vector<Generator>& gens, unsigned d,
                        const std::function<void(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> e(gens.size(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == gens.size()) {
      if (left == 0) visit(e);
      return;
    }
    for (unsigned k = 0; k * gens[i].degree <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k * gens[i].degree);
    }
    e[i] = 0;
  };
  rec(0, d);
}

class PowerCache {
 public:
  explicit PowerCache(const std::vector<Poly>& base) : base_(base), pw_(base.size()) {}
  const Poly& get(std::size_t i, unsigned k) {
    auto& v = pw_[i];
    if (v.empty()) v.push_back(Poly::constant(base_[i].ring(), 1));
    while (v.size() <= k) v.push_back(v.back() * base_[i]);
    return v[k];
  }
  Poly product(const std::vector<unsigned>& e) {
    Poly r = Poly::constant(base_[0].ring(), 1);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) r = r * get(i, e[i]);
    return r;
  }

 private:
  std::vector<Poly> base_;
  std::vector<std::vector<Poly>> pw_;
};

}  // namespace

GeneratorSet minimal_generators(const MatrixGroup& G, unsigned cap, const RingPtr& ring) {
  if (cap < 1) throw InvalidArgument("degree cap must be at least 1");
  GeneratorSet gs;
  gs.source_ring = ring;
  gs.cap = cap;

  // orbit products of the coordinates, grouped by degree
  std::map<unsigned, std::vector<std::pair<Poly, std::string>>> orbit_cands;
  for (std::size_t v = 0; v < ring->nvars(); ++v) {
    Poly n = orbit_product(G, Poly::var(ring, v));
    orbit_cands[n.total_degree()].push_back({n, "orbit product of " + ring->vars()[v]});
  }

  std::vector<Generator> picked;
  for (unsigned d = 1; d <= cap; ++d) {
    auto basis = invariant_basis(G, d, ring);
    gs.invariant_dims[d] = basis.size();
    const auto ms = monomials_of_degree(ring->nvars(), d);
    const auto idx = index_map(ms);
    EchelonBasis E(ring->field(), ms.size());
    if (!picked.empty()) {
      std::vector<Poly> base;
      for (const auto& g : picked) base.push_back(g.poly);
      PowerCache pc(base);
      products_of_degree(picked, d, [&](const std::vector<unsigned>& e) {
        E.insert(to_vec(pc.product(e), idx));
      });
    }
    if (E.size() == basis.size()) continue;
    std::vector<Generator> here;
    for (const auto& [p, origin] : orbit_cands[d])
      if (E.insert(to_vec(p, idx))) here.push_back({"", p, d, origin});
    for (const auto& b : basis) {
      Vec r = E.reduce(to_vec(b, idx));
      if (std::all_of(r.begin(), r.end(), [](Field::Code c) { return c == 0; })) continue;
      E.insert(r);
      here.push_back({"", from_vec(r, ms, ring).monic(), d, "invariant basis"});
    }
    picked.insert(picked.end(), here.begin(), here.end());
  }

  const PolyRing& R = *ring;
  std::stable_sort(picked.begin(), picked.end(), [&](const Generator& a, const Generator& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return R.compare(a.poly.leading_monomial(), b.poly.leading_monomial()) < 0;
  });
  for (std::size_t i = 0; i < picked.size(); ++i) picked[i].name = "x" + std::to_string(i + 1);
  gs.gens = std::move(picked);

  if (gs.gens.empty() || generic_rank_check(gs, 8, 0x5eed) < ring->nvars())
    throw CapTooSmall("generators found up to degree " + std::to_string(cap) +
                      " do not reach the full transcendence degree");
  return gs;
}

FittedRelation fit_relation(const GeneratorSet& gs, unsigned degree_cap) {
  const auto& gens = gs.gens;
  if (gens.empty()) throw InvalidArgument("no generators to relate");
  std::vector<std::string> names;
  std::vector<unsigned> weights;
  std::vector<Poly> polys;
  for (const auto& g : gens) {
    names.push_back(g.name);
    weights.push_back(g.degree);
    polys.push_back(g.poly);
  }
  const FieldPtr& F = gs.source_ring->field();
  RingPtr rel_ring = PolyRing::make(F, names, MonomialOrder::grevlex, weights);
  PowerCache pc(polys);

  for (unsigned D = 1; D <= degree_cap; ++D) {
    std::vector<std::vector<unsigned>> exps;
    products_of_degree(gens, D, [&](const std::vector<unsigned>& e) { exps.push_back(e); });
    if (exps.size() < 2) continue;
    const auto ms = monomials_of_degree(gs.source_ring->nvars(), D);
    const auto idx = index_map(ms);
    Matrix M(F, ms.size(), exps.size());
    for (std::size_t j = 0; j < exps.size(); ++j) {
      Vec v = to_vec(pc.product(exps[j]), idx);
      for (std::size_t i = 0; i < ms.size(); ++i) M.at(i, j) = v[i];
    }
    auto kernel = nullspace(M);
    if (kernel.empty()) continue;

    std::vector<Term> terms;
    for (std::size_t j = 0; j < exps.size(); ++j) {
      if (!kernel[0][j]) continue;
      Monomial m;
      for (std::size_t i = 0; i < exps[j].size(); ++i) m[i] = static_cast<std::uint16_t>(exps[j][i]);
      terms.push_back({m, kernel[0][j]});
    }
    FittedRelation fr;
    fr.ring = rel_ring;
    fr.relation = Poly::from_terms(rel_ring, std::move(terms)).monic();
    fr.weighted_degree = D;
    fr.kernel_dim = kernel.size();
    fr.substitutes_to_zero = substitute(fr.relation, polys).is_zero();
    return fr;
  }
  throw NoRelationFound("no relation of weighted degree <= " + std::to_string(degree_cap) +
                        "; try a larger cap");
}

unsigned generic_rank_check(const std::vector<Poly>& gens, unsigned trials, std::uint64_t seed) {
  if (gens.empty() || trials == 0) return 0;
  const RingPtr& ring = gens[0].ring();
  const FieldPtr& F = ring->field();
  const std::size_t n = ring->nvars();
  std::vector<std::vector<Poly>> jac(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(partial_derivative(gens[i], j));
  std::mt19937_64 eng(seed);
  unsigned best = 0;
  for (unsigned t = 0; t < trials; ++t) {
    std::vector<FieldElement> pt;
    for (std::size_t j = 0; j < n; ++j)
      pt.emplace_back(F, static_cast<Field::Code>(uniform_below(eng, F->order())));
    Matrix M(F, gens.size(), n);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) M.at(i, j) = evaluate(jac[i][j], pt).code();
    best = std::max<unsigned>(best, static_cast<unsigned>(rank(M)));
  }
  return best;
}

unsigned generic_rank_check(const GeneratorSet& gs, unsigned trials, std::uint64_t seed) {
  return generic_rank_check(gs.polys(), trials, seed);
}

// ---------------------------------------------------------------- reference

std::string case_name(CaseKind k) { return k == CaseKind::b0 ? "b0" : "bne0"; }

std::vector<ReferenceRelation> reference_relations(CaseKind kind) {
  using B = TermBlock;
  if (kind == CaseKind::b0) {
    // x2^9 - x3^2 + x1^9 x4 + x1^6 H(x1, x2)
    ReferenceRelation r{"statement", kind, {}};
    r.terms = {
        {"1", {0, 9, 0, 0}, B::explicit_term, "x2^9"},
        {"-1", {0, 0, 2, 0}, B::explicit_term, "-x3^2"},
        {"1", {9, 0, 0, 1}, B::explicit_term, "x1^9*x4"},
        {"1+alpha^2", {6, 6, 0, 0}, B::h_block, "(1+alpha^2)*x2^6"},
        {"-alpha^2", {8, 5, 0, 0}, B::h_block, "-alpha^2*x1^2*x2^5"},
        {"(1+alpha^2)^2", {12, 2, 0, 0}, B::h_block, "(1+alpha^2)^2*x1^6*x2^2"},
        {"alpha^2*(1+alpha^2)", {14, 2, 0, 0}, B::h_block, "alpha^2*(1+alpha^2)*x1^8*x2^2"},
        {"alpha^4", {16, 1, 0, 0}, B::h_block, "alpha^4*x1^10*x2"},
    };
    return {r};
  }
  // F block, prefactor x1^3
  std::vector<ReferenceTerm> f_block = {
      {"c1", {3, 4, 0, 0}, B::f_block, "c1*s2^4"},
      {"c2", {4, 2, 1, 0}, B::f_block, "c2*s1*s2^2*s3"},
      {"c3", {5, 0, 2, 0}, B::f_block, "c3*s1^2*s3^2"},
      {"c4", {6, 3, 0, 0}, B::f_block, "c4*s1^3*s2^3"},
      {"c5", {7, 1, 1, 0}, B::f_block, "c5*s1^4*s2*s3"},
      {"c6", {9, 3, 0, 0}, B::f_block, "c6*s1^6*s2^3"},
      {"c7", {10, 0, 1, 0}, B::f_block, "c7*s1^7*s3"},
  };
  ReferenceRelation statement{"statement", kind, {}};
  statement.terms = {
      {"alpha*b^2", {0, 5, 0, 0}, B::explicit_term, "alpha*b^2*x2^5"},
      {"-b^4", {0, 0, 3, 0}, B::explicit_term, "-b^4*x3^3"},
      {"-b^10", {6, 0, 0, 1}, B::explicit_term, "-b^10*x1^6*x4"},
      {"alpha*b^2", {1, 3, 1, 0}, B::explicit_term, "alpha*b^2*x1*x2^3*x3"},
  };
  statement.terms.insert(statement.terms.end(), f_block.begin(), f_block.end());
  ReferenceRelation proof{"proof", kind, {}};
  proof.terms = {
      {"alpha^3*b^2", {0, 5, 0, 0}, B::explicit_term, "alpha^3*b^2*x2^5"},
      {"-b^4", {0, 0, 3, 0}, B::explicit_term, "-b^4*x3^3"},
      {"-b^10", {6, 0, 0, 1}, B::explicit_term, "-b^10*x1^6*x4"},
  };
  proof.terms.insert(proof.terms.end(), f_block.begin(), f_block.end());
  return {statement, proof};
}

namespace {

Monomial mono4(const std::array<unsigned, 4>& e) {
  Monomial m;
  for (std::size_t i = 0; i < 4; ++i) m[i] = static_cast<std::uint16_t>(e[i]);
  return m;
}

unsigned wdeg(const Monomial& m, const std::vector<unsigned>& w) {
  unsigned d = 0;
  for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * m[i];
  return d;
}

}  // namespace

ReferenceComparison compare_with_reference(const FittedRelation& fit,
                                           const ReferenceRelation& ref,
                                           const Constants& consts) {
  ReferenceComparison rep;
  rep.variant = ref.variant;
  rep.kind = ref.kind;
  rep.relation_degree = fit.weighted_degree;
  rep.weights = fit.ring->weights();
  const FieldPtr& F = fit.ring->field();
  const Field& FF = *F;
  const RingPtr scalars = PolyRing::make(F, {});
  const auto& w = rep.weights;

  if (fit.ring->nvars() != 4) {
    rep.consistent = false;
    rep.mismatched = ref.terms.size();
    return rep;
  }

  // fitted coefficients by monomial
  std::map<Monomial, Field::Code> R;
  for (const auto& t : fit.relation.terms()) R[t.m] = t.c;
  auto fitted_at = [&](const Monomial& m) -> Field::Code {
    auto it = R.find(m);
    return it == R.end() ? 0 : it->second;
  };

  struct Fixed {
    Monomial m;
    Field::Code expected;
    int level;  // deepest gauge variable involved
  };
  std::vector<Fixed> fixed;
  std::vector<Field::Code> expected(ref.terms.size(), 0);
  std::vector<bool> has_expected(ref.terms.size(), false);
  std::set<Monomial> support;
  for (std::size_t i = 0; i < ref.terms.size(); ++i) {
    const auto& t = ref.terms[i];
    Monomial m = mono4(t.exps);
    support.insert(m);
    if (t.block != TermBlock::f_block) {
      expected[i] = parse_poly(t.coefficient, scalars, consts).constant_term().code();
      has_expected[i] = true;
    }
    bool flagged = wdeg(m, w) != fit.weighted_degree;
    if (!flagged && t.block != TermBlock::f_block) {
      int level = 0;
      for (int v = 1; v < 4; ++v)
        if (m[static_cast<std::size_t>(v)]) level = v;
      fixed.push_back({m, expected[i], level});
    }
  }

  // coefficient of m after x_i -> x_i / s_i and scaling by r
  std::array<Field::Code, 4> s{1, 1, 1, 1};
  Field::Code r = 1;
  auto transformed = [&](const Monomial& m, Field::Code c) {
    Field::Code v = FF.mul(r, c);
    for (std::size_t i = 0; i < 4; ++i)
      if (m[i]) v = FF.mul(v, FF.pow(s[i], -static_cast<long long>(m[i])));
    return v;
  };
  auto ok_at_level = [&](int level) {
    for (const auto& f : fixed)
      if (f.level == level && transformed(f.m, fitted_at(f.m)) != f.expected) return false;
    return true;
  };
  std::optional<std::pair<Field::Code, std::array<Field::Code, 4>>> first;
  std::function<void(int)> search = [&](int level) {
    if (level == 4) {
      if (!first) first = {r, s};
      ++rep.gauges_found;
      return;
    }
    for (Field::Code c = 1; c < FF.order(); ++c) {
      if (level == 0) {
        r = c;
      } else {
        s[static_cast<std::size_t>(level)] = c;
      }
      if (ok_at_level(level)) search(level + 1);
    }
  };
  search(0);

  Poly T = fit.relation;
  if (first) {
    r = first->first;
    s = first->second;
    std::vector<Term> terms;
    for (const auto& t : fit.relation.terms()) terms.push_back({t.m, transformed(t.m, t.c)});
    T = Poly::from_terms(fit.ring, std::move(terms));
    Gauge g{{F, r}, {FieldElement(F, s[0]), FieldElement(F, s[1]), FieldElement(F, s[2]),
                     FieldElement(F, s[3])}};
    rep.gauge = g;
    rep.normalized = T;
  }

  // the x4-linear term tells which extras a shift of x4 can absorb
  std::optional<Monomial> x4_cofactor;
  for (const auto& t : ref.terms)
    if (t.block == TermBlock::explicit_term && t.exps[3] == 1) {
      Monomial m = mono4(t.exps);
      m[3] = 0;
      x4_cofactor = m;
    }

  for (const auto& t : T.terms()) {
    if (support.count(t.m)) continue;
    ExtraTerm e;
    e.monomial = render_monomial(*fit.ring, t.m);
    e.coefficient = FF.render(t.c);
    e.weighted_degree = wdeg(t.m, w);
    if (x4_cofactor && t.m[3] == 0 && mono_divides(*x4_cofactor, t.m)) {
      Monomial q = mono_div(t.m, *x4_cofactor);
      if (wdeg(q, w) == w[3]) {
        e.absorbable = true;
        e.absorbed_into = "x4 -> x4 + c*" + render_monomial(*fit.ring, q);
      }
    }
    rep.extras.push_back(e);
  }

  for (std::size_t i = 0; i < ref.terms.size(); ++i) {
    const auto& t = ref.terms[i];
    Monomial m = mono4(t.exps);
    TermReport tr;
    tr.display = t.display;
    tr.monomial = render_monomial(*fit.ring, m);
    tr.block = t.block;
    tr.weighted_degree = wdeg(m, w);
    tr.flagged = tr.weighted_degree != fit.weighted_degree;
    Field::Code have = T.coeff(m).code();
    tr.fitted = FF.render(have);
    if (has_expected[i]) tr.expected = FF.render(expected[i]);
    if (tr.flagged) {
      tr.status = "flagged";
      ++rep.flagged;
      if (has_expected[i])
        for (const auto& tt : T.terms())
          if (!support.count(tt.m) && tt.c == expected[i])
            tr.same_coefficient_extras.push_back(render_monomial(*fit.ring, tt.m));
    } else if (t.block == TermBlock::f_block) {
      tr.status = "free";
      rep.free_coefficients.push_back({t.coefficient, tr.fitted});
    } else if (first && have == expected[i]) {
      tr.status = "matched";
      ++rep.matched;
    } else {
      tr.status = "mismatch";
      ++rep.mismatched;
    }
    rep.terms.push_back(tr);
  }

  bool genuine_extra = std::any_of(rep.extras.begin(), rep.extras.end(),
                                   [](const ExtraTerm& e) { return !e.absorbable; });
  rep.consistent = first.has_value() && rep.mismatched == 0 && !genuine_extra;
  return rep;
}

}  // namespace wq
