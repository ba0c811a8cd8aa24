#include "wildquot/birational.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace wq {

// ------------------------------------------------------------------ divisors

Divisor operator+(const Divisor& a, const Divisor& b) {
  Divisor out = a;
  for (const auto& [n, c] : b) out[n] += c;
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Divisor scaled(const Divisor& d, int k) {
  Divisor out;
  if (k == 0) return out;
  for (const auto& [n, c] : d) out[n] = c * k;
  return out;
}

namespace {

std::string render_term(int c, const std::string& name, bool first) {
  std::string s;
  int a = c < 0 ? -c : c;
  if (first) {
    s = c < 0 ? "-" : "";
  } else {
    s = c < 0 ? " - " : " + ";
  }
  if (a != 1) s += std::to_string(a);
  return s + name;
}

// " + 2E1", " - E4", or "" for the zero divisor
std::string signed_divisor(const Divisor& d) {
  std::string s;
  for (const auto& [n, c] : d)
    if (c) s += render_term(c, n, false);
  return s;
}

}  // namespace

std::string render_divisor(const Divisor& d) {
  std::string s;
  for (const auto& [n, c] : d)
    if (c) s += render_term(c, n, s.empty());
  return s.empty() ? "0" : s;
}

// -------------------------------------------------------------------- charts

Chart base_chart(const std::string& name, const Poly& f) {
  if (f.is_zero()) throw ZeroPolynomial("base hypersurface is zero");
  Chart c;
  c.name = name;
  c.ring = f.ring();
  c.hypersurface = f;
  c.base_equation = f;
  for (std::size_t i = 0; i < c.ring->nvars(); ++i) c.to_base.push_back(Poly::var(c.ring, i));
  c.base_factor = Poly::constant(c.ring, 1);
  return c;
}

StrictTransform strict_transform(const Poly& f, const ChartMap& m, const std::string& e) {
  if (f.is_zero()) throw ZeroPolynomial("strict transform of the zero polynomial");
  Poly g = substitute(f, m.images);
  if (g.is_zero()) throw ZeroPolynomial("pullback vanishes identically");
  const std::size_t ei = g.ring()->require(e);
  StrictTransform st;
  st.multiplicity = vanishing_order(g, ei);
  st.poly = divide_by_var_power(g, ei, st.multiplicity);
  if (st.poly * Poly::var(g.ring(), ei).pow(st.multiplicity) != g)
    throw InconsistentTower("strict transform does not multiply back");
  return st;
}

PulledBack pullback_exceptional(const std::string& name, const Poly& local, const ChartMap& m,
                                const std::string& exceptional_var,
                                const std::string& exceptional_name) {
  Poly p = substitute(local, m.images);
  if (p.is_zero()) throw InconsistentTower("local equation of " + name + " pulls back to zero");
  const std::size_t ei = p.ring()->require(exceptional_var);
  unsigned ord = vanishing_order(p, ei);
  Poly rem = divide_by_var_power(p, ei, ord);
  PulledBack pb;
  if (ord) pb.divisor[exceptional_name] = static_cast<int>(ord);
  if (rem.is_constant()) return pb;
  if (rem.size() != 1) throw InconsistentTower("pullback of " + name + " is not a monomial divisor");
  const Monomial& mono = rem.leading_monomial();
  std::optional<std::size_t> v;
  for (std::size_t i = 0; i < p.ring()->nvars(); ++i)
    if (mono[i]) {
      if (v) throw InconsistentTower("pullback of " + name + " splits into several components");
      v = i;
    }
  pb.divisor[name] = mono[*v];
  pb.strict_name = name;
  pb.strict_equation = Poly::var(p.ring(), *v);
  return pb;
}

bool center_in_singular_locus(const Chart& c, const std::vector<std::string>& center) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < c.ring->nvars(); ++i) {
    bool in = std::find(center.begin(), center.end(), c.ring->vars()[i]) != center.end();
    images.push_back(in ? Poly(c.ring) : Poly::var(c.ring, i));
  }
  // for a coordinate ideal, g lies in it iff g vanishes once the center variables are zero
  if (!substitute(c.hypersurface, images).is_zero()) return false;
  for (std::size_t i = 0; i < c.ring->nvars(); ++i)
    if (!substitute(partial_derivative(c.hypersurface, i), images).is_zero()) return false;
  return true;
}

CenterBlowup blowup_coordinate_center(const Chart& c, const std::vector<std::string>& center,
                                      const std::vector<ChartSpec>& specs,
                                      const std::string& exceptional_name, bool strict_center) {
  if (center.size() < 2)
    throw NonCoordinateCenter("a center needs at least two coordinates (a divisor is not blown up)");
  std::set<std::string> cs(center.begin(), center.end());
  if (cs.size() != center.size()) throw NonCoordinateCenter("repeated center variable");
  for (const auto& v : center)
    if (!c.ring->index_of(v)) throw NonCoordinateCenter("center variable " + v + " is not a coordinate of " + c.name);

  CenterBlowup out;
  out.source = c.name;
  out.center = center;
  out.center_in_singular_locus = center_in_singular_locus(c, center);
  if (!out.center_in_singular_locus && strict_center)
    throw CenterNotInSingularLocus("center of " + c.name + " is not inside the singular locus");

  const FieldPtr& F = c.ring->field();
  for (const auto& spec : specs) {
    if (!cs.count(spec.exceptional))
      throw NonCoordinateCenter("chart " + spec.name + " keeps a variable outside the center");
    RingPtr R = PolyRing::make(F, spec.order);
    Poly e = Poly::var(R, spec.exceptional);
    ChartMap m{c.name, spec.name, c.ring->vars(), {}};
    for (const auto& v : c.ring->vars()) {
      if (v == spec.exceptional) {
        m.images.push_back(e);
      } else if (cs.count(v)) {
        auto it = spec.renames.find(v);
        if (it == spec.renames.end())
          throw InvalidArgument("chart " + spec.name + " gives no name for " + v + "/" + spec.exceptional);
        m.images.push_back(Poly::var(R, it->second) * e);
      } else {
        m.images.push_back(Poly::var(R, v));
      }
    }

    ChartOutcome oc;
    oc.map = m;
    oc.exceptional_var = spec.exceptional;
    oc.renames = spec.renames;
    oc.kept = spec.keep;
    StrictTransform st = strict_transform(c.hypersurface, m, spec.exceptional);
    oc.multiplicity = st.multiplicity;

    Chart& ch = oc.chart;
    ch.name = spec.name;
    ch.ring = R;
    ch.hypersurface = st.poly;
    ch.base_equation = c.base_equation;
    for (const auto& p : c.to_base) ch.to_base.push_back(substitute(p, m.images));
    ch.base_factor = substitute(c.base_factor, m.images) * e.pow(st.multiplicity);
    oc.composition_ok = substitute(ch.base_equation, ch.to_base) == ch.base_factor * ch.hypersurface;

    ch.exceptional_here[exceptional_name] = e;
    for (const auto& [name, local] : c.exceptional_here) {
      PulledBack pb = pullback_exceptional(name, local, m, spec.exceptional, exceptional_name);
      oc.pullbacks[name] = pb.divisor;
      if (pb.strict_equation) ch.exceptional_here[name] = *pb.strict_equation;
    }
    oc.misses_exceptional = buchberger(Ideal(R, {st.poly, e})).is_unit();
    out.charts.push_back(std::move(oc));
  }
  return out;
}

std::vector<const Chart*> BlowupStep::charts_out() const {
  std::vector<const Chart*> out;
  for (const auto& p : pieces)
    for (const auto& oc : p.charts)
      if (oc.kept) out.push_back(&oc.chart);
  return out;
}

const Chart& BlowupStep::chart(const std::string& name) const {
  for (const auto* c : charts_out())
    if (c->name == name) return *c;
  throw InconsistentTower("step " + std::to_string(index) + " has no chart " + name);
}

BlowupStep assemble_step(unsigned index, std::vector<CenterBlowup> pieces) {
  if (pieces.empty()) throw InconsistentTower("blow-up step without charts");
  BlowupStep s;
  s.index = index;
  s.exceptional = "E" + std::to_string(index);
  s.center_codim = pieces[0].center.size();
  std::optional<unsigned> mult;
  for (const auto& p : pieces) {
    if (p.center.size() != s.center_codim)
      throw InconsistentTower("centers of step " + std::to_string(index) + " differ in codimension");
    for (const auto& oc : p.charts) {
      if (!oc.kept) continue;
      if (mult && *mult != oc.multiplicity)
        throw InconsistentTower("charts of step " + std::to_string(index) + " disagree on the multiplicity");
      mult = oc.multiplicity;
      for (const auto& [name, div] : oc.pullbacks) {
        Divisor& merged = s.pullbacks[name];
        for (const auto& [d, c] : div) {
          auto it = merged.find(d);
          if (it != merged.end() && it->second != c)
            throw InconsistentTower("charts disagree on the pullback of " + name);
          merged[d] = c;
        }
      }
    }
  }
  if (!mult) throw InconsistentTower("step " + std::to_string(index) + " keeps no chart");
  s.multiplicity = *mult;
  s.k_coefficient = static_cast<int>(s.center_codim) - 1;
  s.pieces = std::move(pieces);
  return s;
}

// ------------------------------------------------------------------- ledger

namespace {

Divisor pull_once(const BlowupStep& s, const Divisor& d) {
  Divisor out;
  for (const auto& [n, c] : d) {
    auto it = s.pullbacks.find(n);
    if (it == s.pullbacks.end())
      throw InconsistentTower("step " + std::to_string(s.index) + " has no pullback for " + n);
    out = out + scaled(it->second, c);
  }
  return out;
}

}  // namespace

Divisor pullback_through(const std::vector<BlowupStep>& steps, unsigned from, const Divisor& d) {
  Divisor out = d;
  for (std::size_t i = from; i <= steps.size(); ++i) out = pull_once(steps[i - 1], out);
  return out;
}

DivisorLedger fold_ledger(const std::vector<BlowupStep>& steps) {
  DivisorLedger L;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const BlowupStep& s = steps[i];
    if (s.index != i + 1) throw InconsistentTower("steps out of order");
    if (i > 0)
      for (const auto& p : s.pieces) {
        bool found = false;
        for (const auto* c : steps[i - 1].charts_out()) found = found || c->name == p.source;
        if (!found) throw InconsistentTower("step " + std::to_string(s.index) + " starts from " + p.source +
                                            ", which the previous step does not produce");
      }
    const std::string n = std::to_string(s.index);
    const std::string prev = std::to_string(s.index - 1);
    const Divisor E{{s.exceptional, 1}};

    L.lines.push_back("K_W" + n + " = phi" + n + "^*K_W" + prev + signed_divisor(scaled(E, s.k_coefficient)));
    L.lines.push_back("phi" + n + "^*X" + prev + " = X" + n + signed_divisor(scaled(E, static_cast<int>(s.multiplicity))));
    for (const auto& [name, d] : s.pullbacks)
      L.lines.push_back("phi" + n + "^*" + name + " = " + render_divisor(d));

    L.K = pull_once(s, L.K) + scaled(E, s.k_coefficient);
    L.X = pull_once(s, L.X) + scaled(E, -static_cast<int>(s.multiplicity));
    L.lines.push_back("K_W" + n + " = phi^*K_W0" + signed_divisor(L.K));
    L.lines.push_back("X" + n + " = phi^*X0" + signed_divisor(L.X));
    L.lines.push_back("K_W" + n + " + X" + n + " = phi^*(K_W0 + X0)" + signed_divisor(L.K + L.X));
  }
  Divisor total = L.K + L.X;
  std::set<std::string> names;
  for (const auto& [k, v] : L.K) names.insert(k);
  for (const auto& [k, v] : L.X) names.insert(k);
  for (const auto& k : names) {
    int kv = L.K.count(k) ? L.K.at(k) : 0;
    int xv = L.X.count(k) ? L.X.at(k) : 0;
    L.entries[k] = {kv, xv};
    if (kv + xv) L.final[k] = kv + xv;
  }
  const std::string last = std::to_string(steps.size());
  std::string tail;
  for (const auto& [k, v] : L.final) tail += render_term(v, k + "|_X" + last, false);
  L.lines.push_back("K_X" + last + " = phi^*K_X" + tail);
  return L;
}

// -------------------------------------------------------------- local checks

Ideal jacobian_ideal(const Chart& c) {
  std::vector<Poly> gens{c.hypersurface};
  for (std::size_t i = 0; i < c.ring->nvars(); ++i) gens.push_back(partial_derivative(c.hypersurface, i));
  return Ideal(c.ring, gens);
}

LocusCheck verify_singular_locus(const Chart& c, const Ideal& claimed) {
  if (!claimed.ring->same_as(*c.ring)) throw RingMismatch("claimed locus lives in another ring");
  LociComparison cmp = compare_loci(jacobian_ideal(c), claimed);
  LocusCheck lc;
  lc.chart = c.name;
  lc.claim = claimed.to_string();
  lc.jacobian_in_claim = cmp.first_contained();
  lc.claim_in_jacobian = cmp.second_contained();
  return lc;
}

int codim_regularity_check(const Chart& c) {
  if (c.hypersurface.is_zero()) throw ZeroPolynomial("chart hypersurface is zero");
  GroebnerBasis G = buchberger(jacobian_ideal(c));
  if (G.is_unit()) return kEmptyDimension;
  return static_cast<int>(ideal_dimension(G));
}

OverlapCheck check_overlap(const CenterBlowup& piece, std::size_t i, std::size_t j) {
  const ChartOutcome& A = piece.charts.at(i);
  const ChartOutcome& B = piece.charts.at(j);
  OverlapCheck oc{A.chart.name, B.chart.name, false};
  const std::string& sa = A.exceptional_var;
  const std::string& sb = B.exceptional_var;
  const std::string w = A.renames.at(sb);  // sb / sa in chart A, inverted on the overlap

  std::vector<std::string> ext_vars = A.chart.ring->vars();
  ext_vars.push_back("_inv");
  RingPtr X = PolyRing::make(A.chart.ring->field(), ext_vars);
  const std::size_t inv = ext_vars.size() - 1;
  const std::size_t wi = X->require(w);

  std::vector<Poly> images;
  for (const auto& n : B.chart.ring->vars()) {
    if (n == sb) {
      images.push_back(Poly::var(X, w) * Poly::var(X, sa));
      continue;
    }
    std::optional<std::string> source;  // center variable this coordinate replaced
    for (const auto& [old, nw] : B.renames)
      if (nw == n) source = old;
    if (!source) {
      images.push_back(Poly::var(X, n));
    } else if (*source == sa) {
      images.push_back(Poly::var(X, inv));
    } else {
      images.push_back(Poly::var(X, A.renames.at(*source)) * Poly::var(X, inv));
    }
  }
  Poly g = substitute(B.chart.hypersurface, images);
  const unsigned N = g.degree_in(inv);
  std::vector<Term> terms;
  for (const auto& t : g.terms()) {
    Monomial m = t.m;
    m[wi] = static_cast<std::uint16_t>(m[wi] + N - m[inv]);
    m[inv] = 0;
    terms.push_back({m, t.c});
  }
  Poly h = Poly::from_terms(A.chart.ring, std::move(terms));
  const Poly& f = A.chart.hypersurface;
  oc.consistent = !h.is_zero() && equal_up_to_scalar(divide_by_monomial(h, monomial_content(h)),
                                                     divide_by_monomial(f, monomial_content(f)));
  return oc;
}

// ------------------------------------------------------------------- towers

std::vector<unsigned> TowerReport::multiplicities() const {
  std::vector<unsigned> v;
  for (const auto& s : steps) v.push_back(s.multiplicity);
  return v;
}

std::vector<int> TowerReport::k_coefficients() const {
  std::vector<int> v;
  for (const auto& s : steps) v.push_back(s.k_coefficient);
  return v;
}

std::optional<std::pair<std::string, int>> TowerReport::worst() const {
  std::optional<std::pair<std::string, int>> w;
  for (const auto& [n, c] : ledger.final)
    if (!w || c < w->second) w = {n, c};
  return w;
}

bool TowerReport::not_log_canonical() const {
  auto w = worst();
  return w && w->second < -1;
}

bool TowerReport::checks_pass() const {
  bool ok = composition_ok && centers_ok;
  for (const auto& l : loci) ok = ok && l.equal();
  for (const auto& d : displays) ok = ok && d.holds;
  for (const auto& o : overlaps) ok = ok && o.consistent;
  for (const auto& d : dropped) ok = ok && d.misses_exceptional;
  for (const auto& [n, dim] : singular_dims) ok = ok && dim <= 1;
  if (compressed) ok = ok && compressed->holds;
  return ok;
}

namespace {

Poly V(const RingPtr& R, const std::string& n) { return Poly::var(R, n); }
Poly K(const RingPtr& R, const FieldElement& c) { return Poly::constant(R, c); }

Monomial mono(std::initializer_list<std::pair<std::size_t, unsigned>> e) {
  Monomial m;
  for (const auto& [i, k] : e) m[i] = static_cast<std::uint16_t>(k);
  return m;
}

Ideal parse_claim(const Chart& c, const std::vector<std::string>& gens, const Constants& consts) {
  std::vector<Poly> ps;
  for (const auto& g : gens) ps.push_back(parse_poly(g, c.ring, consts));
  return Ideal(c.ring, ps);
}

struct TowerBuilder {
  TowerReport& rep;
  const Constants& consts;
  bool strict;

  void locus(unsigned step, const Chart& c, const std::vector<std::string>& gens, bool derived) {
    LocusCheck lc = verify_singular_locus(c, parse_claim(c, gens, consts));
    lc.step = step;
    lc.derived = derived;
    std::string text;
    for (const auto& g : gens) text += (text.empty() ? "" : ", ") + g;
    lc.claim = "V(" + text + ")";
    rep.loci.push_back(lc);
  }

  void display(const Chart& c, const std::string& text, const std::function<Poly()>& build) {
    DisplayCheck d{c.name, text, false};
    try {
      d.holds = equal_up_to_scalar(build(), c.hypersurface);
    } catch (const InvalidArgument&) {
      d.holds = false;  // a display piece is not a polynomial
    }
    rep.displays.push_back(d);
  }

  void add_step(unsigned index, std::vector<CenterBlowup> pieces) {
    rep.steps.push_back(assemble_step(index, std::move(pieces)));
  }

  CenterBlowup blowup(const Chart& c, const std::vector<std::string>& center,
                      const std::vector<ChartSpec>& specs, unsigned index) {
    return blowup_coordinate_center(c, center, specs, "E" + std::to_string(index), strict);
  }

  void finish() {
    rep.ledger = fold_ledger(rep.steps);
    rep.composition_ok = true;
    rep.centers_ok = true;
    for (const auto& s : rep.steps)
      for (const auto& p : s.pieces) {
        rep.centers_ok = rep.centers_ok && p.center_in_singular_locus;
        for (std::size_t i = 0; i < p.charts.size(); ++i) {
          rep.composition_ok = rep.composition_ok && p.charts[i].composition_ok;
          if (!p.charts[i].kept) rep.dropped.push_back({s.index, p.charts[i].chart.name, p.charts[i].misses_exceptional});
          for (std::size_t j = i + 1; j < p.charts.size(); ++j) rep.overlaps.push_back(check_overlap(p, i, j));
        }
      }
  }
};

std::vector<ChartSpec> first_step_specs() {
  return {
      {"W_{1,t}", "x1", {{"x2", "u_t"}, {"x3", "v_t"}}, {"x1", "x4", "u_t", "v_t"}, true},
      {"W_{1,u}", "x2", {{"x1", "t_u"}, {"x3", "v_u"}}, {"x2", "x4", "t_u", "v_u"}, true},
      {"W_{1,v}", "x3", {{"x1", "t_v"}, {"x2", "u_v"}}, {"x3", "x4", "t_v", "u_v"}, false},
  };
}

void tower_b0(TowerBuilder& tb, const Poly& f) {
  TowerReport& rep = tb.rep;
  const RingPtr& R0 = f.ring();
  const FieldPtr& F = R0->field();

  // f = P x2^9 + Q x3^2 + R x1^9 x4 + x1^6 H(x1, x2)
  const FieldElement P = f.coeff(mono({{1, 9}}));
  const FieldElement Q = f.coeff(mono({{2, 2}}));
  const FieldElement Rc = f.coeff(mono({{0, 9}, {3, 1}}));
  std::optional<Poly> H;
  try {
    H = divide_by_var_power(f - K(R0, P) * V(R0, "x2").pow(9) - K(R0, Q) * V(R0, "x3").pow(2) -
                                K(R0, Rc) * V(R0, "x1").pow(9) * V(R0, "x4"),
                            0, 6);
  } catch (const InvalidArgument&) {
  }

  tb.add_step(1, {tb.blowup(rep.base, {"x1", "x2", "x3"}, first_step_specs(), 1)});
  for (unsigned i = 2; i <= 4; ++i) {
    const std::string p = std::to_string(i - 1), n = std::to_string(i);
    const std::string tprev = i == 2 ? "v_t" : "t_" + p, uprev = i == 2 ? "v_u" : "u_" + p;
    const Chart& ct = rep.steps.back().chart("W_{" + p + ",t}");
    const Chart& cu = rep.steps.back().chart("W_{" + p + ",u}");
    tb.locus(i - 1, ct, {"x1", tprev}, false);
    tb.locus(i - 1, cu, {"x2", uprev}, false);
    std::vector<ChartSpec> st = {
        {"W_{" + n + ",t}", "x1", {{tprev, "t_" + n}}, {"x1", "x4", "u_t", "t_" + n}, true},
        {"W_{" + n + ",t'}", tprev, {{"x1", "p_" + n}}, {"p_" + n, "x4", "u_t", tprev}, false},
    };
    std::vector<ChartSpec> su = {
        {"W_{" + n + ",u}", "x2", {{uprev, "u_" + n}}, {"x2", "x4", "t_u", "u_" + n}, true},
        {"W_{" + n + ",u'}", uprev, {{"x2", "q_" + n}}, {"q_" + n, "x4", "t_u", uprev}, false},
    };
    CenterBlowup bt = tb.blowup(ct, {"x1", tprev}, st, i);
    CenterBlowup bu = tb.blowup(cu, {"x2", uprev}, su, i);
    tb.add_step(i, {std::move(bt), std::move(bu)});
  }
  const Chart& t4 = rep.steps.back().chart("W_{4,t}");
  const Chart& u4 = rep.steps.back().chart("W_{4,u}");
  tb.locus(4, t4, {"x1", "u_t^9+x4", "t_4"}, false);
  tb.locus(4, u4, {"x2", "1+t_u^9*x4", "u_4"}, false);
  rep.singular_dims.push_back({t4.name, codim_regularity_check(t4)});
  rep.singular_dims.push_back({u4.name, codim_regularity_check(u4)});

  for (unsigned i = 1; i <= 4; ++i) {
    const std::string n = std::to_string(i);
    const std::string tv = i == 1 ? "v_t" : "t_" + n, uv = i == 1 ? "v_u" : "u_" + n;
    const unsigned e = 9 - 2 * i;
    const Chart& ct = rep.steps[i - 1].chart("W_{" + n + ",t}");
    const Chart& cu = rep.steps[i - 1].chart("W_{" + n + ",u}");
    tb.display(ct, "x1^" + std::to_string(e) + "*(u_t^9+x4+x1^3*h_t)-" + tv + "^2", [&] {
      const RingPtr& R = ct.ring;
      if (!H) throw InvalidArgument("H is not a polynomial");
      Poly x1 = V(R, "x1");
      Poly ht = divide_by_var_power(substitute(*H, {x1, V(R, "u_t") * x1, Poly(R), V(R, "x4")}), 0, 6);
      return x1.pow(e) * (K(R, P) * V(R, "u_t").pow(9) + K(R, Rc) * V(R, "x4") + x1.pow(3) * ht) +
             K(R, Q) * V(R, tv).pow(2);
    });
    tb.display(cu, "x2^" + std::to_string(e) + "*(1+t_u^9*x4+x2^3*h_u)-" + uv + "^2", [&] {
      const RingPtr& R = cu.ring;
      if (!H) throw InvalidArgument("H is not a polynomial");
      Poly x2 = V(R, "x2"), tu = V(R, "t_u");
      Poly hu = divide_by_var_power(substitute(*H, {tu * x2, x2, Poly(R), V(R, "x4")}), 0, 6) * tu.pow(6);
      return x2.pow(e) * (K(R, P) + K(R, Rc) * tu.pow(9) * V(R, "x4") + x2.pow(3) * hu) +
             K(R, Q) * V(R, uv).pow(2);
    });
  }

  tb.finish();

  // K_W4 = phi^*K_W0 + 2(phi')^*E1 + 3E4 and X4 = phi^*X - 2(phi')^*E1 - 6E4
  CompressedLine cl;
  cl.text = "K_W4 = phi^*K_W0 + 2(phi')^*E1 + 3E4; X4 = phi^*X0 - 2(phi')^*E1 - 6E4";
  Divisor d{{"E1", 1}};
  for (unsigned s = 2; s <= rep.steps.size(); ++s) {
    d = pullback_through({rep.steps.begin(), rep.steps.begin() + s}, s, d);
    if (s < rep.steps.size())
      for (const auto& [nm, c] : d) cl.hidden.push_back(nm);
  }
  cl.pulled_e1 = d;
  const Divisor E4{{"E4", 1}};
  cl.holds = rep.ledger.K == scaled(d, 2) + scaled(E4, 3) && rep.ledger.X == scaled(d, -2) + scaled(E4, -6);
  rep.compressed = cl;
  (void)F;
}

void tower_bne0(TowerBuilder& tb, const Poly& f) {
  TowerReport& rep = tb.rep;
  const RingPtr& R0 = f.ring();

  // f = A x2^5 + B x3^3 + C x1 x2^3 x3 + D x1^6 x4 + x1^3 F(x1, x2, x3)
  const FieldElement A = f.coeff(mono({{1, 5}}));
  const FieldElement B = f.coeff(mono({{2, 3}}));
  const FieldElement C = f.coeff(mono({{0, 1}, {1, 3}, {2, 1}}));
  const FieldElement D = f.coeff(mono({{0, 6}, {3, 1}}));
  std::optional<Poly> Fp;
  try {
    Fp = divide_by_var_power(f - K(R0, A) * V(R0, "x2").pow(5) - K(R0, B) * V(R0, "x3").pow(3) -
                                 K(R0, C) * V(R0, "x1") * V(R0, "x2").pow(3) * V(R0, "x3") -
                                 K(R0, D) * V(R0, "x1").pow(6) * V(R0, "x4"),
                             0, 3);
  } catch (const InvalidArgument&) {
  }

  tb.add_step(1, {tb.blowup(rep.base, {"x1", "x2", "x3"}, first_step_specs(), 1)});
  const Chart& c1t = rep.steps[0].chart("W_{1,t}");
  const Chart& c1u = rep.steps[0].chart("W_{1,u}");
  tb.locus(1, c1t, {"x1", "v_t"}, false);
  tb.locus(1, c1u, {"x2", "v_u"}, false);

  std::vector<ChartSpec> st = {
      {"W_{2,y}", "x1", {{"v_t", "y"}}, {"x1", "x4", "u_t", "y"}, true},
      {"W_{2,z}", "v_t", {{"x1", "z"}}, {"x4", "u_t", "v_t", "z"}, true},
  };
  std::vector<ChartSpec> su = {
      {"W_{2,w}", "v_u", {{"x2", "w"}}, {"x4", "t_u", "v_u", "w"}, true},
      {"W_{2,y_u}", "x2", {{"v_u", "y_u"}}, {"x2", "x4", "t_u", "y_u"}, false},
  };
  CenterBlowup bt = tb.blowup(c1t, {"x1", "v_t"}, st, 2);
  CenterBlowup bu = tb.blowup(c1u, {"x2", "v_u"}, su, 2);
  tb.add_step(2, {std::move(bt), std::move(bu)});

  const Chart& y = rep.steps[1].chart("W_{2,y}");
  const Chart& z = rep.steps[1].chart("W_{2,z}");
  const Chart& w = rep.steps[1].chart("W_{2,w}");
  tb.locus(2, y, {"x1", "u_t", "y^3+b^6*x4"}, false);
  tb.locus(2, z, {"v_t", "u_t", "1+b^6*z^3*x4"}, true);
  tb.locus(2, w, {"1"}, true);
  for (const Chart* c : {&y, &z, &w}) rep.singular_dims.push_back({c->name, codim_regularity_check(*c)});

  // f1 = x1^-4 F(x1, x1 u_t, x1 v_t) on W_{1,t}; f2 = x2^-4 F(x2 t_u, x2, x2 v_u) on W_{1,u}
  auto f1_on = [&](const RingPtr& R, const Poly& s1, const Poly& s2, const Poly& s3) {
    if (!Fp) throw InvalidArgument("F is not a polynomial");
    const RingPtr& R1 = c1t.ring;
    Poly x1 = V(R1, "x1");
    Poly f1 = divide_by_var_power(substitute(*Fp, {x1, x1 * V(R1, "u_t"), x1 * V(R1, "v_t"), V(R1, "x4")}), 0, 4);
    return substitute(f1, {s1, V(R, "x4"), s2, s3});
  };
  auto f2_on = [&](const RingPtr& R, const Poly& s1, const Poly& s2, const Poly& s3) {
    if (!Fp) throw InvalidArgument("F is not a polynomial");
    const RingPtr& R1 = c1u.ring;
    Poly x2 = V(R1, "x2");
    Poly f2 = divide_by_var_power(substitute(*Fp, {x2 * V(R1, "t_u"), x2, x2 * V(R1, "v_u"), V(R1, "x4")}), 0, 4);
    return substitute(f2, {s1, V(R, "x4"), s2, s3});
  };

  tb.display(c1t, "A*u_t^5*x1^2+B*v_t^3+D*x1^3*x4+C*u_t^3*v_t*x1^2+x1^4*f1(x1,u_t,v_t)", [&] {
    const RingPtr& R = c1t.ring;
    Poly x1 = V(R, "x1"), u = V(R, "u_t"), v = V(R, "v_t");
    return K(R, A) * u.pow(5) * x1.pow(2) + K(R, B) * v.pow(3) + K(R, D) * x1.pow(3) * V(R, "x4") +
           K(R, C) * u.pow(3) * v * x1.pow(2) + x1.pow(4) * f1_on(R, x1, u, v);
  });
  tb.display(c1u, "A*x2^2+B*v_u^3+D*t_u^6*x2^3*x4+C*t_u*v_u*x2^2+t_u^3*x2^4*f2(x2,t_u,v_u)", [&] {
    const RingPtr& R = c1u.ring;
    Poly x2 = V(R, "x2"), t = V(R, "t_u"), v = V(R, "v_u");
    return K(R, A) * x2.pow(2) + K(R, B) * v.pow(3) + K(R, D) * t.pow(6) * x2.pow(3) * V(R, "x4") +
           K(R, C) * t * v * x2.pow(2) + t.pow(3) * x2.pow(4) * f2_on(R, x2, t, v);
  });
  tb.display(y, "A*u_t^5+B*y^3*x1+D*x1*x4+C*u_t^3*y*x1+x1^2*f1(x1,u_t,y*x1)", [&] {
    const RingPtr& R = y.ring;
    Poly x1 = V(R, "x1"), u = V(R, "u_t"), yy = V(R, "y");
    return K(R, A) * u.pow(5) + K(R, B) * yy.pow(3) * x1 + K(R, D) * x1 * V(R, "x4") +
           K(R, C) * u.pow(3) * yy * x1 + x1.pow(2) * f1_on(R, x1, u, yy * x1);
  });
  tb.display(z, "A*u_t^5*z^2+B*v_t+D*z^3*x4*v_t+C*u_t^3*z^2*v_t+z^4*v_t^2*f1(z*v_t,u_t,v_t)", [&] {
    const RingPtr& R = z.ring;
    Poly zz = V(R, "z"), u = V(R, "u_t"), v = V(R, "v_t");
    return K(R, A) * u.pow(5) * zz.pow(2) + K(R, B) * v + K(R, D) * zz.pow(3) * V(R, "x4") * v +
           K(R, C) * u.pow(3) * zz.pow(2) * v + zz.pow(4) * v.pow(2) * f1_on(R, zz * v, u, v);
  });
  tb.display(w, "A*w^2+B*v_u+D*t_u^6*w^3*x4*v_u+C*t_u*w^2*v_u+t_u^3*w^4*v_u^2*f2(w*v_u,t_u,v_u)", [&] {
    const RingPtr& R = w.ring;
    Poly ww = V(R, "w"), t = V(R, "t_u"), v = V(R, "v_u");
    return K(R, A) * ww.pow(2) + K(R, B) * v + K(R, D) * t.pow(6) * ww.pow(3) * V(R, "x4") * v +
           K(R, C) * t * ww.pow(2) * v + t.pow(3) * ww.pow(4) * v.pow(2) * f2_on(R, ww * v, t, v);
  });

  tb.finish();
}

}  // namespace

TowerReport build_tower(CaseKind kind, const Poly& relation, const Constants& consts,
                        bool strict_center) {
  if (relation.ring()->nvars() != 4) throw InvalidArgument("tower needs a relation in four variables");
  RingPtr R0 = PolyRing::make(relation.ring()->field(), {"x1", "x2", "x3", "x4"});
  Poly f = change_ring(relation, R0);
  TowerReport rep;
  rep.kind = kind;
  rep.base = base_chart("W_0", f);
  rep.steps.reserve(8);  // charts are referenced across steps
  TowerBuilder tb{rep, consts, strict_center};
  if (kind == CaseKind::b0) {
    tower_b0(tb, f);
  } else {
    tower_bne0(tb, f);
  }
  return rep;
}

}  // namespace wq
