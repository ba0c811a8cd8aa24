#include "wildquot/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <tuple>

namespace wq {

Ideal::Ideal(RingPtr r, std::vector<Poly> g) : ring(std::move(r)) {
  for (auto& p : g) {
    if (!p.ring() || !p.ring()->same_as(*ring))
      throw RingMismatch("ideal generator from another ring");
    if (!p.is_zero()) gens.push_back(std::move(p));
  }
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_string();
  return s + ")";
}

namespace {
std::atomic<std::size_t> g_budget_override{0};
}  // namespace

void set_groebner_budget(std::size_t budget) { g_budget_override = budget; }

std::size_t default_groebner_budget() {
  if (std::size_t o = g_budget_override.load()) return o;
  if (const char* env = std::getenv("WQ_GROEBNER_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultGroebnerBudget;
}

namespace {

struct Reducer {
  const std::vector<Poly>& G;
  std::size_t& steps;
  std::size_t budget;

  // full reduction of f by the polynomials in G (skipping index `skip`)
  Poly reduce(Poly p, std::size_t skip = SIZE_MAX) {
    const Field& F = *p.field();
    std::size_t i = 0;
    while (i < p.size()) {
      const Term t = p.terms()[i];
      bool reduced = false;
      for (std::size_t k = 0; k < G.size(); ++k) {
        if (k == skip || G[k].is_zero()) continue;
        const Term& lt = G[k].leading_term();
        if (!mono_divides(lt.m, t.m)) continue;
        if (++steps > budget)
          throw ResourceBudgetExceeded("Groebner step budget of " + std::to_string(budget) +
                                       " exhausted");
        p = p.sub_mul(G[k], mono_div(t.m, lt.m), F.div(t.c, lt.c));
        reduced = true;
        break;
      }
      if (!reduced) ++i;
    }
    return p;
  }
};

}  // namespace

GroebnerBasis buchberger(const Ideal& I, std::size_t budget) {
  GroebnerBasis out;
  out.ring = I.ring;
  const PolyRing& R = *I.ring;

  std::vector<Poly> G;
  for (const auto& g : I.gens) {
    if (g.is_constant()) {
      out.basis = {Poly::constant(I.ring, 1)};
      return out;
    }
    G.push_back(g.monic());
  }
  if (G.empty()) throw InvalidArgument("Groebner basis of the zero ideal");

  std::size_t steps = 0;
  Reducer red{G, steps, budget};

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_set;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (G[i].is_zero()) continue;
      pending.push_back({i, j, mono_lcm(G[i].leading_monomial(), G[j].leading_monomial())});
      pending_set.insert({i, j});
    }
  };
  for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);

  while (!pending.empty()) {
    // normal strategy: smallest lcm, ties by (i, j)
    std::size_t best = 0;
    for (std::size_t k = 1; k < pending.size(); ++k) {
      int c = R.compare(pending[k].lcm, pending[best].lcm);
      if (c < 0 || (c == 0 && std::tie(pending[k].i, pending[k].j) <
                                  std::tie(pending[best].i, pending[best].j)))
        best = k;
    }
    Pair pr = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    pending_set.erase({pr.i, pr.j});
    if (++steps > budget)
      throw ResourceBudgetExceeded("Groebner step budget of " + std::to_string(budget) +
                                   " exhausted");

    const Poly& gi = G[pr.i];
    const Poly& gj = G[pr.j];
    if (gi.is_zero() || gj.is_zero()) continue;
    const Monomial& li = gi.leading_monomial();
    const Monomial& lj = gj.leading_monomial();
    // product criterion
    if (mono_coprime(li, lj)) continue;
    // chain criterion
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j || G[k].is_zero()) continue;
      if (!mono_divides(G[k].leading_monomial(), pr.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
      };
      if (!pending_set.count(key(pr.i, k)) && !pending_set.count(key(pr.j, k))) chain = true;
    }
    if (chain) continue;

    const Field& F = *gi.field();
    Poly s = gi.times_monomial(mono_div(pr.lcm, li), 1)
                 .sub_mul(gj, mono_div(pr.lcm, lj), F.div(gi.leading_term().c,
                                                          gj.leading_term().c));
    s = red.reduce(std::move(s));
    if (s.is_zero()) continue;
    if (s.is_constant()) {
      out.basis = {Poly::constant(I.ring, 1)};
      out.steps = steps;
      return out;
    }
    G.push_back(s.monic());
    add_pairs(G.size() - 1);
  }

  // minimal basis: drop elements whose leading monomial is divisible by another's
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (G[i].is_zero()) continue;
    bool drop = false;
    for (std::size_t j = 0; j < G.size() && !drop; ++j) {
      if (i == j || G[j].is_zero()) continue;
      const auto& mi = G[i].leading_monomial();
      const auto& mj = G[j].leading_monomial();
      if (mono_divides(mj, mi) && (mi != mj || j < i)) drop = true;
    }
    if (!drop) minimal.push_back(G[i]);
  }
  // interreduce
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    Reducer r2{minimal, steps, budget};
    minimal[i] = r2.reduce(minimal[i], i).monic();
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
    return R.greater(a.leading_monomial(), b.leading_monomial());
  });
  out.basis = std::move(minimal);
  out.steps = steps;
  return out;
}

Poly normal_form(const Poly& f, const GroebnerBasis& G) {
  if (!f.ring()->same_as(*G.ring)) throw RingMismatch("normal form across rings");
  std::size_t steps = 0;
  Reducer r{G.basis, steps, SIZE_MAX};
  return r.reduce(f);
}

bool ideal_membership(const Poly& f, const GroebnerBasis& G) {
  return normal_form(f, G).is_zero();
}

bool radical_membership(const Poly& f, const Ideal& I, std::size_t budget) {
  if (!f.ring()->same_as(*I.ring)) throw RingMismatch("radical membership across rings");
  if (f.is_zero()) return true;
  std::vector<std::string> vars = I.ring->vars();
  std::string extra = "_rab";
  while (I.ring->index_of(extra)) extra += "_";
  vars.push_back(extra);
  RingPtr ext = PolyRing::make(I.ring->field(), vars, MonomialOrder::grevlex);
  std::vector<Poly> gens;
  for (const auto& g : I.gens) gens.push_back(change_ring(g, ext));
  Poly t = Poly::var(ext, vars.size() - 1);
  gens.push_back(Poly::constant(ext, 1) - t * change_ring(f, ext));
  return buchberger(Ideal(ext, std::move(gens)), budget).is_unit();
}

bool LociComparison::first_contained() const {
  return std::all_of(first_in_second.begin(), first_in_second.end(), [](bool b) { return b; });
}
bool LociComparison::second_contained() const {
  return std::all_of(second_in_first.begin(), second_in_first.end(), [](bool b) { return b; });
}

LociComparison compare_loci(const Ideal& I, const Ideal& J, std::size_t budget) {
  if (!I.ring->same_as(*J.ring)) throw RingMismatch("comparing loci across rings");
  LociComparison c;
  for (const auto& g : I.gens) c.first_in_second.push_back(radical_membership(g, J, budget));
  for (const auto& g : J.gens) c.second_in_first.push_back(radical_membership(g, I, budget));
  return c;
}

bool loci_equal(const Ideal& I, const Ideal& J, std::size_t budget) {
  return compare_loci(I, J, budget).equal();
}

unsigned ideal_dimension(const GroebnerBasis& G) {
  if (G.is_unit()) throw EmptyLocus("the ideal is the unit ideal");
  const std::size_t n = G.ring->nvars();
  unsigned best = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    unsigned size = static_cast<unsigned>(__builtin_popcount(mask));
    if (size <= best) continue;
    bool independent = true;
    for (const auto& g : G.basis) {
      const Monomial& m = g.leading_monomial();
      bool inside = true;
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] && !(mask & (1u << i))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

}  // namespace wq
