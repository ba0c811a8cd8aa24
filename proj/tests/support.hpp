#pragma once

#include <map>
#include <random>
#include <vector>

#include "wildquot/poly.hpp"

namespace wqtest {

// Random sparse polynomial with up to `max_terms` terms of degree <= max_deg.
inline wq::Poly random_poly(const wq::RingPtr& R, std::mt19937_64& eng, unsigned max_terms = 5,
                            unsigned max_deg = 4) {
  const auto q = R->field()->order();
  std::vector<wq::Term> terms;
  unsigned n = static_cast<unsigned>(wq::uniform_below(eng, max_terms + 1));
  for (unsigned t = 0; t < n; ++t) {
    wq::Monomial m;
    for (std::size_t i = 0; i < R->nvars(); ++i)
      m[i] = static_cast<std::uint16_t>(wq::uniform_below(eng, max_deg + 1));
    terms.push_back({m, static_cast<wq::Field::Code>(wq::uniform_below(eng, q))});
  }
  return wq::Poly::from_terms(R, terms);
}

inline std::vector<wq::FieldElement> random_point(const wq::FieldPtr& F, std::size_t n,
                                                  std::mt19937_64& eng) {
  std::vector<wq::FieldElement> pt;
  for (std::size_t i = 0; i < n; ++i)
    pt.emplace_back(F, static_cast<wq::Field::Code>(wq::uniform_below(eng, F->order())));
  return pt;
}

// Dense term-map product, independent of Poly::operator*.
inline std::map<wq::Monomial, wq::Field::Code> oracle_product(const wq::Poly& f, const wq::Poly& g) {
  const auto& F = *f.field();
  std::map<wq::Monomial, wq::Field::Code> acc;
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      wq::Monomial m;
      for (std::size_t i = 0; i < wq::kMaxVars; ++i) m[i] = static_cast<std::uint16_t>(a.m[i] + b.m[i]);
      acc[m] = F.add(acc[m], F.mul(a.c, b.c));
    }
  for (auto it = acc.begin(); it != acc.end();) it = it->second ? std::next(it) : acc.erase(it);
  return acc;
}

inline std::map<wq::Monomial, wq::Field::Code> term_map(const wq::Poly& f) {
  std::map<wq::Monomial, wq::Field::Code> out;
  for (const auto& t : f.terms()) out[t.m] = t.c;
  return out;
}

}  // namespace wqtest
