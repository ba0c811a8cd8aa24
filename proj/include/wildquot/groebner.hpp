#pragma once

#include <cstddef>
#include <vector>

#include "wildquot/poly.hpp"

namespace wq {

struct Ideal {
  RingPtr ring;
  std::vector<Poly> gens;

  Ideal(RingPtr r, std::vector<Poly> g);
  std::string to_string() const;
};

struct GroebnerBasis {
  RingPtr ring;
  std::vector<Poly> basis;  // reduced, monic, sorted by descending leading monomial
  std::size_t steps = 0;    // work spent, for reports

  bool is_unit() const { return basis.size() == 1 && basis[0].is_constant(); }
};

// Step budget: the value set below, else the environment
// (WQ_GROEBNER_BUDGET), else the default.
std::size_t default_groebner_budget();
// Process-wide budget; 0 clears it.
void set_groebner_budget(std::size_t budget);
constexpr std::size_t kDefaultGroebnerBudget = 4000000;

// Reduced Groebner basis under the ring's order. Pairs are taken by the
// normal strategy (smallest lcm first, ties by index) with both Buchberger
// criteria. Throws ResourceBudgetExceeded once `budget` reduction steps are
// spent.
GroebnerBasis buchberger(const Ideal& I, std::size_t budget = default_groebner_budget());

Poly normal_form(const Poly& f, const GroebnerBasis& G);
bool ideal_membership(const Poly& f, const GroebnerBasis& G);

// f vanishes on V(I), decided by 1 in I + (1 - t f) over an extra variable.
bool radical_membership(const Poly& f, const Ideal& I,
                        std::size_t budget = default_groebner_budget());

struct LociComparison {
  std::vector<bool> first_in_second;   // gens of I in sqrt(J)
  std::vector<bool> second_in_first;   // gens of J in sqrt(I)
  bool first_contained() const;        // V(J) inside V(I)
  bool second_contained() const;       // V(I) inside V(J)
  bool equal() const { return first_contained() && second_contained(); }
};

LociComparison compare_loci(const Ideal& I, const Ideal& J,
                            std::size_t budget = default_groebner_budget());
bool loci_equal(const Ideal& I, const Ideal& J,
                std::size_t budget = default_groebner_budget());

// Krull dimension of V(I) from the leading-term staircase. EmptyLocus when
// the basis is {1}.
unsigned ideal_dimension(const GroebnerBasis& G);

}  // namespace wq
