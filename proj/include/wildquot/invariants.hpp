#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wildquot/group.hpp"
#include "wildquot/parser.hpp"
#include "wildquot/poly.hpp"

namespace wq {

// K[x,y,z] under grevlex, the ring the groups act on.
RingPtr xyz_ring(const FieldPtr& f);

// Degree-d monomials in n variables, descending grevlex order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d);

// Basis of the degree-d invariants in reduced echelon form (each element is
// monic with a distinct leading monomial).
std::vector<Poly> invariant_basis(const MatrixGroup& G, unsigned d, const RingPtr& ring);

// Product of the distinct images of f under G.
Poly orbit_product(const MatrixGroup& G, const Poly& f);

struct Generator {
  std::string name;
  Poly poly;
  unsigned degree = 0;
  std::string origin;  // "orbit product of y", "invariant basis"
};

struct GeneratorSet {
  RingPtr source_ring;
  std::vector<Generator> gens;
  std::map<unsigned, std::size_t> invariant_dims;  // dimension per degree up to the cap
  unsigned cap = 0;

  std::vector<unsigned> degrees() const;
  std::vector<Poly> polys() const;
};

// Degree by degree: keep invariants that are not in the span of products
// of earlier picks. Orbit products of the coordinates are offered first,
// then the echelon basis (reduced modulo the products).
GeneratorSet minimal_generators(const MatrixGroup& G, unsigned cap, const RingPtr& ring);

struct FittedRelation {
  RingPtr ring;  // x1..xn with weights = generator degrees
  Poly relation;  // monic under weighted grevlex
  unsigned weighted_degree = 0;
  std::size_t kernel_dim = 0;
  bool substitutes_to_zero = false;
};

// Lowest weighted degree kernel element of K[x1..xn] -> K[x,y,z].
FittedRelation fit_relation(const GeneratorSet& gs, unsigned degree_cap);

// Max rank of the Jacobian of the generator map over random points.
unsigned generic_rank_check(const GeneratorSet& gs, unsigned trials, std::uint64_t seed);
unsigned generic_rank_check(const std::vector<Poly>& gens, unsigned trials, std::uint64_t seed);

// --- published hypersurface displays ---------------------------------------

enum class CaseKind { b0, bne0 };
std::string case_name(CaseKind k);

enum class TermBlock { explicit_term, h_block, f_block };

struct ReferenceTerm {
  std::string coefficient;        // expression in a, b, alpha; or c1..c7 in the F block
  std::array<unsigned, 4> exps;   // exponents of x1..x4 including the block prefactor
  TermBlock block;
  std::string display;            // how the term reads inside its block
};

struct ReferenceRelation {
  std::string variant;  // "statement" or "proof"
  CaseKind kind;
  std::vector<ReferenceTerm> terms;
};

std::vector<ReferenceRelation> reference_relations(CaseKind kind);

struct Gauge {
  FieldElement r;                 // overall scalar
  std::array<FieldElement, 4> s;  // x_i -> s_i x_i, with s_1 = 1
};

struct TermReport {
  std::string display;
  std::string monomial;
  TermBlock block;
  unsigned weighted_degree = 0;
  bool flagged = false;  // weighted degree differs from the relation's
  std::string status;    // matched / mismatch / flagged / free
  std::string expected;  // rendered field element (empty for free coefficients)
  std::string fitted;    // coefficient in the gauge-normalized fit
  std::vector<std::string> same_coefficient_extras;  // for flagged terms
};

struct ExtraTerm {
  std::string monomial;
  std::string coefficient;
  unsigned weighted_degree = 0;
  bool absorbable = false;  // removable by shifting the linear generator
  std::string absorbed_into;
};

struct ReferenceComparison {
  std::string variant;
  CaseKind kind;
  unsigned relation_degree = 0;
  std::vector<unsigned> weights;
  std::size_t gauges_found = 0;
  std::optional<Gauge> gauge;
  std::vector<TermReport> terms;
  std::vector<ExtraTerm> extras;
  std::vector<std::pair<std::string, std::string>> free_coefficients;  // c_i -> fitted
  std::size_t matched = 0;
  std::size_t mismatched = 0;
  std::size_t flagged = 0;
  bool consistent = false;
  std::optional<Poly> normalized;  // fitted relation in the matching gauge
};

// Term-by-term comparison. Fixed coefficients are evaluated at the
// specialization; the fit is matched up to x_i -> s_i x_i and an overall
// scalar. Terms of the wrong weighted degree are flagged, never matched.
ReferenceComparison compare_with_reference(const FittedRelation& fit,
                                           const ReferenceRelation& ref,
                                           const Constants& consts);

}  // namespace wq
