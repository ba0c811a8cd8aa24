#pragma once

// Group -> generators -> relation -> gauge -> tower, for one seed.

#include "wildquot/birational.hpp"
#include "wildquot/invariants.hpp"

namespace wqtest {

struct PipelineRun {
  wq::FieldElement a, b;
  wq::Constants consts;
  wq::GeneratorSet gens;
  wq::FittedRelation fit;
  std::vector<wq::ReferenceComparison> comparisons;
  wq::Poly normalized;
  wq::TowerReport tower;
};

inline PipelineRun run_pipeline(wq::CaseKind kind, std::uint64_t seed, bool strict_center = false) {
  auto F = wq::make_field(3, 4, 0);
  PipelineRun r;
  r.a = wq::sample_parameter(F, wq::ParamConstraint::not_in_prime_subfield, seed);
  r.b = kind == wq::CaseKind::b0
            ? wq::FieldElement::of(F, 0)
            : wq::sample_parameter(F, wq::ParamConstraint::nonzero, seed ^ 0x9e3779b97f4a7c15ull);
  r.consts = wq::parameter_constants(r.a, r.b);
  r.gens = wq::minimal_generators(wq::build_group(r.a, r.b), 12, wq::xyz_ring(F));
  r.fit = wq::fit_relation(r.gens, 20);
  std::optional<wq::Poly> normalized;
  for (const auto& ref : wq::reference_relations(kind)) {
    r.comparisons.push_back(wq::compare_with_reference(r.fit, ref, r.consts));
    if (!normalized && r.comparisons.back().consistent) normalized = r.comparisons.back().normalized;
  }
  if (!normalized) throw std::runtime_error("no consistent comparison for seed " + std::to_string(seed));
  r.normalized = *normalized;
  r.tower = wq::build_tower(kind, r.normalized, r.consts, strict_center);
  return r;
}

}  // namespace wqtest
