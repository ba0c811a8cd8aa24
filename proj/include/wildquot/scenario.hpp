#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wildquot/birational.hpp"
#include "wildquot/group.hpp"
#include "wildquot/invariants.hpp"

namespace wq {

enum class CaseSelection { b0, bne0, both };
enum class Strictness { report_typos, fail_on_mismatch };

struct RunConfig {
  unsigned p = 3;
  unsigned extension_degree = 4;
  std::uint64_t field_seed = 0;
  std::vector<std::uint64_t> seeds;  // explicit seeds override num_specializations
  unsigned num_specializations = 20;
  unsigned generator_cap = 12;
  unsigned relation_cap = 20;
  std::size_t groebner_budget = 0;  // 0: environment or default
  CaseSelection cases = CaseSelection::both;
  Strictness strictness = Strictness::report_typos;
  std::optional<std::string> force_a;  // field element text, e.g. "1" or "(0,1,0,0)"
  std::optional<std::string> force_b;
  unsigned threads = 0;       // 0: hardware concurrency
  unsigned lemma_degree = 1;  // lemmas run over F_{p^lemma_degree}
  std::size_t enumeration_budget = kDefaultEnumerationBudget;
  bool strict_center = false;

  void validate() const;
  std::vector<std::uint64_t> effective_seeds() const;
};

// key = value, one per line; '#' starts a comment.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
RunConfig parse_config_text(const std::string& text, RunConfig base = {});

std::string case_selection_name(CaseSelection c);
std::string strictness_name(Strictness s);

// Specialization used for a seed: a outside the prime field, b nonzero
// (bne0) or zero (b0), unless forced by the config.
std::pair<FieldElement, FieldElement> specialization(const FieldPtr& f, CaseKind kind,
                                                     std::uint64_t seed, const RunConfig& cfg);

struct SpecializationResult {
  std::uint64_t seed = 0;
  std::string a, b, alpha;
  std::string status;  // ok / degenerate / not_small / error
  std::string error_kind, error_message;
  unsigned group_order = 0;
  bool small = false;
  std::optional<std::string> pseudo_reflection;
  std::vector<std::string> group_warnings;
  std::vector<unsigned> generator_degrees;
  std::vector<std::string> generators;
  unsigned jacobian_rank = 0;
  std::optional<FittedRelation> relation;
  std::vector<ReferenceComparison> comparisons;
  std::optional<TowerReport> tower;
  std::map<std::string, int> final_ledger;
  std::string verdict;
};

struct ScenarioReport {
  CaseKind kind = CaseKind::b0;
  std::vector<SpecializationResult> runs;
  bool unanimous = false;
  std::string verdict;
  std::map<std::string, int> final_ledger;  // shared by all runs when unanimous
};

struct LemmaReport {
  std::string field;
  std::optional<CentralizerReport> centralizer;
  std::optional<SubgroupStructureReport> structure;
  std::optional<SubgroupStructureReport> sylow_check;  // F_{p^2} unitriangular
  std::vector<std::pair<std::string, std::string>> errors;  // stage -> message
};

struct ClaimVerdict {
  std::string claim;
  std::string expected;
  std::string observed;
  bool matches = false;
};

struct VerificationReport {
  RunConfig config;
  std::vector<ScenarioReport> scenarios;
  std::optional<LemmaReport> lemmas;
  std::vector<ClaimVerdict> claims;
  std::size_t flagged_terms = 0;  // anomalous published terms seen
  bool hard_error = false;
};

SpecializationResult run_specialization(const FieldPtr& f, CaseKind kind, std::uint64_t seed,
                                        const RunConfig& cfg);
ScenarioReport run_case(CaseKind kind, const RunConfig& cfg);
VerificationReport run_scenario(const RunConfig& cfg);
LemmaReport run_lemma_checks(const RunConfig& cfg);
VerificationReport run_lemmas(const RunConfig& cfg);

// 0 all verdicts match, 2 a verdict differs, 3 hard error, 4 flagged terms
// under fail_on_mismatch.
int exit_code(const VerificationReport& r);

enum class ReportFormat { human_text, structured };
std::string emit_report(const VerificationReport& r, ReportFormat format);

}  // namespace wq
