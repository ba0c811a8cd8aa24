#include "wildquot/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "wildquot/errors.hpp"
#include "wildquot/parser.hpp"

namespace wq {

using json = nlohmann::ordered_json;

// -------------------------------------------------------------------- config

void RunConfig::validate() const {
  if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  if (extension_degree < 1) throw InvalidArgument("extension degree must be at least 1");
  if (num_specializations < 1 && seeds.empty()) throw InvalidArgument("need at least one specialization");
  if (generator_cap < 1 || relation_cap < 1) throw InvalidArgument("degree caps must be at least 1");
  if (lemma_degree < 1) throw InvalidArgument("lemma field degree must be at least 1");
}

std::vector<std::uint64_t> RunConfig::effective_seeds() const {
  if (!seeds.empty()) return seeds;
  std::vector<std::uint64_t> s(num_specializations);
  for (unsigned i = 0; i < num_specializations; ++i) s[i] = i;
  return s;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

unsigned long long to_number(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    unsigned long long n = std::stoull(v, &used, 0);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw InvalidArgument("setting " + key + " expects a non-negative integer, got '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidArgument("setting " + key + " expects true/false, got '" + v + "'");
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const std::string key = trim(key_in), v = trim(value_in);
  auto num = [&] { return to_number(key, v); };
  if (key == "p") {
    cfg.p = static_cast<unsigned>(num());
  } else if (key == "k" || key == "extension_degree") {
    cfg.extension_degree = static_cast<unsigned>(num());
  } else if (key == "field_seed") {
    cfg.field_seed = num();
  } else if (key == "seeds") {
    cfg.seeds.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!trim(item).empty()) cfg.seeds.push_back(to_number(key, trim(item)));
  } else if (key == "num_specializations" || key == "specializations") {
    cfg.num_specializations = static_cast<unsigned>(num());
  } else if (key == "generator_cap") {
    cfg.generator_cap = static_cast<unsigned>(num());
  } else if (key == "relation_cap") {
    cfg.relation_cap = static_cast<unsigned>(num());
  } else if (key == "groebner_budget") {
    cfg.groebner_budget = num();
  } else if (key == "case") {
    if (v == "b0") cfg.cases = CaseSelection::b0;
    else if (v == "bne0") cfg.cases = CaseSelection::bne0;
    else if (v == "both") cfg.cases = CaseSelection::both;
    else throw InvalidArgument("case must be b0, bne0 or both");
  } else if (key == "strictness") {
    if (v == "report_typos") cfg.strictness = Strictness::report_typos;
    else if (v == "fail_on_mismatch") cfg.strictness = Strictness::fail_on_mismatch;
    else throw InvalidArgument("strictness must be report_typos or fail_on_mismatch");
  } else if (key == "force_a") {
    cfg.force_a = v;
  } else if (key == "force_b") {
    cfg.force_b = v;
  } else if (key == "threads") {
    cfg.threads = static_cast<unsigned>(num());
  } else if (key == "lemma_degree") {
    cfg.lemma_degree = static_cast<unsigned>(num());
  } else if (key == "enumeration_budget") {
    cfg.enumeration_budget = num();
  } else if (key == "strict_center") {
    cfg.strict_center = to_bool(key, v);
  } else {
    throw InvalidArgument("unknown setting '" + key + "'");
  }
}

RunConfig parse_config_text(const std::string& text, RunConfig base) {
  std::stringstream ss(text);
  std::string line;
  unsigned lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw SyntaxError("expected key = value", lineno, static_cast<unsigned>(line.size() + 1));
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

std::string case_selection_name(CaseSelection c) {
  switch (c) {
    case CaseSelection::b0: return "b0";
    case CaseSelection::bne0: return "bne0";
    case CaseSelection::both: return "both";
  }
  return "?";
}

std::string strictness_name(Strictness s) {
  return s == Strictness::report_typos ? "report_typos" : "fail_on_mismatch";
}

// ------------------------------------------------------------------ pipeline

namespace {

FieldElement parse_element(const FieldPtr& f, const std::string& text) {
  RingPtr scalars = PolyRing::make(f, {});
  Poly p = parse_poly(text, scalars);
  return p.constant_term();
}

constexpr std::uint64_t kSeedMix = 0x9e3779b97f4a7c15ULL;

// Published ledgers for each case.
std::map<std::string, int> expected_ledger(CaseKind k) {
  if (k == CaseKind::b0) return {{"E4", -3}};
  return {{"E1", -1}, {"E2", -2}};
}

std::string ledger_verdict(const std::map<std::string, int>& ledger) {
  std::optional<std::pair<std::string, int>> w;
  for (const auto& [n, c] : ledger)
    if (!w || c < w->second) w = {n, c};
  if (w && w->second < -1)
    return "not log canonical: " + w->first + " coefficient " + std::to_string(w->second);
  return "no coefficient below -1 in the computed ledger";
}

}  // namespace

std::pair<FieldElement, FieldElement> specialization(const FieldPtr& f, CaseKind kind,
                                                     std::uint64_t seed, const RunConfig& cfg) {
  FieldElement a = cfg.force_a ? parse_element(f, *cfg.force_a)
                               : sample_parameter(f, ParamConstraint::not_in_prime_subfield, seed);
  FieldElement b(f, 0);
  if (cfg.force_b) {
    b = parse_element(f, *cfg.force_b);
  } else if (kind == CaseKind::bne0) {
    b = sample_parameter(f, ParamConstraint::nonzero, seed ^ kSeedMix);
  }
  return {a, b};
}

SpecializationResult run_specialization(const FieldPtr& f, CaseKind kind, std::uint64_t seed,
                                        const RunConfig& cfg) {
  SpecializationResult r;
  r.seed = seed;
  try {
    auto [a, b] = specialization(f, kind, seed, cfg);
    Constants consts = parameter_constants(a, b);
    r.a = a.to_string();
    r.b = b.to_string();
    r.alpha = consts.at("alpha").to_string();

    MatrixGroup G = build_group(a, b);
    r.group_order = static_cast<unsigned>(G.order());
    r.group_warnings = G.warnings;
    if (G.order() != 9) {
      // (1,0) and (a,b) are dependent over F_3, so U(a,b) is not C3 x C3
      r.status = "degenerate";
      r.verdict = "Degenerate";
      return r;
    }
    SmallnessVerdict sv = is_small(G);
    r.small = sv.small;
    if (!sv.small) {
      if (sv.witness) r.pseudo_reflection = sv.witness->to_string();
      r.status = "not_small";
      r.verdict = "NotSmall";
      return r;
    }

    GeneratorSet gs = minimal_generators(G, cfg.generator_cap, xyz_ring(f));
    r.generator_degrees = gs.degrees();
    for (const auto& g : gs.gens) r.generators.push_back(g.name + " = " + g.poly.to_string());
    r.jacobian_rank = generic_rank_check(gs, 8, seed);
    r.relation = fit_relation(gs, cfg.relation_cap);

    std::optional<Poly> normalized;
    for (const auto& ref : reference_relations(kind)) {
      r.comparisons.push_back(compare_with_reference(*r.relation, ref, consts));
      if (!normalized && r.comparisons.back().consistent) normalized = r.comparisons.back().normalized;
    }
    const Poly& base = normalized ? *normalized : r.relation->relation;
    r.tower = build_tower(kind, base, consts, cfg.strict_center);
    r.final_ledger = r.tower->ledger.final;
    r.verdict = ledger_verdict(r.final_ledger);
    r.status = "ok";
  } catch (const Error& e) {
    r.status = "error";
    r.error_kind = e.kind();
    r.error_message = e.what();
    r.verdict = "error: " + e.kind();
  }
  return r;
}

namespace {

unsigned worker_count(const RunConfig& cfg, std::size_t jobs) {
  unsigned t = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

// results land at their seed index, so the merge order never depends on timing
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn fn) {
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) fn(i);
  };
  std::vector<std::future<void>> fs;
  for (unsigned w = 1; w < workers; ++w) fs.push_back(std::async(std::launch::async, work));
  work();
  for (auto& f : fs) f.get();
}

}  // namespace

ScenarioReport run_case(CaseKind kind, const RunConfig& cfg) {
  cfg.validate();
  if (cfg.groebner_budget) set_groebner_budget(cfg.groebner_budget);
  FieldPtr f = make_field(cfg.p, cfg.extension_degree, cfg.field_seed);
  const auto seeds = cfg.effective_seeds();
  ScenarioReport rep;
  rep.kind = kind;
  rep.runs.resize(seeds.size());
  parallel_for(seeds.size(), worker_count(cfg, seeds.size()),
               [&](std::size_t i) { rep.runs[i] = run_specialization(f, kind, seeds[i], cfg); });
  rep.unanimous = true;
  for (const auto& r : rep.runs)
    rep.unanimous = rep.unanimous && r.verdict == rep.runs[0].verdict && r.final_ledger == rep.runs[0].final_ledger;
  rep.verdict = rep.unanimous ? rep.runs[0].verdict : "specializations disagree";
  if (rep.unanimous) rep.final_ledger = rep.runs[0].final_ledger;
  return rep;
}

namespace {

void add_case_claims(VerificationReport& v, const ScenarioReport& s) {
  const std::string cn = case_name(s.kind);
  const auto want = expected_ledger(s.kind);

  ClaimVerdict lc;
  lc.claim = cn + ": the quotient is not log canonical";
  lc.expected = ledger_verdict(want);
  lc.observed = s.verdict;
  bool checks = true;
  for (const auto& r : s.runs) checks = checks && r.tower && r.tower->checks_pass();
  lc.matches = s.unanimous && s.final_ledger == want && checks;
  if (!checks && s.unanimous) lc.observed += " (tower checks failed)";
  v.claims.push_back(lc);

  ClaimVerdict ic;
  ic.claim = cn + ": the invariant ring is a hypersurface on four generators";
  ic.expected = s.kind == CaseKind::b0 ? "degrees 1,2,9,9; relation of weight 18"
                                       : "degrees 1,3,5,9; relation of weight 15";
  bool ok = !s.runs.empty();
  std::set<std::string> seen;
  for (const auto& r : s.runs) {
    std::string d;
    for (std::size_t i = 0; i < r.generator_degrees.size(); ++i)
      d += (i ? "," : "") + std::to_string(r.generator_degrees[i]);
    std::string obs = "degrees " + d;
    if (r.relation) obs += "; relation of weight " + std::to_string(r.relation->weighted_degree);
    seen.insert(obs);
    bool consistent = !r.comparisons.empty() && r.comparisons[0].consistent;
    ok = ok && r.generator_degrees.size() == 4 && r.relation && r.relation->substitutes_to_zero &&
         r.jacobian_rank == 3 && consistent;
  }
  for (const auto& o : seen) ic.observed += (ic.observed.empty() ? "" : " | ") + o;
  ic.matches = ok && seen.size() == 1 && *seen.begin() == ic.expected;
  v.claims.push_back(ic);
}

}  // namespace

VerificationReport run_scenario(const RunConfig& cfg) {
  VerificationReport v;
  v.config = cfg;
  std::vector<CaseKind> kinds;
  if (cfg.cases != CaseSelection::bne0) kinds.push_back(CaseKind::b0);
  if (cfg.cases != CaseSelection::b0) kinds.push_back(CaseKind::bne0);
  std::set<std::string> flagged;
  for (auto k : kinds) {
    v.scenarios.push_back(run_case(k, cfg));
    const auto& s = v.scenarios.back();
    for (const auto& r : s.runs) {
      v.hard_error = v.hard_error || r.status == "error";
      for (const auto& c : r.comparisons)
        for (const auto& t : c.terms)
          if (t.flagged) flagged.insert(case_name(k) + ":" + t.display);
    }
    add_case_claims(v, s);
  }
  v.flagged_terms = flagged.size();
  return v;
}

LemmaReport run_lemma_checks(const RunConfig& cfg) {
  if (cfg.p != 3) throw InvalidArgument("the lemma checks are stated for p = 3");
  LemmaReport L;
  FieldPtr f = make_field(cfg.p, cfg.lemma_degree, 0);
  L.field = "F_" + std::to_string(f->order());
  const unsigned threads = cfg.threads;
  try {
    L.centralizer = centralizer_bruteforce(cyclic_permutation_matrix(f), cfg.enumeration_budget, threads);
  } catch (const Error& e) {
    L.errors.push_back({"centralizer", e.kind() + ": " + e.what()});
  }
  try {
    L.structure = verify_small_3group_structure(f, 2, EnumerationScope::full_sl3, cfg.enumeration_budget, threads);
  } catch (const Error& e) {
    L.errors.push_back({"subgroups", e.kind() + ": " + e.what()});
  }
  try {
    FieldPtr f2 = make_field(cfg.p, 2, 0);
    L.sylow_check = verify_small_3group_structure(f2, 2, EnumerationScope::unitriangular,
                                                  cfg.enumeration_budget, threads);
  } catch (const Error& e) {
    L.errors.push_back({"unitriangular subgroups", e.kind() + ": " + e.what()});
  }
  return L;
}

VerificationReport run_lemmas(const RunConfig& cfg) {
  cfg.validate();
  VerificationReport v;
  v.config = cfg;
  v.lemmas = run_lemma_checks(cfg);
  const LemmaReport& L = *v.lemmas;
  v.hard_error = !L.errors.empty();
  if (L.centralizer) {
    const auto& c = *L.centralizer;
    ClaimVerdict cv;
    cv.claim = "centralizer of R in SL(3," + L.field.substr(2) + ") is {aI+bR+cR^2 : a+b+c=1}";
    cv.expected = "equal to the span form, abelian";
    cv.observed = std::to_string(c.centralizer.size()) + " elements" +
                  (c.equals_span_form ? ", equal to the span form" : ", differs from the span form") +
                  (c.abelian ? ", abelian" : ", not abelian");
    cv.matches = c.equals_span_form && c.abelian && c.contains_identity;
    v.claims.push_back(cv);
  }
  auto structure_claim = [&](const SubgroupStructureReport& s, const std::string& where) {
    ClaimVerdict cv;
    cv.claim = "small subgroups of order 9 in " + where + " are elementary abelian";
    cv.expected = "holds";
    cv.observed = std::to_string(s.subgroups) + " subgroups of order 9, " + std::to_string(s.small_subgroups) +
                  " small, " + std::to_string(s.small_elementary_abelian) + " of those elementary abelian";
    if (s.vacuous()) cv.observed += " (holds vacuously: every such subgroup contains a pseudo-reflection)";
    cv.matches = s.claim_holds();
    v.claims.push_back(cv);
  };
  if (L.structure) structure_claim(*L.structure, "SL(3," + std::to_string(L.structure->q) + ")");
  if (L.sylow_check)
    structure_claim(*L.sylow_check, "the unitriangular group over F_" + std::to_string(L.sylow_check->q));
  return v;
}

int exit_code(const VerificationReport& r) {
  if (r.hard_error) return 3;
  for (const auto& c : r.claims)
    if (!c.matches) return 2;
  if (r.config.strictness == Strictness::fail_on_mismatch && r.flagged_terms > 0) return 4;
  return 0;
}

// ------------------------------------------------------------------- reports

namespace {

const char* block_name(TermBlock b) {
  switch (b) {
    case TermBlock::explicit_term: return "explicit";
    case TermBlock::h_block: return "H";
    case TermBlock::f_block: return "F";
  }
  return "?";
}

json dim_json(int d) { return d == kEmptyDimension ? json(nullptr) : json(d); }

json comparison_json(const ReferenceComparison& c) {
  json j;
  j["variant"] = c.variant;
  j["relation_degree"] = c.relation_degree;
  j["weights"] = c.weights;
  j["gauges_found"] = c.gauges_found;
  if (c.gauge) {
    json s = json::array();
    for (const auto& e : c.gauge->s) s.push_back(e.to_string());
    j["gauge"] = {{"r", c.gauge->r.to_string()}, {"s", s}};
  } else {
    j["gauge"] = nullptr;
  }
  j["matched"] = c.matched;
  j["mismatched"] = c.mismatched;
  j["flagged"] = c.flagged;
  j["consistent"] = c.consistent;
  json terms = json::array();
  for (const auto& t : c.terms) {
    json tj{{"display", t.display},       {"monomial", t.monomial}, {"block", block_name(t.block)},
            {"weighted_degree", t.weighted_degree}, {"status", t.status},     {"expected", t.expected},
            {"fitted", t.fitted}};
    if (!t.same_coefficient_extras.empty()) tj["same_coefficient_extras"] = t.same_coefficient_extras;
    terms.push_back(tj);
  }
  j["terms"] = terms;
  json extras = json::array();
  for (const auto& e : c.extras)
    extras.push_back({{"monomial", e.monomial},
                      {"coefficient", e.coefficient},
                      {"weighted_degree", e.weighted_degree},
                      {"absorbable", e.absorbable},
                      {"absorbed_into", e.absorbed_into}});
  j["extras"] = extras;
  json fc = json::object();
  for (const auto& [n, v] : c.free_coefficients) fc[n] = v;
  j["free_coefficients"] = fc;
  j["normalized"] = c.normalized ? json(c.normalized->to_string()) : json(nullptr);
  return j;
}

json divisor_json(const Divisor& d) {
  json j = json::object();
  for (const auto& [n, c] : d) j[n] = c;
  return j;
}

json tower_json(const TowerReport& t) {
  json j;
  j["multiplicities"] = t.multiplicities();
  j["k_coefficients"] = t.k_coefficients();
  json steps = json::array();
  for (const auto& s : t.steps) {
    json sj{{"index", s.index},
            {"exceptional", s.exceptional},
            {"center_codim", s.center_codim},
            {"k_coefficient", s.k_coefficient},
            {"multiplicity", s.multiplicity}};
    json pieces = json::array();
    for (const auto& p : s.pieces) {
      json pj{{"source", p.source}, {"center", p.center}, {"center_in_singular_locus", p.center_in_singular_locus}};
      json charts = json::array();
      for (const auto& oc : p.charts) {
        json m = json::object();
        for (std::size_t i = 0; i < oc.map.images.size(); ++i)
          m[oc.map.source_vars.at(i)] = oc.map.images[i].to_string();
        json pb = json::object();
        for (const auto& [n, d] : oc.pullbacks) pb[n] = render_divisor(d);
        json ex = json::object();
        for (const auto& [n, e] : oc.chart.exceptional_here) ex[n] = e.to_string();
        charts.push_back({{"name", oc.chart.name},
                          {"variables", oc.chart.ring->vars()},
                          {"kept", oc.kept},
                          {"exceptional_coordinate", oc.exceptional_var},
                          {"multiplicity", oc.multiplicity},
                          {"equation", oc.chart.hypersurface.to_string()},
                          {"images", m},
                          {"exceptional_here", ex},
                          {"pullbacks", pb},
                          {"misses_exceptional", oc.misses_exceptional},
                          {"composition_ok", oc.composition_ok}});
      }
      pj["charts"] = charts;
      pieces.push_back(pj);
    }
    sj["pieces"] = pieces;
    json pb = json::object();
    for (const auto& [n, d] : s.pullbacks) pb[n] = render_divisor(d);
    sj["pullbacks"] = pb;
    steps.push_back(sj);
  }
  j["steps"] = steps;
  json loci = json::array();
  for (const auto& l : t.loci)
    loci.push_back({{"step", l.step},
                    {"chart", l.chart},
                    {"claim", l.claim},
                    {"derived", l.derived},
                    {"claim_inside_singular_locus", l.jacobian_in_claim},
                    {"singular_locus_inside_claim", l.claim_in_jacobian},
                    {"equal", l.equal()}});
  j["singular_loci"] = loci;
  json dims = json::object();
  for (const auto& [n, d] : t.singular_dims) dims[n] = dim_json(d);
  j["singular_locus_dimension"] = dims;
  json disp = json::array();
  for (const auto& d : t.displays) disp.push_back({{"chart", d.chart}, {"display", d.display}, {"holds", d.holds}});
  j["displays"] = disp;
  json ov = json::array();
  for (const auto& o : t.overlaps) ov.push_back({{"charts", {o.first, o.second}}, {"consistent", o.consistent}});
  j["overlaps"] = ov;
  json dr = json::array();
  for (const auto& d : t.dropped)
    dr.push_back({{"step", d.step}, {"chart", d.chart}, {"misses_exceptional", d.misses_exceptional}});
  j["dropped_charts"] = dr;
  if (t.compressed)
    j["compressed_line"] = {{"text", t.compressed->text},
                            {"pulled_back_E1", render_divisor(t.compressed->pulled_e1)},
                            {"hidden_divisors", t.compressed->hidden},
                            {"holds", t.compressed->holds}};
  json entries = json::object();
  for (const auto& [n, kx] : t.ledger.entries) entries[n] = {{"k_total", kx.first}, {"x_total", kx.second}};
  j["ledger"] = {{"K", divisor_json(t.ledger.K)}, {"X", divisor_json(t.ledger.X)}, {"entries", entries},
                 {"lines", t.ledger.lines}};
  j["composition_ok"] = t.composition_ok;
  j["centers_ok"] = t.centers_ok;
  j["checks_pass"] = t.checks_pass();
  return j;
}

json run_json(const SpecializationResult& r) {
  json j;
  j["seed"] = r.seed;
  j["status"] = r.status;
  j["a"] = r.a;
  j["b"] = r.b;
  j["alpha"] = r.alpha;
  if (r.status == "error") {
    j["error"] = {{"kind", r.error_kind}, {"message", r.error_message}};
    j["verdict"] = r.verdict;
    return j;
  }
  j["group_order"] = r.group_order;
  j["small"] = r.small;
  if (r.pseudo_reflection) j["pseudo_reflection"] = *r.pseudo_reflection;
  j["group_warnings"] = r.group_warnings;
  if (r.status == "ok") {
    j["generator_degrees"] = r.generator_degrees;
    j["generators"] = r.generators;
    j["jacobian_rank"] = r.jacobian_rank;
    j["relation"] = {{"text", r.relation->relation.to_string()},
                     {"weighted_degree", r.relation->weighted_degree},
                     {"kernel_dim", r.relation->kernel_dim},
                     {"substitutes_to_zero", r.relation->substitutes_to_zero}};
    json cs = json::array();
    for (const auto& c : r.comparisons) cs.push_back(comparison_json(c));
    j["reference_comparison"] = cs;
    j["tower"] = tower_json(*r.tower);
    j["final_ledger"] = r.final_ledger;
  }
  j["verdict"] = r.verdict;
  return j;
}

json subgroup_json(const SubgroupStructureReport& s) {
  json ex = json::array();
  for (const auto& g : s.small_examples) {
    json e = json::array();
    for (const auto& m : g) e.push_back(m.to_string());
    ex.push_back(e);
  }
  return {{"scope", s.scope == EnumerationScope::full_sl3 ? "full_sl3" : "unitriangular"},
          {"q", s.q},
          {"order", s.r == 1 ? 3 : 9},
          {"ambient_order", s.ambient_order},
          {"order3_elements", s.order3_elements},
          {"pairs_examined", s.pairs_examined},
          {"subgroups", s.subgroups},
          {"elementary_abelian", s.elementary_abelian},
          {"small_subgroups", s.small_subgroups},
          {"small_elementary_abelian", s.small_elementary_abelian},
          {"non_small_subgroups", s.non_small_subgroups},
          {"non_small_witness", s.non_small_witness ? json(s.non_small_witness->to_string()) : json(nullptr)},
          {"small_examples", ex},
          {"claim_holds", s.claim_holds()},
          {"vacuous", s.vacuous()}};
}

json config_json(const RunConfig& c) {
  return {{"p", c.p},
          {"extension_degree", c.extension_degree},
          {"field_seed", c.field_seed},
          {"seeds", c.effective_seeds()},
          {"generator_cap", c.generator_cap},
          {"relation_cap", c.relation_cap},
          {"groebner_budget", c.groebner_budget ? c.groebner_budget : default_groebner_budget()},
          {"case", case_selection_name(c.cases)},
          {"strictness", strictness_name(c.strictness)},
          {"force_a", c.force_a ? json(*c.force_a) : json(nullptr)},
          {"force_b", c.force_b ? json(*c.force_b) : json(nullptr)},
          {"lemma_degree", c.lemma_degree},
          {"enumeration_budget", c.enumeration_budget},
          {"strict_center", c.strict_center}};
}

json structured(const VerificationReport& r) {
  json j;
  j["schema_version"] = 1;
  j["config"] = config_json(r.config);
  json sc = json::array();
  for (const auto& s : r.scenarios) {
    json runs = json::array();
    for (const auto& run : s.runs) runs.push_back(run_json(run));
    sc.push_back({{"case", case_name(s.kind)},
                  {"verdict", s.verdict},
                  {"unanimous", s.unanimous},
                  {"final_ledger", s.final_ledger},
                  {"specializations", runs}});
  }
  j["scenarios"] = sc;
  if (r.lemmas) {
    const auto& L = *r.lemmas;
    json lj;
    lj["field"] = L.field;
    if (L.centralizer) {
      json elems = json::array();
      for (const auto& m : L.centralizer->centralizer) elems.push_back(m.to_string());
      lj["centralizer"] = {{"group_order", L.centralizer->group_order},
                           {"size", L.centralizer->centralizer.size()},
                           {"span_form_size", L.centralizer->span_form_size},
                           {"equals_span_form", L.centralizer->equals_span_form},
                           {"abelian", L.centralizer->abelian},
                           {"elements", elems}};
    }
    if (L.structure) lj["order9_subgroups"] = subgroup_json(*L.structure);
    if (L.sylow_check) lj["unitriangular_order9_subgroups"] = subgroup_json(*L.sylow_check);
    json errs = json::object();
    for (const auto& [k, v] : L.errors) errs[k] = v;
    lj["errors"] = errs;
    j["lemmas"] = lj;
  }
  json claims = json::array();
  for (const auto& c : r.claims)
    claims.push_back({{"claim", c.claim}, {"expected", c.expected}, {"observed", c.observed}, {"matches", c.matches}});
  j["claims"] = claims;
  j["flagged_terms"] = r.flagged_terms;
  j["exit_code"] = exit_code(r);
  return j;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

std::string join_nums(const std::vector<unsigned>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s;
}

void human_scenario(std::ostringstream& o, const ScenarioReport& s) {
  o << "== case " << case_name(s.kind) << " (" << s.runs.size() << " specializations)\n";
  o << "verdict: " << s.verdict << (s.unanimous ? " [unanimous]" : "") << "\n";
  const SpecializationResult* first = nullptr;
  for (const auto& r : s.runs)
    if (r.status == "ok") {
      first = &r;
      break;
    }
  if (first) {
    const auto& r = *first;
    o << "first specialization: seed " << r.seed << ", a = " << r.a << ", b = " << r.b << "\n";
    o << "generator degrees: " << join_nums(r.generator_degrees) << "; jacobian rank " << r.jacobian_rank << "\n";
    o << "relation (weight " << r.relation->weighted_degree << "): " << r.relation->relation.to_string() << "\n";
    for (const auto& c : r.comparisons) {
      o << "published display (" << c.variant << "): " << c.matched << " matched, " << c.mismatched
        << " mismatched, " << c.flagged << " flagged, " << c.extras.size() << " extra terms -> "
        << (c.consistent ? "consistent" : "inconsistent") << "\n";
      for (const auto& t : c.terms)
        if (t.flagged) o << "  flagged: " << t.display << " has weight " << t.weighted_degree << "\n";
    }
    const auto& t = *r.tower;
    o << "blow-up tower, multiplicities [" << join_nums(t.multiplicities()) << "]\n";
    o << "  " << pad("step", 6) << pad("center", 22) << pad("codim", 7) << pad("k", 4) << "multiplicity\n";
    for (const auto& st : t.steps) {
      std::string center;
      for (const auto& p : st.pieces) {
        std::string c;
        for (const auto& v : p.center) c += (c.empty() ? "" : ",") + v;
        center += (center.empty() ? "" : " ") + ("(" + c + ")");
      }
      o << "  " << pad(std::to_string(st.index), 6) << pad(center, 22) << pad(std::to_string(st.center_codim), 7)
        << pad(std::to_string(st.k_coefficient), 4) << st.multiplicity << "\n";
    }
    for (const auto& l : t.loci)
      o << "  singular locus in " << l.chart << " = " << l.claim << (l.derived ? " (derived)" : "") << ": "
        << (l.equal() ? "verified" : "NOT verified") << "\n";
    for (const auto& line : t.ledger.lines) o << "  " << line << "\n";
    o << "  tower checks: " << (t.checks_pass() ? "pass" : "FAIL") << "\n";
  }
  for (const auto& r : s.runs) o << "  seed " << pad(std::to_string(r.seed), 4) << pad(r.status, 10) << r.verdict << "\n";
}

}  // namespace

std::string emit_report(const VerificationReport& r, ReportFormat format) {
  if (format == ReportFormat::structured) return structured(r).dump(2) + "\n";
  std::ostringstream o;
  for (const auto& s : r.scenarios) human_scenario(o, s);
  if (r.lemmas) {
    const auto& L = *r.lemmas;
    o << "== lemma checks over " << L.field << "\n";
    if (L.centralizer)
      o << "centralizer of R: " << L.centralizer->centralizer.size() << " of " << L.centralizer->group_order
        << " elements, span form " << (L.centralizer->equals_span_form ? "equal" : "different") << ", "
        << (L.centralizer->abelian ? "abelian" : "not abelian") << "\n";
    for (const auto* s : {L.structure ? &*L.structure : nullptr, L.sylow_check ? &*L.sylow_check : nullptr}) {
      if (!s) continue;
      o << (s->scope == EnumerationScope::full_sl3 ? "SL(3," : "unitriangular(") << s->q << "): " << s->subgroups
        << " subgroups of order 9, " << s->small_subgroups << " small, " << s->small_elementary_abelian
        << " small and elementary abelian\n";
    }
    for (const auto& [k, v] : L.errors) o << "error in " << k << ": " << v << "\n";
  }
  o << "== claims\n";
  for (const auto& c : r.claims) o << (c.matches ? "MATCH    " : "MISMATCH ") << c.claim << ": " << c.observed << "\n";
  if (r.flagged_terms) o << r.flagged_terms << " published term(s) flagged for wrong weighted degree\n";
  o << "exit code " << exit_code(r) << "\n";
  return o.str();
}

}  // namespace wq
