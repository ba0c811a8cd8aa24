#include <catch_amalgamated.hpp>

#include <json.hpp>

#include "wildquot/scenario.hpp"

using namespace wq;
using nlohmann::json;

namespace {

const VerificationReport& default_both() {
  static const VerificationReport r = run_scenario(RunConfig{});
  return r;
}

RunConfig small_config(const std::string& which, unsigned n = 3) {
  RunConfig c;
  apply_setting(c, "case", which);
  apply_setting(c, "specializations", std::to_string(n));
  return c;
}

}  // namespace

TEST_CASE("config text", "[scenario]") {
  auto c = parse_config_text("# defaults overridden\np = 3\nk = 2  # F9\nseeds = 4, 7,9\ncase = bne0\n"
                             "strictness = fail_on_mismatch\nforce_a=(0,1)\nstrict_center = true\n");
  CHECK(c.extension_degree == 2);
  CHECK(c.effective_seeds() == std::vector<std::uint64_t>{4, 7, 9});
  CHECK(c.cases == CaseSelection::bne0);
  CHECK(c.strictness == Strictness::fail_on_mismatch);
  CHECK(c.force_a == std::optional<std::string>("(0,1)"));
  CHECK(c.strict_center);
  CHECK(RunConfig{}.effective_seeds().size() == 20);

  CHECK_THROWS_AS(parse_config_text("p = 3\nnonsense\n"), SyntaxError);
  CHECK_THROWS_AS(parse_config_text("colour = red\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_text("k = two\n"), InvalidArgument);
  CHECK_THROWS_AS(parse_config_text("case = b1\n"), InvalidArgument);
  RunConfig bad;
  bad.num_specializations = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = RunConfig{};
  bad.p = 4;
  CHECK_THROWS_AS(bad.validate(), NotPrime);
}

TEST_CASE("specialization parameters", "[scenario]") {
  auto F = make_field(3, 4, 0);
  RunConfig c;
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto [a, b] = specialization(F, CaseKind::b0, s, c);
    CHECK(!F->in_prime_subfield(a.code()));
    CHECK(b.is_zero());
    auto [a2, b2] = specialization(F, CaseKind::bne0, s, c);
    CHECK(a2 == a);
    CHECK(!b2.is_zero());
  }
  c.force_a = "(0,1,0,0)";
  c.force_b = "2";
  auto [a, b] = specialization(F, CaseKind::b0, 5, c);
  CHECK(a == FieldElement(F, F->from_coeffs({0, 1, 0, 0})));
  CHECK(b == FieldElement::of(F, 2));
}

TEST_CASE("default scenario over 20 specializations", "[scenario]") {
  const auto& r = default_both();
  REQUIRE(r.scenarios.size() == 2);
  const auto& b0 = r.scenarios[0];
  const auto& bne0 = r.scenarios[1];
  CHECK(b0.runs.size() == 20);
  CHECK(b0.unanimous);
  CHECK(b0.verdict == "not log canonical: E4 coefficient -3");
  CHECK(b0.final_ledger == std::map<std::string, int>{{"E4", -3}});
  CHECK(bne0.unanimous);
  CHECK(bne0.verdict == "not log canonical: E2 coefficient -2");
  CHECK(bne0.final_ledger == (std::map<std::string, int>{{"E1", -1}, {"E2", -2}}));
  for (const auto& s : r.scenarios)
    for (const auto& run : s.runs) {
      CHECK(run.status == "ok");
      REQUIRE(run.tower);
      CHECK(run.tower->checks_pass());
    }
  for (const auto& c : r.claims) {
    INFO(c.claim << ": " << c.observed);
    CHECK(c.matches);
  }
  CHECK(r.flagged_terms == 2);
  CHECK(exit_code(r) == 0);
}

TEST_CASE("structured report", "[scenario]") {
  const auto& r = default_both();
  auto text = emit_report(r, ReportFormat::structured);
  auto j = json::parse(text);
  CHECK(j["schema_version"] == 1);
  CHECK(j["scenarios"][0]["case"] == "b0");
  CHECK(j["scenarios"][0]["final_ledger"] == json{{"E4", -3}});
  CHECK(j["scenarios"][1]["final_ledger"] == json({{"E1", -1}, {"E2", -2}}));
  CHECK(j["exit_code"] == 0);
  CHECK(j["flagged_terms"] == 2);
  CHECK(text.find("\"final_ledger\": {\n        \"E4\": -3") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and thread counts", "[scenario]") {
  auto c = small_config("both", 4);
  c.threads = 1;
  auto one = emit_report(run_scenario(c), ReportFormat::structured);
  c.threads = 4;
  auto four = emit_report(run_scenario(c), ReportFormat::structured);
  auto again = emit_report(run_scenario(c), ReportFormat::structured);
  CHECK(one == four);
  CHECK(four == again);
  CHECK(emit_report(run_scenario(c), ReportFormat::human_text) ==
        emit_report(run_scenario(c), ReportFormat::human_text));
}

TEST_CASE("human text shows the tower table", "[scenario]") {
  auto r = run_scenario(small_config("bne0", 1));
  auto text = emit_report(r, ReportFormat::human_text);
  CHECK(text.find("multiplicities [3, 2]") != std::string::npos);
  CHECK(text.find("K_X2 = phi^*K_X - E1|_X2 - 2E2|_X2") != std::string::npos);
  CHECK(text.find("exit code 0") != std::string::npos);
}

TEST_CASE("empty report", "[scenario]") {
  VerificationReport empty;
  auto j = json::parse(emit_report(empty, ReportFormat::structured));
  CHECK(j["scenarios"].empty());
  CHECK(j["claims"].empty());
  CHECK(exit_code(empty) == 0);
  CHECK(!emit_report(empty, ReportFormat::human_text).empty());
}

TEST_CASE("strictness turns flagged terms into exit code 4", "[scenario]") {
  auto c = small_config("b0", 1);
  apply_setting(c, "strictness", "fail_on_mismatch");
  auto r = run_scenario(c);
  CHECK(r.flagged_terms == 1);
  CHECK(exit_code(r) == 4);
}

TEST_CASE("a forced parameter in the prime field stops the pipeline", "[scenario]") {
  auto c = small_config("both", 2);
  apply_setting(c, "force_a", "1");
  auto r = run_scenario(c);
  REQUIRE(r.scenarios.size() == 2);
  for (const auto& run : r.scenarios[0].runs) CHECK(run.status == "degenerate");  // b = 0: U(a,b) has order 3
  for (const auto& run : r.scenarios[1].runs) {
    CHECK(run.status == "not_small");
    CHECK(run.verdict == "NotSmall");
    CHECK(run.pseudo_reflection);
    CHECK(!run.tower);
  }
  CHECK(r.scenarios[1].verdict == "NotSmall");
  CHECK(exit_code(r) == 2);
}

TEST_CASE("hard errors give exit code 3", "[scenario]") {
  auto c = small_config("b0", 1);
  apply_setting(c, "generator_cap", "8");
  auto r = run_scenario(c);
  CHECK(r.scenarios[0].runs[0].status == "error");
  CHECK(r.scenarios[0].runs[0].error_kind == "CapTooSmall");
  CHECK(exit_code(r) == 3);
}

TEST_CASE("lemma checks over F3", "[scenario]") {
  auto r = run_lemmas(RunConfig{});
  REQUIRE(r.lemmas);
  REQUIRE(r.lemmas->centralizer);
  CHECK(r.lemmas->centralizer->centralizer.size() == 9);
  REQUIRE(r.lemmas->structure);
  CHECK(r.lemmas->structure->claim_holds());
  for (const auto& c : r.claims) CHECK(c.matches);
  CHECK(exit_code(r) == 0);
}

TEST_CASE("lemma checks over F9 exceed the default budget", "[scenario]") {
  RunConfig c;
  apply_setting(c, "lemma_degree", "2");
  auto L = run_lemma_checks(c);
  CHECK(!L.centralizer);
  REQUIRE(!L.errors.empty());
  CHECK(L.errors[0].second.find("EnumerationBudgetExceeded") != std::string::npos);
  CHECK(exit_code(run_lemmas(c)) == 3);
}
