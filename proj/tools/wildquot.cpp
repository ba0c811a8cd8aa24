#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "wildquot/errors.hpp"
#include "wildquot/invariants.hpp"
#include "wildquot/parser.hpp"
#include "wildquot/rst.hpp"
#include "wildquot/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw wq::InvalidArgument("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw wq::InvalidArgument("cannot write " + out);
  f << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    auto b = item.find_first_not_of(' ');
    auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

struct Common {
  std::string config_file;
  std::vector<std::string> settings;
  std::string out;
  std::string format = "text";

  wq::RunConfig config() const {
    wq::RunConfig cfg;
    if (!config_file.empty()) cfg = wq::parse_config_text(read_file(config_file), cfg);
    for (const auto& s : settings) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw wq::InvalidArgument("--set expects key=value, got " + s);
      wq::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    return cfg;
  }
  wq::ReportFormat report_format() const {
    return format == "json" ? wq::ReportFormat::structured : wq::ReportFormat::human_text;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_file, "key=value configuration file")->check(CLI::ExistingFile);
  app->add_option("--set", c.settings, "override a setting, key=value (repeatable)");
  app->add_option("--out", c.out, "write the report to this file");
  app->add_option("--format", c.format, "report format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks quotient singularities of wild C3 x C3 actions over finite fields"};
  app.require_subcommand(1);

  Common common;

  std::string which = "both";
  auto* verify = app.add_subcommand("verify", "run the invariant and blow-up pipeline");
  verify->add_option("case", which, "b0, bne0 or both")->check(CLI::IsMember({"b0", "bne0", "both"}));
  add_common(verify, common);

  auto* lemmas = app.add_subcommand("lemmas", "brute-force centralizer and order-9 subgroup checks");
  add_common(lemmas, common);

  long long order = 0;
  std::vector<std::string> exps;
  bool cyclic = false, include_identity = false;
  auto* rst = app.add_subcommand("rst", "age and terminal/canonical classification of diagonal data");
  rst->add_option("--order", order, "element order l")->required();
  rst->add_option("--exps", exps, "comma-separated exponents, one element per use")->required();
  rst->add_flag("--cyclic", cyclic, "classify all powers of the first element");
  rst->add_flag("--include-identity", include_identity, "keep identity elements in the age test");

  unsigned cap = 12;
  std::string inv_case = "b0";
  std::uint64_t inv_seed = 0;
  auto* inv = app.add_subcommand("invariants", "generators and relation for one specialization");
  inv->add_option("--cap", cap, "generator degree cap");
  inv->add_option("--case", inv_case, "b0 or bne0")->check(CLI::IsMember({"b0", "bne0"}));
  inv->add_option("--seed", inv_seed, "specialization seed");
  add_common(inv, common);

  std::string ring_vars = "x1,x2,x3,x4";
  std::vector<std::string> exprs;
  auto* parse = app.add_subcommand("parse", "print polynomials in canonical form");
  parse->add_option("--ring", ring_vars, "comma-separated variables");
  parse->add_option("expr", exprs, "expressions; read from stdin when absent");
  add_common(parse, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      wq::RunConfig cfg = common.config();
      wq::apply_setting(cfg, "case", which);
      auto report = wq::run_scenario(cfg);
      write_output(wq::emit_report(report, common.report_format()), common.out);
      return wq::exit_code(report);
    }
    if (*lemmas) {
      auto report = wq::run_lemmas(common.config());
      write_output(wq::emit_report(report, common.report_format()), common.out);
      return wq::exit_code(report);
    }
    if (*rst) {
      std::vector<wq::AgeVector> elems;
      for (const auto& e : exps) {
        wq::AgeVector v{order, {}};
        for (const auto& a : split(e, ',')) v.exps.push_back(std::stoll(a));
        elems.push_back(v);
      }
      if (cyclic) elems = wq::cyclic_group(elems.at(0));
      auto verdict = wq::rst_classify(elems, include_identity);
      for (const auto& v : elems)
        if (!v.is_identity() || include_identity)
          std::cout << v.to_string() << " age " << wq::age(v).to_string() << "\n";
      for (const auto& p : verdict.pseudo_reflections) std::cout << "pseudo-reflection: " << p << "\n";
      for (const auto& p : verdict.non_faithful) std::cout << "not faithful: " << p << "\n";
      std::cout << "class: " << wq::rst_class_name(verdict.cls) << "\n";
      return 0;
    }
    if (*inv) {
      wq::RunConfig cfg = common.config();
      auto F = wq::make_field(cfg.p, cfg.extension_degree, cfg.field_seed);
      auto kind = inv_case == "b0" ? wq::CaseKind::b0 : wq::CaseKind::bne0;
      auto [a, b] = wq::specialization(F, kind, inv_seed, cfg);
      auto G = wq::build_group(a, b);
      auto gs = wq::minimal_generators(G, cap, wq::xyz_ring(F));
      std::ostringstream o;
      o << "field " << F->describe() << ", a = " << a.to_string() << ", b = " << b.to_string() << "\n";
      for (const auto& g : gs.gens)
        o << g.name << " (degree " << g.degree << ", " << g.origin << ") = " << g.poly.to_string() << "\n";
      auto fr = wq::fit_relation(gs, cfg.relation_cap);
      o << "relation (weight " << fr.weighted_degree << "): " << fr.relation.to_string() << "\n";
      o << "substitutes to zero: " << (fr.substitutes_to_zero ? "yes" : "no") << "\n";
      write_output(o.str(), common.out);
      return 0;
    }
    if (*parse) {
      wq::RunConfig cfg = common.config();
      auto F = wq::make_field(cfg.p, cfg.extension_degree, cfg.field_seed);
      auto R = wq::PolyRing::make(F, split(ring_vars, ','));
      if (exprs.empty())
        for (std::string line; std::getline(std::cin, line);)
          if (!line.empty()) exprs.push_back(line);
      std::ostringstream o;
      for (const auto& e : exprs) o << wq::parse_poly(e, R).to_string() << "\n";
      write_output(o.str(), common.out);
      return 0;
    }
  } catch (const wq::Error& e) {
    std::cerr << e.what() << "\n";  // "<kind>: <message>"
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
