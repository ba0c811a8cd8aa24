#pragma once

#include <climits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wildquot/groebner.hpp"
#include "wildquot/invariants.hpp"
#include "wildquot/parser.hpp"
#include "wildquot/poly.hpp"

namespace wq {

// Formal integer combination of named divisors ("E1" -> 2, ...).
using Divisor = std::map<std::string, int>;

Divisor operator+(const Divisor& a, const Divisor& b);
Divisor scaled(const Divisor& d, int k);
// "2E1 + 3E2", "-E1 - 2E2", "0"
std::string render_divisor(const Divisor& d);

struct Chart {
  std::string name;
  RingPtr ring;
  Poly hypersurface;                             // strict transform in this chart
  std::map<std::string, Poly> exceptional_here;  // divisor name -> local equation
  // bookkeeping for the composed map down to the base chart:
  // base(to_base) == base_factor * hypersurface
  Poly base_equation;
  std::vector<Poly> to_base;
  Poly base_factor;
};

// The starting chart A^n with the given hypersurface.
Chart base_chart(const std::string& name, const Poly& f);

struct ChartMap {
  std::string source;
  std::string target;
  std::vector<std::string> source_vars;
  std::vector<Poly> images;  // image of each source variable, in the target ring
};

// One standard chart of the blow-up along a coordinate center: the center
// variable `exceptional` stays, every other center variable v becomes
// renames[v] * exceptional.
struct ChartSpec {
  std::string name;
  std::string exceptional;
  std::map<std::string, std::string> renames;
  std::vector<std::string> order;  // variables of the new chart
  bool keep = true;                // false for charts left out of the open set
};

struct StrictTransform {
  Poly poly;
  unsigned multiplicity = 0;
};

// substitute(f) = e^multiplicity * poly with poly not divisible by e.
StrictTransform strict_transform(const Poly& f, const ChartMap& m, const std::string& e);

struct PulledBack {
  Divisor divisor;                       // exceptional part and strict part
  std::optional<std::string> strict_name;
  std::optional<Poly> strict_equation;  // local equation of the strict part
};

// Pull a divisor with local equation `local` back through m. The order along
// the exceptional coordinate gives the new exceptional coefficient; a
// nonconstant remainder c*v^k keeps the old divisor with coefficient k.
PulledBack pullback_exceptional(const std::string& name, const Poly& local, const ChartMap& m,
                                const std::string& exceptional_var,
                                const std::string& exceptional_name);

struct ChartOutcome {
  Chart chart;
  ChartMap map;
  std::string exceptional_var;
  std::map<std::string, std::string> renames;
  unsigned multiplicity = 0;
  bool kept = true;
  bool misses_exceptional = false;  // 1 in (strict transform, exceptional coordinate)
  bool composition_ok = false;      // composed map reproduces the base equation
  std::map<std::string, Divisor> pullbacks;  // old divisor -> its pullback
};

struct CenterBlowup {
  std::string source;
  std::vector<std::string> center;
  bool center_in_singular_locus = false;
  std::vector<ChartOutcome> charts;
};

// f and all its partials vanish on V(center vars).
bool center_in_singular_locus(const Chart& c, const std::vector<std::string>& center);

// Throws NonCoordinateCenter for fewer than two or unknown center variables,
// CenterNotInSingularLocus when `strict_center` and the precondition fails.
CenterBlowup blowup_coordinate_center(const Chart& c, const std::vector<std::string>& center,
                                      const std::vector<ChartSpec>& specs,
                                      const std::string& exceptional_name,
                                      bool strict_center = false);

struct BlowupStep {
  unsigned index = 0;
  std::string exceptional;  // "E<index>"
  std::size_t center_codim = 0;
  int k_coefficient = 0;
  unsigned multiplicity = 0;  // common to the kept charts
  std::vector<CenterBlowup> pieces;
  std::map<std::string, Divisor> pullbacks;  // merged over the kept charts

  std::vector<const Chart*> charts_out() const;
  const Chart& chart(const std::string& name) const;
};

// Merge per-chart data; InconsistentTower when kept charts disagree.
BlowupStep assemble_step(unsigned index, std::vector<CenterBlowup> pieces);

struct DivisorLedger {
  std::map<std::string, std::pair<int, int>> entries;  // name -> (k_total, x_total)
  std::map<std::string, int> final;
  Divisor K;  // K_{W_n} - phi^* K_{W_0}
  Divisor X;  // X_n - phi^* X
  std::vector<std::string> lines;
};

DivisorLedger fold_ledger(const std::vector<BlowupStep>& steps);

// Pull d back through steps[from-1 ..] (1-based step indices).
Divisor pullback_through(const std::vector<BlowupStep>& steps, unsigned from, const Divisor& d);

struct LocusCheck {
  unsigned step = 0;
  std::string chart;
  std::string claim;
  bool derived = false;            // a claim computed here, not quoted
  bool jacobian_in_claim = false;  // V(claim) inside Sing
  bool claim_in_jacobian = false;  // Sing inside V(claim)
  bool equal() const { return jacobian_in_claim && claim_in_jacobian; }
};

// (f, df/dv for every chart variable v)
Ideal jacobian_ideal(const Chart& c);
LocusCheck verify_singular_locus(const Chart& c, const Ideal& claimed);

constexpr int kEmptyDimension = INT_MIN;
// Dimension of the singular locus; kEmptyDimension when it is empty.
int codim_regularity_check(const Chart& c);

struct OverlapCheck {
  std::string first;
  std::string second;
  bool consistent = false;
};

// The two strict transforms agree on the overlap up to a unit monomial.
OverlapCheck check_overlap(const CenterBlowup& piece, std::size_t i, std::size_t j);

struct DisplayCheck {
  std::string chart;
  std::string display;
  bool holds = false;
};

struct CompressedLine {
  std::string text;
  Divisor pulled_e1;  // pullback of E1 through the later steps
  std::vector<std::string> hidden;  // divisors passed through on the way
  bool holds = false;
};

struct DroppedChart {
  unsigned step = 0;
  std::string chart;
  bool misses_exceptional = false;
};

struct TowerReport {
  CaseKind kind = CaseKind::b0;
  Chart base;
  std::vector<BlowupStep> steps;
  DivisorLedger ledger;
  std::vector<LocusCheck> loci;
  std::vector<std::pair<std::string, int>> singular_dims;  // final charts
  std::vector<DisplayCheck> displays;
  std::vector<OverlapCheck> overlaps;
  std::vector<DroppedChart> dropped;
  std::optional<CompressedLine> compressed;
  bool composition_ok = false;
  bool centers_ok = false;

  std::vector<unsigned> multiplicities() const;
  std::vector<int> k_coefficients() const;
  bool not_log_canonical() const;
  std::optional<std::pair<std::string, int>> worst() const;
  bool checks_pass() const;
};

// Both towers start from the gauge-normalized relation in x1..x4; `consts`
// supplies b for the locus claims.
TowerReport build_tower(CaseKind kind, const Poly& relation, const Constants& consts,
                        bool strict_center = false);

}  // namespace wq
