#pragma once

// Scenario documents (JSON), the factor-based derivation of efficacy and
// direct costs, and the built-in SANS/CWE case study generator.
//
// Document layout (all keys lower case):
//   version                      1
//   name                         optional string
//   depths[]                     {id, impact}
//   vulnerabilities[]            {id, cwe, category, score (0-100], repair_cost,
//                                 factors {pr, af, ed, aa}}
//   targets[]                    optional {vulnerability, depth}; default is
//                                 every vulnerability at every depth
//   controls[]                   {id, name, levels, covers[], indirect_costs[]?,
//                                 overrides? {efficacy[][], direct_costs[]}}
//   derivation                   optional {weights[4], lambda, e_max, residual_floor}

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "secinvest/model.hpp"

namespace secinvest {

inline constexpr int kDocumentVersion = 1;

struct DerivationParams {
  std::array<double, 4> weights{1.0, 1.0, 1.0, 1.0};
  double lambda = 0.5;
  double e_max = 0.95;
  double residual_floor = 0.0;
};

// Command-line overrides applied on top of a document's derivation block.
struct DerivationOverrides {
  std::optional<std::array<double, 4>> weights;
  std::optional<double> lambda;
  std::optional<double> e_max;
};

void validate(const DerivationParams& p);

// Weighted severity in [0, 1]: sum_k w_k (f_k - 1) / 2 / sum_k w_k.
double factor_score(const AttackFactors& f, const std::array<double, 4>& weights);

// (level / level_count) * e_max * (1 - lambda * score).
double derive_efficacy(const AttackFactors& f, const std::array<double, 4>& weights, double lambda,
                       int level, int level_count, double e_max);

// Gamma(L) is the summed repair cost of the covered vulnerabilities and lower
// levels scale uniformly: Gamma(l) = (l / L) Gamma(L). Returns L + 1 values.
std::vector<double> derive_direct_costs(int level_count, std::span<const double> covered_repair_costs);

// Throws ValidationError with a field path on schema or invariant violations.
Scenario load_scenario(const nlohmann::json& doc, const DerivationOverrides& overrides = {});

// Parses document text; syntax errors report the line number.
nlohmann::json parse_document(std::string_view text);
nlohmann::json read_document(const std::filesystem::path& path);

// Canonical document for a scenario: every level's efficacy and costs are
// written explicitly, keys are sorted and reals carry 9 significant digits.
nlohmann::json serialize(const Scenario& s);
std::string dump_canonical(const nlohmann::json& doc);

// Rounds to 9 significant digits (the canonical decimal rendering).
double round_sig9(double v);
std::string format_sig9(double v);

// ---- indirect cost profiles ----------------------------------------------------

enum class IndirectPreset { None, Normal, Explicit };

struct IndirectProfile {
  IndirectPreset preset = IndirectPreset::Normal;
  // Explicit: one list per control (scenario order), level 0 first.
  std::vector<std::vector<double>> costs;
};

// "normal" share of the summed top-level direct cost charged as indirect cost.
inline constexpr double kNormalIndirectShare = 0.25;

// C(l) = c0 * l for every control, c0 = share * sum_j Gamma_j(L_j) / sum_j L_j.
std::vector<std::vector<double>> normal_indirect_costs(std::span<const int> level_counts,
                                                       double total_top_direct_cost);

// Replaces every control's indirect costs.
ScenarioData with_indirect_costs(const ScenarioData& data, const IndirectProfile& profile);

// Reads {"<control id>": [c0, c1, ...], ...}.
IndirectProfile read_indirect_file(const std::filesystem::path& path, const ScenarioData& data);

// ---- case study -----------------------------------------------------------------

inline constexpr double kCaseStudyBudget = 82.0;

struct CaseStudyControl {
  int id;
  int sans_number;
  const char* name;
  int levels;
  std::vector<Category> covers;
};

struct CaseStudyVulnerability {
  int id;
  const char* name;
  int cwe;
  Category category;
  double score;
  double remediation;  // relative CWE remediation cost, rescaled by calibration
  AttackFactors factors;
};

const std::vector<CaseStudyControl>& case_study_controls();
const std::vector<CaseStudyVulnerability>& case_study_vulnerabilities();

// Impacts for depths 1..3 (outermost first).
std::vector<double> default_impact_profile();

// Builds the case-study document: 7 controls, 12 vulnerabilities, 3 depths.
// Repair costs are scaled so that buying every control at its top level
// costs exactly kCaseStudyBudget.
nlohmann::json generate_case_study(std::span<const double> impacts,
                                   const IndirectProfile& indirect);

}  // namespace secinvest
