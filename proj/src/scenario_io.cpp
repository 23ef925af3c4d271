#include "secinvest/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "secinvest/error.hpp"

namespace secinvest {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key + ": missing field");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path + ": must be finite");
  return d;
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path + ": expected an integer");
  return v.get<int>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path + ": expected a string");
  return v.get<std::string>();
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path + ": expected an array");
  return v;
}

std::vector<double> numbers(const json& v, const std::string& path) {
  std::vector<double> out;
  const auto& arr = array(v, path);
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(number(arr[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

DerivationParams read_derivation(const json& doc) {
  DerivationParams p;
  auto it = doc.find("derivation");
  if (it == doc.end()) return p;
  const std::string path = "derivation";
  if (!it->is_object()) fail(path + ": expected an object");
  if (it->contains("weights")) {
    const auto w = numbers((*it)["weights"], path + ".weights");
    if (w.size() != 4) fail(path + ".weights: expected 4 entries");
    std::copy(w.begin(), w.end(), p.weights.begin());
  }
  if (it->contains("lambda")) p.lambda = number((*it)["lambda"], path + ".lambda");
  if (it->contains("e_max")) p.e_max = number((*it)["e_max"], path + ".e_max");
  if (it->contains("residual_floor"))
    p.residual_floor = number((*it)["residual_floor"], path + ".residual_floor");
  return p;
}

struct DocVulnerability {
  Vulnerability v;
};

}  // namespace

void validate(const DerivationParams& p) {
  double sum = 0.0;
  for (double w : p.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) fail("derivation.weights: entries must be >= 0");
    sum += w;
  }
  if (!(sum > 0.0)) fail("derivation.weights: at least one weight must be positive");
  if (!(p.lambda >= 0.0 && p.lambda <= 1.0)) fail("derivation.lambda: must lie in [0, 1]");
  if (!(p.e_max > 0.0 && p.e_max < 1.0)) fail("derivation.e_max: must lie in (0, 1)");
  if (!(p.residual_floor >= 0.0 && p.residual_floor < 1.0))
    fail("derivation.residual_floor: must lie in [0, 1)");
}

double factor_score(const AttackFactors& f, const std::array<double, 4>& weights) {
  const auto vals = f.as_array();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    num += weights[k] * (vals[k] - 1) / 2.0;
    den += weights[k];
  }
  return num / den;
}

double derive_efficacy(const AttackFactors& f, const std::array<double, 4>& weights, double lambda,
                       int level, int level_count, double e_max) {
  if (level_count < 1 || level < 0 || level > level_count)
    throw InputError("derive_efficacy: level " + std::to_string(level) + " outside 0.." +
                     std::to_string(level_count));
  const double share = static_cast<double>(level) / level_count;
  return share * e_max * (1.0 - lambda * factor_score(f, weights));
}

std::vector<double> derive_direct_costs(int level_count, std::span<const double> covered_repair_costs) {
  if (level_count < 1) throw InputError("derive_direct_costs: need at least one level");
  const double top = std::accumulate(covered_repair_costs.begin(), covered_repair_costs.end(), 0.0);
  std::vector<double> out(static_cast<std::size_t>(level_count) + 1, 0.0);
  for (int l = 1; l <= level_count; ++l)
    out[static_cast<std::size_t>(l)] =
        l == level_count ? top : top * static_cast<double>(l) / level_count;
  return out;
}

Scenario load_scenario(const json& doc, const DerivationOverrides& overrides) {
  if (!doc.is_object()) fail("document: expected an object at top level");
  const int version = integer(field(doc, "version", "document"), "version");
  if (version != kDocumentVersion)
    fail("version: unsupported schema version " + std::to_string(version));

  DerivationParams params = read_derivation(doc);
  if (overrides.weights) params.weights = *overrides.weights;
  if (overrides.lambda) params.lambda = *overrides.lambda;
  if (overrides.e_max) params.e_max = *overrides.e_max;
  validate(params);

  ScenarioData data;
  data.residual_floor = params.residual_floor;
  if (doc.contains("name")) data.name = text(doc["name"], "name");

  const auto& depths = array(field(doc, "depths", "document"), "depths");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    const std::string p = "depths[" + std::to_string(i) + "]";
    data.depths.push_back({integer(field(depths[i], "id", p), p + ".id"),
                           number(field(depths[i], "impact", p), p + ".impact")});
  }

  const auto& vulns = array(field(doc, "vulnerabilities", "document"), "vulnerabilities");
  for (std::size_t i = 0; i < vulns.size(); ++i) {
    const std::string p = "vulnerabilities[" + std::to_string(i) + "]";
    const auto& jv = vulns[i];
    Vulnerability v;
    v.id = integer(field(jv, "id", p), p + ".id");
    v.cwe = integer(field(jv, "cwe", p), p + ".cwe");
    try {
      v.category = category_from_string(text(field(jv, "category", p), p + ".category"));
    } catch (const ValidationError& e) {
      fail(p + ".category: " + e.what());
    }
    const double score = number(field(jv, "score", p), p + ".score");
    if (!(score > 0.0 && score <= 100.0)) fail(p + ".score: must lie in (0, 100]");
    v.threat = score / 100.0;
    v.repair_cost = number(field(jv, "repair_cost", p), p + ".repair_cost");
    const auto& jf = field(jv, "factors", p);
    const std::string fp = p + ".factors";
    v.factors.prevalence = integer(field(jf, "pr", fp), fp + ".pr");
    v.factors.attack_frequency = integer(field(jf, "af", fp), fp + ".af");
    v.factors.ease_of_detection = integer(field(jf, "ed", fp), fp + ".ed");
    v.factors.attacker_awareness = integer(field(jf, "aa", fp), fp + ".aa");
    const char* names[] = {"pr", "af", "ed", "aa"};
    const auto fv = v.factors.as_array();
    for (std::size_t k = 0; k < 4; ++k)
      if (fv[k] < 1 || fv[k] > 3)
        fail(fp + "." + names[k] + ": must be 1, 2 or 3 (got " + std::to_string(fv[k]) + ")");
    data.vulnerabilities.push_back(v);
  }

  if (doc.contains("targets")) {
    const auto& targets = array(doc["targets"], "targets");
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const std::string p = "targets[" + std::to_string(i) + "]";
      data.targets.push_back({integer(field(targets[i], "vulnerability", p), p + ".vulnerability"),
                              integer(field(targets[i], "depth", p), p + ".depth")});
    }
  } else {
    for (const auto& v : data.vulnerabilities)
      for (const auto& d : data.depths) data.targets.push_back({v.id, d.id});
  }

  std::vector<const Vulnerability*> target_vuln;
  for (const auto& t : data.targets) {
    auto it = std::find_if(data.vulnerabilities.begin(), data.vulnerabilities.end(),
                           [&](const Vulnerability& v) { return v.id == t.vulnerability_id; });
    target_vuln.push_back(it == data.vulnerabilities.end() ? nullptr : &*it);
  }

  const auto& controls = array(field(doc, "controls", "document"), "controls");
  for (std::size_t i = 0; i < controls.size(); ++i) {
    const std::string p = "controls[" + std::to_string(i) + "]";
    const auto& jc = controls[i];
    Control c;
    c.id = integer(field(jc, "id", p), p + ".id");
    c.name = text(field(jc, "name", p), p + ".name");
    const int levels = integer(field(jc, "levels", p), p + ".levels");
    if (levels < 1) fail(p + ".levels: must be at least 1");
    const auto& covers = array(field(jc, "covers", p), p + ".covers");
    for (std::size_t k = 0; k < covers.size(); ++k) {
      const std::string cp = p + ".covers[" + std::to_string(k) + "]";
      try {
        c.covers.push_back(category_from_string(text(covers[k], cp)));
      } catch (const ValidationError& e) {
        fail(cp + ": " + e.what());
      }
    }
    auto covered = [&](Category cat) {
      return std::find(c.covers.begin(), c.covers.end(), cat) != c.covers.end();
    };

    std::vector<double> repair;
    for (const auto& v : data.vulnerabilities)
      if (covered(v.category)) repair.push_back(v.repair_cost);
    std::vector<double> direct = derive_direct_costs(levels, repair);
    std::vector<double> indirect(static_cast<std::size_t>(levels) + 1, 0.0);
    if (jc.contains("indirect_costs")) {
      indirect = numbers(jc["indirect_costs"], p + ".indirect_costs");
      if (indirect.size() != static_cast<std::size_t>(levels) + 1)
        fail(p + ".indirect_costs: expected " + std::to_string(levels + 1) +
             " entries (level 0 first)");
    }

    std::optional<std::vector<std::vector<double>>> efficacy_override;
    if (jc.contains("overrides")) {
      const auto& jo = jc["overrides"];
      const std::string op = p + ".overrides";
      if (!jo.is_object()) fail(op + ": expected an object");
      if (jo.contains("direct_costs")) {
        direct = numbers(jo["direct_costs"], op + ".direct_costs");
        if (direct.size() != static_cast<std::size_t>(levels) + 1)
          fail(op + ".direct_costs: expected " + std::to_string(levels + 1) + " entries");
      }
      if (jo.contains("efficacy")) {
        const auto& je = array(jo["efficacy"], op + ".efficacy");
        if (je.size() != static_cast<std::size_t>(levels) + 1)
          fail(op + ".efficacy: expected " + std::to_string(levels + 1) + " level rows");
        std::vector<std::vector<double>> rows;
        for (std::size_t l = 0; l < je.size(); ++l)
          rows.push_back(numbers(je[l], op + ".efficacy[" + std::to_string(l) + "]"));
        efficacy_override = std::move(rows);
      }
    }

    for (int l = 0; l <= levels; ++l) {
      ControlLevel lv;
      lv.index = l;
      lv.direct_cost = direct[static_cast<std::size_t>(l)];
      lv.indirect_cost = indirect[static_cast<std::size_t>(l)];
      if (efficacy_override) {
        lv.efficacy = (*efficacy_override)[static_cast<std::size_t>(l)];
      } else {
        for (const auto* v : target_vuln) {
          const bool hit = v && covered(v->category);
          lv.efficacy.push_back(hit ? derive_efficacy(v->factors, params.weights, params.lambda, l,
                                                      levels, params.e_max)
                                    : 0.0);
        }
      }
      c.levels.push_back(std::move(lv));
    }
    data.controls.push_back(std::move(c));
  }

  return Scenario(std::move(data));
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ValidationError("parse error at line " + std::to_string(line) + ": " + e.what());
  }
}

json read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return parse_document(buf.str());
}

// ---- canonical serialization ----------------------------------------------------

std::string format_sig9(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double round_sig9(double v) { return std::strtod(format_sig9(v).c_str(), nullptr); }

json serialize(const Scenario& s) {
  json doc;
  doc["version"] = kDocumentVersion;
  doc["name"] = s.name();
  doc["depths"] = json::array();
  for (const auto& d : s.depths()) doc["depths"].push_back({{"id", d.id}, {"impact", round_sig9(d.impact)}});
  doc["vulnerabilities"] = json::array();
  for (const auto& v : s.vulnerabilities()) {
    doc["vulnerabilities"].push_back({
        {"id", v.id},
        {"cwe", v.cwe},
        {"category", std::string(to_string(v.category))},
        {"score", round_sig9(v.threat * 100.0)},
        {"repair_cost", round_sig9(v.repair_cost)},
        {"factors",
         {{"pr", v.factors.prevalence},
          {"af", v.factors.attack_frequency},
          {"ed", v.factors.ease_of_detection},
          {"aa", v.factors.attacker_awareness}}},
    });
  }
  doc["targets"] = json::array();
  for (const auto& t : s.targets())
    doc["targets"].push_back({{"vulnerability", t.vulnerability_id}, {"depth", t.depth_id}});
  doc["controls"] = json::array();
  for (const auto& c : s.controls()) {
    json jc;
    jc["id"] = c.id;
    jc["name"] = c.name;
    jc["levels"] = c.top_level();
    jc["covers"] = json::array();
    for (auto cat : c.covers) jc["covers"].push_back(std::string(to_string(cat)));
    json indirect = json::array(), direct = json::array(), efficacy = json::array();
    for (const auto& lv : c.levels) {
      indirect.push_back(round_sig9(lv.indirect_cost));
      direct.push_back(round_sig9(lv.direct_cost));
      json row = json::array();
      for (double e : lv.efficacy) row.push_back(round_sig9(e));
      efficacy.push_back(std::move(row));
    }
    jc["indirect_costs"] = std::move(indirect);
    jc["overrides"] = {{"direct_costs", std::move(direct)}, {"efficacy", std::move(efficacy)}};
    doc["controls"].push_back(std::move(jc));
  }
  const DerivationParams defaults;
  doc["derivation"] = {
      {"weights", defaults.weights},
      {"lambda", defaults.lambda},
      {"e_max", defaults.e_max},
      {"residual_floor", round_sig9(s.residual_floor())},
  };
  return doc;
}

std::string dump_canonical(const json& doc) { return doc.dump(2) + "\n"; }

// ---- indirect profiles -------------------------------------------------------------

std::vector<std::vector<double>> normal_indirect_costs(std::span<const int> level_counts,
                                                       double total_top_direct_cost) {
  const int total_levels = std::accumulate(level_counts.begin(), level_counts.end(), 0);
  if (total_levels <= 0) throw InputError("normal indirect profile needs at least one level");
  const double c0 = kNormalIndirectShare * total_top_direct_cost / total_levels;
  std::vector<std::vector<double>> out;
  for (int levels : level_counts) {
    auto& row = out.emplace_back();
    for (int l = 0; l <= levels; ++l) row.push_back(c0 * l);
  }
  return out;
}

ScenarioData with_indirect_costs(const ScenarioData& data, const IndirectProfile& profile) {
  ScenarioData out = data;
  std::vector<std::vector<double>> costs;
  switch (profile.preset) {
    case IndirectPreset::None:
      for (const auto& c : data.controls) costs.emplace_back(c.levels.size(), 0.0);
      break;
    case IndirectPreset::Normal: {
      std::vector<int> counts;
      double top = 0.0;
      for (const auto& c : data.controls) {
        counts.push_back(c.top_level());
        top += c.levels.back().direct_cost;
      }
      costs = normal_indirect_costs(counts, top);
      break;
    }
    case IndirectPreset::Explicit:
      costs = profile.costs;
      break;
  }
  if (costs.size() != out.controls.size())
    throw ValidationError("indirect profile: expected " + std::to_string(out.controls.size()) +
                          " controls, got " + std::to_string(costs.size()));
  for (std::size_t j = 0; j < out.controls.size(); ++j) {
    auto& c = out.controls[j];
    if (costs[j].size() != c.levels.size())
      throw ValidationError("indirect profile: control " + std::to_string(c.id) + " expects " +
                            std::to_string(c.levels.size()) + " entries (level 0 first)");
    for (std::size_t l = 0; l < c.levels.size(); ++l) c.levels[l].indirect_cost = costs[j][l];
  }
  return out;
}

IndirectProfile read_indirect_file(const std::filesystem::path& path, const ScenarioData& data) {
  const json doc = read_document(path);
  if (!doc.is_object()) fail(path.string() + ": expected an object keyed by control id");
  IndirectProfile profile{IndirectPreset::Explicit, {}};
  for (const auto& c : data.controls) {
    const auto key = std::to_string(c.id);
    if (!doc.contains(key)) fail(path.string() + ": missing control " + key);
    profile.costs.push_back(numbers(doc[key], key));
  }
  return profile;
}

// ---- case study ---------------------------------------------------------------------

const std::vector<CaseStudyControl>& case_study_controls() {
  using C = Category;
  // Level counts follow the SANS quick-win processes per control. The
  // category coverage is a reconstruction: each control is mapped to the
  // CWE categories its processes plausibly mitigate.
  static const std::vector<CaseStudyControl> kControls = {
      {1, 1, "Inventory of Authorised and Unauthorised Devices", 3, {C::PorousDefences}},
      {2, 2, "Inventory of Authorised and Unauthorised Software", 3, {C::RiskyResourceManagement}},
      {3, 3, "Secure Configuration for Hardware and Software on Devices", 5, {C::PorousDefences}},
      {4, 4, "Continuous Vulnerability Assessment and Remediation", 4,
       {C::InsecureInteractions, C::RiskyResourceManagement, C::PorousDefences}},
      {5, 5, "Malware Defences", 6, {C::InsecureInteractions, C::RiskyResourceManagement}},
      {6, 6, "Application Software Security", 2, {C::InsecureInteractions}},
      {7, 12, "Controlled Use of Administrative Privileges", 6, {C::PorousDefences}},
  };
  return kControls;
}

const std::vector<CaseStudyVulnerability>& case_study_vulnerabilities() {
  using C = Category;
  // Factors (PR, AF, ED, AA) as published for the CWE Top 25. Scores are the
  // CWE ranking scores; remediation is the CWE cost band (low 1, medium 2,
  // high 3, ranges rounded up).
  static const std::vector<CaseStudyVulnerability> kVulns = {
      {1, "SQL injection", 89, C::InsecureInteractions, 93.8, 1, {2, 3, 3, 3}},
      {2, "OS command injection", 78, C::InsecureInteractions, 83.3, 2, {1, 3, 3, 3}},
      {3, "Buffer overflow", 120, C::RiskyResourceManagement, 79.0, 1, {2, 3, 3, 3}},
      {4, "Cross-site scripting", 79, C::InsecureInteractions, 77.7, 1, {2, 3, 3, 3}},
      {5, "Missing authentication", 306, C::PorousDefences, 76.9, 3, {1, 2, 2, 3}},
      {6, "Missing authorization", 862, C::PorousDefences, 76.8, 2, {2, 3, 2, 2}},
      {7, "Missing encryption", 311, C::PorousDefences, 75.0, 3, {2, 2, 3, 2}},
      {8, "Unrestricted upload", 434, C::InsecureInteractions, 74.0, 2, {1, 2, 2, 3}},
      {9, "Unnecessary privileges", 250, C::PorousDefences, 70.1, 2, {1, 2, 2, 2}},
      {10, "Cross-site request forgery", 352, C::InsecureInteractions, 70.1, 3, {2, 3, 2, 3}},
      {11, "Path traversal", 22, C::RiskyResourceManagement, 69.3, 1, {3, 3, 3, 1}},
      {12, "Download of code without integrity check", 494, C::RiskyResourceManagement, 68.5, 3,
       {1, 1, 2, 3}},
  };
  return kVulns;
}

std::vector<double> default_impact_profile() { return {10.0, 20.0, 40.0}; }

json generate_case_study(std::span<const double> impacts, const IndirectProfile& indirect) {
  const auto& controls = case_study_controls();
  const auto& vulns = case_study_vulnerabilities();
  if (impacts.size() != 3)
    throw ValidationError("impact profile: expected 3 depths, got " + std::to_string(impacts.size()));

  auto covers = [](const CaseStudyControl& c, Category cat) {
    return std::find(c.covers.begin(), c.covers.end(), cat) != c.covers.end();
  };
  for (const auto& v : vulns) {
    const bool covered = std::any_of(controls.begin(), controls.end(),
                                     [&](const auto& c) { return covers(c, v.category); });
    if (!covered) throw ValidationError("case study: vulnerability " + std::string(v.name) +
                                        " is not covered by any control");
  }

  // Calibrate the remediation scale so every control at its top level costs
  // kCaseStudyBudget in total.
  double raw = 0.0;
  for (const auto& c : controls)
    for (const auto& v : vulns)
      if (covers(c, v.category)) raw += v.remediation;
  const double scale = kCaseStudyBudget / raw;

  json doc;
  doc["version"] = kDocumentVersion;
  doc["name"] = "SANS critical controls vs CWE top software vulnerabilities";
  doc["depths"] = json::array();
  for (std::size_t d = 0; d < impacts.size(); ++d)
    doc["depths"].push_back({{"id", static_cast<int>(d) + 1}, {"impact", impacts[d]}});
  doc["vulnerabilities"] = json::array();
  for (const auto& v : vulns) {
    doc["vulnerabilities"].push_back({
        {"id", v.id},
        {"cwe", v.cwe},
        {"category", std::string(to_string(v.category))},
        {"score", v.score},
        {"repair_cost", v.remediation * scale},
        {"factors",
         {{"pr", v.factors.prevalence},
          {"af", v.factors.attack_frequency},
          {"ed", v.factors.ease_of_detection},
          {"aa", v.factors.attacker_awareness}}},
    });
  }

  std::vector<int> counts;
  for (const auto& c : controls) counts.push_back(c.levels);
  std::vector<std::vector<double>> indirect_costs;
  switch (indirect.preset) {
    case IndirectPreset::None:
      for (int l : counts) indirect_costs.emplace_back(static_cast<std::size_t>(l) + 1, 0.0);
      break;
    case IndirectPreset::Normal:
      indirect_costs = normal_indirect_costs(counts, kCaseStudyBudget);
      break;
    case IndirectPreset::Explicit:
      indirect_costs = indirect.costs;
      if (indirect_costs.size() != controls.size())
        throw ValidationError("indirect profile: expected " + std::to_string(controls.size()) +
                              " controls, got " + std::to_string(indirect_costs.size()));
      for (std::size_t j = 0; j < controls.size(); ++j)
        if (indirect_costs[j].size() != static_cast<std::size_t>(counts[j]) + 1)
          throw ValidationError("indirect profile: control " + std::to_string(controls[j].id) +
                                " expects " + std::to_string(counts[j] + 1) + " entries");
      break;
  }

  doc["controls"] = json::array();
  for (std::size_t j = 0; j < controls.size(); ++j) {
    const auto& c = controls[j];
    json jc;
    jc["id"] = c.id;
    jc["name"] = std::string(c.name) + " (CSC " + std::to_string(c.sans_number) + ")";
    jc["levels"] = c.levels;
    jc["covers"] = json::array();
    for (auto cat : c.covers) jc["covers"].push_back(std::string(to_string(cat)));
    jc["indirect_costs"] = indirect_costs[j];
    doc["controls"].push_back(std::move(jc));
  }
  const DerivationParams defaults;
  doc["derivation"] = {
      {"weights", defaults.weights},
      {"lambda", defaults.lambda},
      {"e_max", defaults.e_max},
      {"residual_floor", defaults.residual_floor},
  };
  return doc;
}

}  // namespace secinvest
