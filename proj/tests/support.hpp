#pragma once

// Small hand-built scenarios for unit tests. Each target t gets its own
// vulnerability (threat 1) and depth (impact = exposure[t]), so I*T equals
// the given exposure exactly.

#include <filesystem>
#include <string>
#include <vector>

#include "secinvest/model.hpp"

namespace testing_support {

struct LevelSpec {
  std::vector<double> efficacy;
  double direct = 0;
  double indirect = 0;
};

inline secinvest::ScenarioData flat_data(const std::vector<double>& exposure,
                                         const std::vector<std::vector<LevelSpec>>& controls,
                                         double residual_floor = 0.0) {
  using namespace secinvest;
  ScenarioData d;
  d.name = "flat";
  d.residual_floor = residual_floor;
  for (std::size_t t = 0; t < exposure.size(); ++t) {
    const int id = static_cast<int>(t) + 1;
    d.depths.push_back({id, exposure[t]});
    Vulnerability v;
    v.id = id;
    v.cwe = 1000 + id;
    v.threat = 1.0;
    d.vulnerabilities.push_back(v);
    d.targets.push_back({id, id});
  }
  for (std::size_t j = 0; j < controls.size(); ++j) {
    Control c;
    c.id = static_cast<int>(j) + 1;
    c.name = "c" + std::to_string(c.id);
    ControlLevel zero;
    zero.efficacy.assign(exposure.size(), 0.0);
    c.levels.push_back(zero);
    int l = 1;
    for (const auto& ls : controls[j]) {
      c.levels.push_back({l++, ls.efficacy, ls.direct, ls.indirect});
    }
    d.controls.push_back(std::move(c));
  }
  return d;
}

inline secinvest::Scenario flat(const std::vector<double>& exposure,
                                const std::vector<std::vector<LevelSpec>>& controls,
                                double residual_floor = 0.0) {
  return secinvest::Scenario(flat_data(exposure, controls, residual_floor));
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("secinvest_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_support
