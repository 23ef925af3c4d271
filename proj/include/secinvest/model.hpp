#pragma once

// Environment of the security investment problem: depths, vulnerabilities,
// targets, controls and their levels, plus the damage algebra shared by the
// Full Game, Pure Knapsack and Hybrid methods.
//
// Conventions used throughout the library:
//   S(l,t) = I(t) * T(t) * (1 - E(l,t))       expected damage
//   loss(l,t) = S(l,t) + C(l)                  what the defender minimizes
// The attacker picks targets to maximize the same loss; C(l) is constant
// along a row, so target preferences are governed by S alone.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace secinvest {

enum class Category { InsecureInteractions, RiskyResourceManagement, PorousDefences };

std::string_view to_string(Category c);
// Accepts the snake_case document spelling ("insecure_interactions", ...).
Category category_from_string(std::string_view s);

struct Depth {
  int id = 0;
  double impact = 0.0;  // I(d)
  bool operator==(const Depth&) const = default;
};

// CWE attack factors, each in {1,2,3}.
struct AttackFactors {
  int prevalence = 1;
  int attack_frequency = 1;
  int ease_of_detection = 1;
  int attacker_awareness = 1;

  std::array<int, 4> as_array() const {
    return {prevalence, attack_frequency, ease_of_detection, attacker_awareness};
  }
  bool operator==(const AttackFactors&) const = default;
};

struct Vulnerability {
  int id = 0;
  int cwe = 0;
  double threat = 1.0;  // T(v), normalized to (0, 1]
  AttackFactors factors;
  double repair_cost = 0.0;
  Category category = Category::InsecureInteractions;

  bool operator==(const Vulnerability&) const = default;
};

struct Target {
  int vulnerability_id = 0;
  int depth_id = 0;
  bool operator==(const Target&) const = default;
};

struct ControlLevel {
  int index = 0;                 // 0 = not implemented
  std::vector<double> efficacy;  // E(l,t), one entry per target
  double direct_cost = 0.0;      // Gamma(l), consumes budget
  double indirect_cost = 0.0;    // C(l), enters the defender's loss

  bool operator==(const ControlLevel&) const = default;
};

struct Control {
  int id = 0;
  std::string name;
  std::vector<ControlLevel> levels;  // levels[0] is the null level
  std::vector<Category> covers;

  // Highest level index L.
  int top_level() const { return static_cast<int>(levels.size()) - 1; }
  bool operator==(const Control&) const = default;
};

// Raw, unvalidated scenario contents.
struct ScenarioData {
  std::string name;
  std::vector<Depth> depths;
  std::vector<Vulnerability> vulnerabilities;
  std::vector<Target> targets;
  std::vector<Control> controls;
  double residual_floor = 0.0;  // epsilon: minimum uncovered fraction

  bool operator==(const ScenarioData&) const = default;
};

// Immutable, validated scenario. Construction throws ValidationError naming
// the offending field when any invariant is violated.
class Scenario {
 public:
  explicit Scenario(ScenarioData data);

  const ScenarioData& data() const { return data_; }
  const std::string& name() const { return data_.name; }
  const std::vector<Depth>& depths() const { return data_.depths; }
  const std::vector<Vulnerability>& vulnerabilities() const { return data_.vulnerabilities; }
  const std::vector<Target>& targets() const { return data_.targets; }
  const std::vector<Control>& controls() const { return data_.controls; }
  double residual_floor() const { return data_.residual_floor; }

  std::size_t target_count() const { return data_.targets.size(); }
  std::size_t control_count() const { return data_.controls.size(); }

  // I(t) * T(t), the undefended expected damage of target t.
  double exposure(std::size_t target) const { return exposure_.at(target); }
  std::span<const double> exposures() const { return exposure_; }
  double impact(std::size_t target) const { return impact_.at(target); }
  double threat(std::size_t target) const { return threat_.at(target); }

  // Position of a control by its id; throws ValidationError if unknown.
  std::size_t control_index(int control_id) const;
  const ControlLevel& level(std::size_t control, int level_index) const;

  // Human-readable label "v<id>@d<id>" for target t.
  std::string target_label(std::size_t target) const;

  bool operator==(const Scenario& o) const { return data_ == o.data_; }

 private:
  ScenarioData data_;
  std::vector<double> impact_;
  std::vector<double> threat_;
  std::vector<double> exposure_;
};

// Throws ValidationError on the first violated invariant.
void validate(const ScenarioData& data);

// S(l,t) = I(t) T(t) (1 - E(l,t)).
double expected_damage(const Scenario& s, std::size_t control, int level, std::size_t target);

// S(l,t) + C(l).
double defender_loss(const Scenario& s, std::size_t control, int level, std::size_t target);

// min(1 - eps, sum of per-control mitigations). Inputs are E values already
// selected for one target.
double combine_mitigation(std::span<const double> per_control, double residual_floor);

// Combined mitigation of a pure level choice (one level per control) at t.
double combined_mitigation(const Scenario& s, std::span<const int> levels, std::size_t target);

// I(t) T(t) (1 - combined_mitigation).
double residual_damage(const Scenario& s, std::span<const int> levels, std::size_t target);

// Residual damage at t given an already combined mitigation value.
double residual_from_mitigation(const Scenario& s, std::size_t target, double mitigation);

}  // namespace secinvest
