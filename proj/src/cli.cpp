#include "secinvest/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "secinvest/error.hpp"
#include "secinvest/oracle.hpp"
#include "secinvest/report.hpp"
#include "secinvest/scenario_io.hpp"
#include "secinvest/sweep.hpp"

namespace secinvest::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string scenario;
  std::string indirect;
  std::optional<double> lambda;
  std::optional<double> e_max;
  std::string weights;
  std::vector<std::string> methods;
  std::optional<double> budget;
  std::string budget_range;
  std::string out;
  bool chart = false;
  bool self_check = false;
  int control = 0;
  int devices = 0;
  std::string strategy;
  std::string impacts;
};

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v))
      throw InputError(what + ": '" + item + "' is not a number");
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_budget_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(parse_reals(item, "--budget-range").at(0));
  if (parts.size() != 3) throw InputError("--budget-range expects A:B:STEP");
  return budget_range(parts[0], parts[1], parts[2]);
}

DerivationOverrides overrides(const Options& o) {
  DerivationOverrides ov;
  ov.lambda = o.lambda;
  ov.e_max = o.e_max;
  if (!o.weights.empty()) {
    const auto w = parse_reals(o.weights, "--weights");
    if (w.size() != 4) throw InputError("--weights expects w1,w2,w3,w4");
    ov.weights = std::array<double, 4>{w[0], w[1], w[2], w[3]};
  }
  return ov;
}

IndirectProfile preset_profile(const std::string& name) {
  if (name == "none") return {IndirectPreset::None, {}};
  if (name == "normal") return {IndirectPreset::Normal, {}};
  throw InputError("--indirect expects none, normal or a file path");
}

bool is_preset(const std::string& name) { return name == "none" || name == "normal"; }

// Built-in case study unless --scenario is given. --indirect replaces the
// indirect costs of either source; the built-in default is "normal".
Scenario load(const Options& o) {
  nlohmann::json doc;
  if (o.scenario.empty()) {
    const std::string preset = o.indirect.empty() || !is_preset(o.indirect) ? "normal" : o.indirect;
    doc = generate_case_study(default_impact_profile(), preset_profile(preset));
  } else {
    doc = read_document(o.scenario);
  }
  Scenario base = load_scenario(doc, overrides(o));
  if (o.indirect.empty()) return base;
  const IndirectProfile profile = is_preset(o.indirect) ? preset_profile(o.indirect)
                                                        : read_indirect_file(o.indirect, base.data());
  return Scenario(with_indirect_costs(base.data(), profile));
}

std::vector<Method> methods(const Options& o) {
  if (o.methods.empty()) throw InputError("at least one --method is required");
  std::vector<Method> out;
  for (const auto& m : o.methods) out.push_back(method_from_string(m));
  return out;
}

fs::path out_dir(const Options& o) {
  fs::path dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << content;
  if (!f) throw IoError("cannot write " + path.string());
}

void add_scenario_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario document (default: built-in case study)");
  cmd->add_option("--indirect", o.indirect, "Indirect costs: none, normal or a JSON file");
  cmd->add_option("--lambda", o.lambda, "Severity coefficient for efficacy derivation");
  cmd->add_option("--e-max", o.e_max, "Maximum efficacy for efficacy derivation");
  cmd->add_option("--weights", o.weights, "Factor weights w1,w2,w3,w4");
}

int cmd_validate(const Options& o, std::ostream& out) {
  const Scenario s = load(o);
  std::size_t levels = 0;
  for (const auto& c : s.controls()) levels += c.levels.size() - 1;
  out << "ok: " << (o.scenario.empty() ? "built-in case study" : o.scenario) << ": "
      << s.depths().size() << " depths, " << s.vulnerabilities().size() << " vulnerabilities, "
      << s.target_count() << " targets, " << s.control_count() << " controls, " << levels
      << " levels\n";
  return kOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.budget) throw InputError("solve needs --budget");
  const double b = *o.budget;
  const auto ms = methods(o);
  const Scenario s = load(o);
  const fs::path dir = out_dir(o);
  const MethodRunner runner(s);
  const std::string tag = format_sig9(b);

  for (Method m : ms) {
    std::ostringstream csv;
    std::string summary;
    if (m == Method::FullGame) {
      const auto r = runner.full_game(b);
      for (const auto& w : r.warnings) err << "warning: " << w << '\n';
      write_solution_csv(csv, s, r);
      std::ostringstream sched;
      write_schedule_csv(sched, r);
      write_file(dir / ("schedules_fullgame_" + tag + ".csv"), sched.str());
      summary = "support=" + std::to_string(r.support_size) +
                " weakest_damage=" + format_sig9(r.weakest_target_damage) +
                " direct_cost=" + format_sig9(r.expected_direct_cost);
    } else if (m == Method::PureKnapsack) {
      const Solution sol = runner.knapsack(b, KnapsackMode::Pure);
      write_solution_csv(csv, s, sol);
      summary = "choice=" + format_levels(sol.choices()) +
                " weakest_damage=" + format_sig9(sol.worst_target_damage) +
                " direct_cost=" + format_sig9(sol.total_direct_cost);
    } else {
      const Solution sol = runner.knapsack(b, KnapsackMode::Hybrid);
      write_solution_csv(csv, s, sol, runner.plans());
      summary = "choice=" + format_levels(sol.choices()) +
                " weakest_damage=" + format_sig9(sol.worst_target_damage) +
                " direct_cost=" + format_sig9(sol.total_direct_cost);
    }
    const fs::path path = dir / ("solution_" + std::string(to_string(m)) + "_" + tag + ".csv");
    write_file(path, csv.str());
    out << to_string(m) << " budget=" << tag << ' ' << summary << " -> " << path.string() << '\n';
  }
  return kOk;
}

// Re-solves every knapsack point with the brute-force oracle.
bool self_check(const MethodRunner& runner, const std::vector<double>& budgets,
                const std::vector<Method>& ms, std::ostream& out) {
  std::size_t checks = 0, failures = 0;
  for (Method m : ms) {
    if (m == Method::FullGame) continue;  // certified against the unpruned game on every solve
    const auto mode = m == Method::PureKnapsack ? KnapsackMode::Pure : KnapsackMode::Hybrid;
    const auto& groups = mode == KnapsackMode::Pure ? runner.pure_groups() : runner.hybrid_groups();
    for (double b : budgets) {
      const Solution sys = runner.knapsack(b, mode);
      const Solution ref = oracle::oracle_knapsack(groups, runner.scenario(), b, mode);
      auto report = oracle::compare(std::string(to_string(m)) + " budget " + format_sig9(b),
                                    {ref.objective}, {sys.objective}, 1e-9);
      if (ref.choices() != sys.choices()) report.pass = false;
      ++checks;
      if (!report.pass) {
        ++failures;
        out << oracle::format(report) << " oracle=" << format_levels(ref.choices())
            << " system=" << format_levels(sys.choices()) << '\n';
      }
    }
  }
  out << "self-check: " << checks << " oracle comparisons, " << failures << " failures\n";
  return failures == 0;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  std::vector<double> budgets;
  if (!o.budget_range.empty() && o.budget) throw InputError("give either --budget or --budget-range");
  if (!o.budget_range.empty()) budgets = parse_budget_range(o.budget_range);
  else if (o.budget) budgets = {*o.budget};
  else throw InputError("sweep needs --budget-range A:B:STEP or --budget");
  const auto ms = methods(o);
  const Scenario s = load(o);
  const fs::path dir = out_dir(o);

  const auto points = budget_sweep(s, budgets, ms);
  std::ostringstream csv;
  write_sweep_csv(csv, points);
  write_file(dir / "sweep.csv", csv.str());
  out << "wrote " << points.size() << " points to " << (dir / "sweep.csv").string() << '\n';
  if (o.chart) {
    write_file(dir / "sweep.svg", sweep_svg(points, s.name()));
    out << "wrote " << (dir / "sweep.svg").string() << '\n';
  }
  if (o.self_check && !self_check(MethodRunner(s), budgets, ms, out)) return kSolverError;
  return kOk;
}

int cmd_advice(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.devices < 1) throw InputError("--devices must be at least 1");
  Plan plan;
  if (!o.strategy.empty()) {
    plan.control_id = o.control;
    plan.strategy = parse_reals(o.strategy, "--strategy");
    plan.level_cap = static_cast<int>(plan.strategy.size()) - 1;
  } else {
    if (!o.budget) throw InputError("advice needs --budget (or --strategy)");
    const Scenario s = load(o);
    const std::size_t j = s.control_index(o.control);
    const MethodRunner runner(s);
    const Solution sol = runner.knapsack(*o.budget, KnapsackMode::Hybrid);
    const int cap = sol.chosen[j].choice;
    if (cap == 0) {
      err << "control " << o.control << " is not part of the hybrid solution at budget "
          << format_sig9(*o.budget) << " (chosen caps " << format_levels(sol.choices()) << ")\n";
      return kValidationError;
    }
    plan = runner.plans()[j][static_cast<std::size_t>(cap)];
  }
  out << "control " << o.control << " plan " << join_probabilities(plan.strategy) << '\n';
  out << format_advice(render_plan_advice(plan, o.devices), o.devices);
  return kOk;
}

int cmd_gen_case_study(const Options& o, std::ostream& out) {
  std::vector<double> impacts = default_impact_profile();
  if (!o.impacts.empty()) impacts = parse_reals(o.impacts, "--impacts");
  nlohmann::json doc;
  if (o.indirect.empty() || is_preset(o.indirect)) {
    doc = generate_case_study(impacts, preset_profile(o.indirect.empty() ? "normal" : o.indirect));
  } else {
    const auto base = generate_case_study(impacts, {IndirectPreset::None, {}});
    const Scenario s = load_scenario(base);
    doc = generate_case_study(impacts, read_indirect_file(o.indirect, s.data()));
  }
  load_scenario(doc);  // the generated document must pass validation
  const std::string text = dump_canonical(doc);
  if (o.out.empty()) {
    out << text;
  } else {
    const fs::path target(o.out);
    if (target.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(target.parent_path(), ec);
      if (ec) throw IoError("cannot create " + target.parent_path().string() + ": " + ec.message());
    }
    write_file(target, text);
    out << "wrote " << o.out << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Security budget allocation: full game, pure knapsack and hybrid methods",
               "secinvest"};
  app.require_subcommand(1);

  auto* validate_cmd = app.add_subcommand("validate", "Validate a scenario document");
  add_scenario_options(validate_cmd, o);
  validate_cmd->add_option("path", o.scenario, "Scenario document");

  auto* solve_cmd = app.add_subcommand("solve", "Solve at one budget and write solution CSVs");
  add_scenario_options(solve_cmd, o);
  solve_cmd->add_option("--method", o.methods, "fullgame, knapsack or hybrid (repeatable)");
  solve_cmd->add_option("--budget", o.budget, "Budget")->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--out", o.out, "Output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "Compare methods across budgets");
  add_scenario_options(sweep_cmd, o);
  sweep_cmd->add_option("--method", o.methods, "fullgame, knapsack or hybrid (repeatable)");
  sweep_cmd->add_option("--budget", o.budget, "Single budget")->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--budget-range", o.budget_range, "A:B:STEP");
  sweep_cmd->add_option("--out", o.out, "Output directory");
  sweep_cmd->add_flag("--chart", o.chart, "Also write sweep.svg");
  sweep_cmd->add_flag("--self-check", o.self_check, "Check knapsack points against brute force");

  auto* advice_cmd = app.add_subcommand("advice", "Deployment advice for one control's plan");
  add_scenario_options(advice_cmd, o);
  advice_cmd->add_option("--control", o.control, "Control id")->required();
  advice_cmd->add_option("--devices", o.devices, "Number of devices, most important first")
      ->required();
  advice_cmd->add_option("--budget", o.budget, "Budget for the hybrid solution")
      ->check(CLI::NonNegativeNumber);
  advice_cmd->add_option("--strategy", o.strategy, "Explicit plan p0,p1,... instead of solving");

  auto* gen_cmd = app.add_subcommand("gen-case-study", "Write the built-in case study document");
  gen_cmd->add_option("--indirect", o.indirect, "Indirect costs: none, normal or a JSON file");
  gen_cmd->add_option("--impacts", o.impacts, "Impacts of depths 1..3, comma separated");
  gen_cmd->add_option("--out", o.out, "Output file (default: stdout)");

  std::vector<std::string> argv_store;
  argv_store.emplace_back("secinvest");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*solve_cmd) return cmd_solve(o, out, err);
    if (*sweep_cmd) return cmd_sweep(o, out);
    if (*advice_cmd) return cmd_advice(o, out, err);
    if (*gen_cmd) return cmd_gen_case_study(o, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const SizingError& e) {
    err << "error: " << e.what() << '\n';
    return kSizingError;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << " (incumbent gap " << e.gap() << ")\n";
    return kSolverError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kValidationError;
}

}  // namespace secinvest::cli
