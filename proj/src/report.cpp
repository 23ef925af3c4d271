#include "secinvest/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "secinvest/scenario_io.hpp"

namespace secinvest {

namespace {

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void summary_row(std::ostream& out, const std::string& choice, double damage, double direct) {
  // The summary row reuses the strategy column for the weakest-target damage.
  out << "total," << quoted(choice) << ',' << format_sig9(damage) << ',' << format_sig9(direct)
      << '\n';
}

}  // namespace

std::string join_probabilities(const std::vector<double>& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ';';
    out += format_sig9(p[i]);
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepPoint>& points) {
  out << kSweepHeader << '\n';
  for (const auto& p : points)
    out << format_sig9(p.budget) << ',' << to_string(p.method) << ','
        << format_sig9(p.weakest_damage) << ',' << format_sig9(p.total_direct_cost) << ','
        << format_sig9(p.total_indirect_cost) << '\n';
}

void write_solution_csv(std::ostream& out, const Scenario& s, const Solution& sol) {
  out << kSolutionHeader << '\n';
  for (const auto& it : sol.chosen) {
    const auto& c = s.controls()[s.control_index(it.control_id)];
    std::vector<double> strategy(c.levels.size(), 0.0);
    strategy[static_cast<std::size_t>(it.choice)] = 1.0;
    out << it.control_id << ',' << it.choice << ',' << join_probabilities(strategy) << ','
        << format_sig9(it.direct_cost) << '\n';
  }
  summary_row(out, format_levels(sol.choices()), sol.worst_target_damage, sol.total_direct_cost);
}

void write_solution_csv(std::ostream& out, const Scenario& s, const Solution& sol,
                        const std::vector<std::vector<Plan>>& plans) {
  out << kSolutionHeader << '\n';
  for (std::size_t j = 0; j < sol.chosen.size(); ++j) {
    const auto& it = sol.chosen[j];
    const Plan& p = plans.at(s.control_index(it.control_id)).at(static_cast<std::size_t>(it.choice));
    out << it.control_id << ',' << it.choice << ',' << join_probabilities(p.strategy) << ','
        << format_sig9(it.direct_cost) << '\n';
  }
  summary_row(out, format_levels(sol.choices()), sol.worst_target_damage, sol.total_direct_cost);
}

void write_solution_csv(std::ostream& out, const Scenario& s, const FullGameResult& r) {
  out << kSolutionHeader << '\n';
  const auto marginals = r.level_marginals(s);
  for (std::size_t j = 0; j < s.control_count(); ++j) {
    double cost = 0.0;
    for (std::size_t l = 0; l < marginals[j].size(); ++l)
      cost += marginals[j][l] * s.controls()[j].levels[l].direct_cost;
    out << s.controls()[j].id << ",," << join_probabilities(marginals[j]) << ','
        << format_sig9(cost) << '\n';
  }
  const std::string choice =
      r.support.size() == 1 ? format_levels(r.support.front().schedule.levels)
                            : "mixed:" + std::to_string(r.support.size());
  summary_row(out, choice, r.weakest_target_damage, r.expected_direct_cost);
}

void write_schedule_csv(std::ostream& out, const FullGameResult& r) {
  out << kScheduleHeader << '\n';
  for (const auto& w : r.support)
    out << quoted(format_levels(w.schedule.levels)) << ',' << format_sig9(w.probability) << '\n';
}

std::string sweep_svg(const std::vector<SweepPoint>& points, const std::string& title) {
  constexpr double W = 720, H = 440, left = 70, right = 150, top = 40, bottom = 50;
  std::map<Method, std::vector<std::pair<double, double>>> series;
  double x0 = 0, x1 = 1, y1 = 1;
  bool first = true;
  for (const auto& p : points) {
    series[p.method].emplace_back(p.budget, p.weakest_damage);
    if (first) {
      x0 = x1 = p.budget;
      first = false;
    }
    x0 = std::min(x0, p.budget);
    x1 = std::max(x1, p.budget);
    y1 = std::max(y1, p.weakest_damage);
  }
  if (x1 <= x0) x1 = x0 + 1;
  y1 *= 1.05;
  const double pw = W - left - right, ph = H - top - bottom;
  auto X = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto Y = [&](double y) { return top + ph - y / y1 * ph; };
  char buf[128];

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
      << "</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw << "\" y2=\""
      << top + ph << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + ph
      << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5.0, yv = y1 * k / 5.0;
    std::snprintf(buf, sizeof buf, "%.4g", xv);
    svg << "<text x=\"" << X(xv) << "\" y=\"" << top + ph + 18 << "\" text-anchor=\"middle\">"
        << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.4g", yv);
    svg << "<text x=\"" << left - 6 << "\" y=\"" << Y(yv) + 4 << "\" text-anchor=\"end\">" << buf
        << "</text>\n";
  }
  svg << "<text x=\"" << left + pw / 2 << "\" y=\"" << H - 10
      << "\" text-anchor=\"middle\">budget</text>\n";
  svg << "<text x=\"16\" y=\"" << top + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + ph / 2 << ")\">weakest-target damage</text>\n";

  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
  int k = 0;
  for (const auto& [method, pts] : series) {
    const char* color = colors[static_cast<int>(method) % 3];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& [x, y] : pts) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(x), Y(y));
      svg << buf;
    }
    svg << "\"/>\n";
    const double ly = top + 20 + 20 * k++;
    svg << "<line x1=\"" << left + pw + 15 << "\" y1=\"" << ly << "\" x2=\"" << left + pw + 40
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << left + pw + 46 << "\" y=\"" << ly + 4 << "\">" << to_string(method)
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace secinvest
