// Copyright 2026 The DCEA Simulator Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "dcea/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "dcea/errors.hpp"

namespace dcea {

namespace {

std::string col(const char* stem, int arm) {
  return stem + std::to_string(arm + 1);
}

// First sample time after which value(r) < tol holds for every later row.
std::optional<double> settle_time(const Eigen::VectorXd& t,
                                  const Eigen::VectorXd& value, double tol) {
  Eigen::Index r = value.size();
  while (r > 0 && value[r - 1] < tol) --r;
  if (r == value.size()) return std::nullopt;
  return t[r];
}

void add_check(RunReport& report, std::string name, double value,
               double threshold) {
  report.checks.push_back({std::move(name), value, threshold, value < threshold});
}

}  // namespace

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed; });
}

RunReport compute_report(const SimTrace& trace, const ScenarioConfig& config) {
  RunReport report;
  report.scenario = config.name;
  report.abort_reason = trace.abort_reason;
  report.settle_tolerance = config.thresholds.settle_tolerance;
  report.control_period = config.timing.control_period;
  report.warnings = config.warnings();
  const Thresholds& th = config.thresholds;
  const int n = static_cast<int>(config.arms.size());
  const bool has_leader = config.leader.has_value();

  if (trace.abort_reason) {
    report.checks.push_back({"run_complete", 1.0, 0.0, false});
  }
  if (trace.rows() == 0) return report;

  const Eigen::VectorXd t = trace.time();
  report.t_start = t[0];
  report.t_end = t[t.size() - 1];
  report.tail_start =
      th.tail_start.value_or(config.timing.t0 +
                             0.75 * (config.timing.t_end - config.timing.t0));
  // Half a period of slack keeps the tail boundary robust to rounding of t.
  const double edge = report.tail_start - 0.5 * config.timing.control_period;
  Eigen::Index first_tail = 0;
  while (first_tail < t.size() && t[first_tail] < edge) ++first_tail;
  const Eigen::Index tail_rows = t.size() - first_tail;
  auto tail_max = [&](const Eigen::VectorXd& v) {
    return tail_rows > 0 ? v.tail(tail_rows).maxCoeff()
                         : std::numeric_limits<double>::quiet_NaN();
  };

  std::vector<bool> reached(n, true);
  if (config.mode == EstimatorMode::kPinned) {
    for (const auto& seg : config.topology.segments()) {
      const std::vector<bool> r = leader_reached_nodes(seg.topology);
      for (int i = 0; i < n; ++i) reached[i] = reached[i] && r[i];
    }
  }

  for (int i = 0; i < n; ++i) {
    const ArmSetup& setup = config.arms[i];
    ArmMetrics m;
    m.name = setup.name;
    m.subtask = to_string(setup.subtask.kind);
    m.leader_reachable = reached[i];
    if (has_leader) {
      const Eigen::VectorXd e = trace.series(col("e_norm", i));
      m.position_error = tail_max(e);
      m.velocity_error = tail_max(trace.series(col("ev_norm", i)));
      m.final_position_error = e[e.size() - 1];
    }
    if (setup.model.redundant()) {
      const Eigen::VectorXd manip = trace.series(col("manip", i));
      if (tail_rows > 0) m.mean_manipulability = manip.tail(tail_rows).mean();
      if (setup.subtask.kind != SubtaskSpec::Kind::kNone) {
        m.subtask_error = tail_max(trace.series(col("es_norm", i)));
      }
      if (setup.subtask.kind == SubtaskSpec::Kind::kJointTarget) {
        const Eigen::VectorXd qj = trace.series(
            "q" + std::to_string(i + 1) + "_" + std::to_string(setup.subtask.joint + 1));
        m.joint_target_error = std::abs(qj[qj.size() - 1] - setup.subtask.target);
      }
    }
    report.arms.push_back(std::move(m));
  }

  if (has_leader && config.mode == EstimatorMode::kPinned) {
    Eigen::VectorXd sigma = Eigen::VectorXd::Zero(t.size());
    for (int i = 0; i < n; ++i) {
      if (reached[i]) sigma = sigma.cwiseMax(trace.series(col("sigma_inf", i)));
    }
    report.observed_settle_time = settle_time(t, sigma, report.settle_tolerance);
    std::vector<Vector6d> initial;
    for (const ArmSetup& a : config.arms) initial.push_back(a.initial_estimate.zeta);
    try {
      report.settle_time_bound =
          settle_time_bound(initial, *config.leader, config.timing.t0, config.betas);
    } catch (const NonpositiveMargin&) {
    }
    if (report.settle_time_bound) {
      const double from = *report.settle_time_bound + config.timing.control_period;
      double worst = 0.0;
      for (Eigen::Index r = 0; r < t.size(); ++r) {
        if (t[r] >= from - 1e-9 * config.timing.control_period) {
          worst = std::max(worst, sigma[r]);
        }
      }
      report.max_sigma_after_bound = worst;
    }
  }

  if (!has_leader) {
    Eigen::VectorXd zeta_gap = Eigen::VectorXd::Zero(t.size());
    Eigen::VectorXd x_gap = Eigen::VectorXd::Zero(t.size());
    static const char* kZeta[6] = {"xh", "xh", "vh", "vh", "ah", "ah"};
    static const char* kAxis[6] = {"_x", "_y", "_x", "_y", "_x", "_y"};
    auto zeta_of = [&](int i, int k) {
      return trace.series(kZeta[k] + std::to_string(i + 1) + kAxis[k]);
    };
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = 0; k < 6; ++k) {
          zeta_gap = zeta_gap.cwiseMax((zeta_of(i, k) - zeta_of(j, k)).cwiseAbs());
        }
        const Eigen::VectorXd dx = trace.series(col("x", i) + "_x") -
                                   trace.series(col("x", j) + "_x");
        const Eigen::VectorXd dy = trace.series(col("x", i) + "_y") -
                                   trace.series(col("x", j) + "_y");
        x_gap = x_gap.cwiseMax((dx.array().square() + dy.array().square()).sqrt().matrix());
      }
    }
    report.consensus_settle_time = settle_time(t, zeta_gap, report.settle_tolerance);
    report.estimate_disagreement = tail_max(zeta_gap);
    report.position_disagreement = tail_max(x_gap);
  }

  // Checks.
  if (config.mode == EstimatorMode::kPinned && has_leader) {
    const double unreachable = static_cast<double>(
        std::count(reached.begin(), reached.end(), false));
    report.checks.push_back({"leader_reachable", unreachable, 0.0, unreachable == 0});
    if (report.settle_time_bound) {
      const double slack = *report.settle_time_bound + config.timing.control_period;
      const double observed = report.observed_settle_time.value_or(
          std::numeric_limits<double>::infinity());
      report.checks.push_back({"estimator_settle_time", observed, slack,
                               observed <= slack});
    }
  }
  auto worst_over = [&](auto member, bool reachable_only) {
    std::optional<double> worst;
    for (const ArmMetrics& m : report.arms) {
      const std::optional<double>& v = m.*member;
      if (!v || (reachable_only && !m.leader_reachable)) continue;
      worst = std::max(worst.value_or(-std::numeric_limits<double>::infinity()), *v);
    }
    return worst;
  };
  if (th.position_error) {
    if (auto w = worst_over(&ArmMetrics::position_error, true)) {
      add_check(report, "position_error", *w, *th.position_error);
    }
  }
  if (th.velocity_error) {
    if (auto w = worst_over(&ArmMetrics::velocity_error, true)) {
      add_check(report, "velocity_error", *w, *th.velocity_error);
    }
  }
  if (th.subtask_error) {
    if (auto w = worst_over(&ArmMetrics::subtask_error, false)) {
      add_check(report, "subtask_error", *w, *th.subtask_error);
    }
  }
  if (th.joint_target_error) {
    if (auto w = worst_over(&ArmMetrics::joint_target_error, false)) {
      add_check(report, "joint_target_error", *w, *th.joint_target_error);
    }
  }
  if (!has_leader) {
    const double observed =
        report.consensus_settle_time.value_or(std::numeric_limits<double>::infinity());
    report.checks.push_back({"consensus_settle_time", observed, report.t_end,
                             std::isfinite(observed)});
    if (th.pairwise_position_error && report.position_disagreement) {
      add_check(report, "pairwise_position_error", *report.position_disagreement,
                *th.pairwise_position_error);
    }
  }
  return report;
}

void add_twin_comparison(RunReport& report, const RunReport& twin) {
  for (std::size_t i = 0; i < report.arms.size() && i < twin.arms.size(); ++i) {
    const ArmMetrics& with = report.arms[i];
    if (with.subtask != "manipulability" || !with.mean_manipulability ||
        !twin.arms[i].mean_manipulability) {
      continue;
    }
    // Passes when the twin's average is strictly below this run's.
    report.checks.push_back({"manipulability_gain_" + with.name,
                             *twin.arms[i].mean_manipulability,
                             *with.mean_manipulability,
                             *twin.arms[i].mean_manipulability <
                                 *with.mean_manipulability});
  }
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string("-");
}

nlohmann::json opt(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_report(const RunReport& r) {
  std::ostringstream out;
  out << "scenario " << r.scenario << "\n";
  out << "samples t=" << fmt(r.t_start) << ".." << fmt(r.t_end)
      << "  tail from t=" << fmt(r.tail_start) << "\n";
  if (r.abort_reason) out << "ABORTED: " << *r.abort_reason << "\n";
  for (const std::string& w : r.warnings) out << "warning: " << w << "\n";
  out << "\narm        reach  |e|tail     |ev|tail    |es|tail    joint_err   manip_avg\n";
  for (const ArmMetrics& m : r.arms) {
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %-6s %-11s %-11s %-11s %-11s %s\n",
                  m.name.c_str(), m.leader_reachable ? "yes" : "NO",
                  fmt(m.position_error).c_str(), fmt(m.velocity_error).c_str(),
                  fmt(m.subtask_error).c_str(), fmt(m.joint_target_error).c_str(),
                  fmt(m.mean_manipulability).c_str());
    out << line;
  }
  out << "\n";
  if (r.settle_time_bound || r.observed_settle_time) {
    out << "estimator settle: observed " << fmt(r.observed_settle_time)
        << " s, bound t_fmax " << fmt(r.settle_time_bound) << " s, max |sigma|_inf after "
        << fmt(r.max_sigma_after_bound) << " (tolerance " << fmt(r.settle_tolerance)
        << ")\n";
  }
  if (r.estimate_disagreement) {
    out << "consensus settle " << fmt(r.consensus_settle_time)
        << " s, tail estimate gap " << fmt(r.estimate_disagreement)
        << ", tail position gap " << fmt(r.position_disagreement) << " m\n";
  }
  out << "\nchecks\n";
  for (const Check& c : r.checks) {
    out << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  value "
        << fmt(c.value) << "  limit " << fmt(c.threshold) << "\n";
  }
  out << (r.passed() ? "PASSED" : "FAILED") << "\n";
  return out.str();
}

std::string report_to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["passed"] = r.passed();
  j["abort_reason"] = r.abort_reason ? nlohmann::json(*r.abort_reason) : nlohmann::json(nullptr);
  j["t_start"] = r.t_start;
  j["t_end"] = r.t_end;
  j["tail_start"] = r.tail_start;
  j["settle_tolerance"] = r.settle_tolerance;
  j["control_period"] = r.control_period;
  j["settle_time_bound"] = opt(r.settle_time_bound);
  j["observed_settle_time"] = opt(r.observed_settle_time);
  j["max_sigma_after_bound"] = opt(r.max_sigma_after_bound);
  j["consensus_settle_time"] = opt(r.consensus_settle_time);
  j["estimate_disagreement"] = opt(r.estimate_disagreement);
  j["position_disagreement"] = opt(r.position_disagreement);
  j["arms"] = nlohmann::json::array();
  for (const ArmMetrics& m : r.arms) {
    j["arms"].push_back({{"name", m.name},
                         {"subtask", m.subtask},
                         {"leader_reachable", m.leader_reachable},
                         {"position_error", opt(m.position_error)},
                         {"velocity_error", opt(m.velocity_error)},
                         {"final_position_error", opt(m.final_position_error)},
                         {"subtask_error", opt(m.subtask_error)},
                         {"joint_target_error", opt(m.joint_target_error)},
                         {"mean_manipulability", opt(m.mean_manipulability)}});
  }
  j["checks"] = nlohmann::json::array();
  for (const Check& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"value", c.value},
                           {"threshold", c.threshold},
                           {"passed", c.passed}});
  }
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

}  // namespace dcea
