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

// Acceptance runner: one PASS/FAIL line per criterion. With no arguments every
// criterion runs; `acceptance N` runs criterion N only. The exit status is
// nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "dcea/estimator.hpp"
#include "dcea/graph.hpp"
#include "dcea/report.hpp"
#include "dcea/scenario_io.hpp"
#include "dcea/simulation.hpp"
#include "dcea/trace_io.hpp"
#include "dcea/verify.hpp"

using namespace dcea;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fixture(const std::string& name) {
  return std::string(DCEA_SOURCE_DIR) + "/scenarios/" + name;
}

ScenarioConfig load(const std::string& name) {
  return parse_scenario(fixture(name)).config;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

// Largest value of `column` over samples with t in [from, to].
double window_max(const SimTrace& tr, const std::string& column, double from,
                  double to = INFINITY) {
  const Eigen::VectorXd t = tr.time();
  const Eigen::VectorXd v = tr.series(column);
  double worst = 0.0;
  for (int k = 0; k < tr.rows(); ++k) {
    if (t[k] >= from - 1e-9 && t[k] <= to + 1e-9) worst = std::max(worst, v[k]);
  }
  return worst;
}

double window_mean(const SimTrace& tr, const std::string& column, double from) {
  const Eigen::VectorXd t = tr.time();
  const Eigen::VectorXd v = tr.series(column);
  double sum = 0.0;
  int count = 0;
  for (int k = 0; k < tr.rows(); ++k) {
    if (t[k] >= from - 1e-9) {
      sum += v[k];
      ++count;
    }
  }
  return sum / count;
}

struct Tracking {
  double position = 0.0;
  double velocity = 0.0;
};

Tracking tail_tracking(const SimTrace& tr, const std::vector<int>& arms,
                       double from) {
  Tracking out;
  for (int i : arms) {
    const std::string n = std::to_string(i + 1);
    out.position = std::max(out.position, window_max(tr, "e_norm" + n, from));
    out.velocity = std::max(out.velocity, window_max(tr, "ev_norm" + n, from));
  }
  return out;
}

std::vector<int> all_arms(const ScenarioConfig& cfg) {
  std::vector<int> v(cfg.arms.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
  return v;
}

constexpr double kPosition = 0.02;
constexpr double kVelocity = 0.05;
constexpr double kTail = 15.0;

// --- 1 ----------------------------------------------------------------------

Outcome dynamics_identities() {
  const auto start = Clock::now();
  const std::vector<PropertyResult> results = run_invariant_suite(1, 1000);
  const double elapsed = seconds_since(start);
  bool ok = elapsed < 5.0;
  std::string failed;
  for (const PropertyResult& r : results) {
    if (!r.passed()) {
      ok = false;
      failed += " " + r.name;
    }
  }
  return {ok, fmt("%.0f properties, 1000 states per arm, %.2f s", static_cast<double>(results.size()), elapsed) +
                  (failed.empty() ? "" : ", failing:" + failed)};
}

// --- 2 ----------------------------------------------------------------------

// Fixpoint reachability over bitmasks; `in[i]` holds the senders node i reads.
unsigned reach_from(unsigned seeds, const std::vector<unsigned>& in, int n) {
  unsigned reached = seeds;
  for (bool grew = true; grew;) {
    grew = false;
    for (int i = 0; i < n; ++i) {
      if (!(reached >> i & 1u) && (in[i] & reached)) {
        reached |= 1u << i;
        grew = true;
      }
    }
  }
  return reached;
}

Outcome graph_oracle() {
  const auto start = Clock::now();
  long graphs = 0;
  long mismatches = 0;
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::pair<int, int>> slots;  // (receiver, sender)
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j) slots.emplace_back(i, j);
      }
    }
    const unsigned all = (1u << n) - 1;
    Eigen::MatrixXd adjacency(n, n);
    for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
      adjacency.setZero();
      std::vector<unsigned> in(n, 0);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (mask >> s & 1u) {
          adjacency(slots[s].first, slots[s].second) = 1.0;
          in[slots[s].first] |= 1u << slots[s].second;
        }
      }
      bool tree = false;
      for (int root = 0; root < n && !tree; ++root) {
        tree = reach_from(1u << root, in, n) == all;
      }
      const Topology plain(adjacency, Eigen::VectorXd::Zero(n));
      mismatches += spanning_tree_exists(plain) != tree;
      for (unsigned pins = 0; pins <= all; ++pins) {
        Eigen::VectorXd pinning(n);
        for (int i = 0; i < n; ++i) pinning[i] = pins >> i & 1u;
        const Topology topo(adjacency, pinning);
        mismatches += leader_reachable(topo) != (reach_from(pins, in, n) == all);
        ++graphs;
      }
    }
  }
  const double elapsed = seconds_since(start);

  const ScenarioConfig cfg = load("paper_sec4.scenario");
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(7, 7);
  expected.row(1) << -1, 2, -1, 0, 0, 0, 0;
  expected.row(3) << -1, 0, -1, 2, 0, 0, 0;
  expected.row(5) << 0, 0, 0, 0, -1, 1, 0;
  const bool laplacian_ok = laplacian(cfg.topology.at(0.0)) == expected;

  return {mismatches == 0 && laplacian_ok && elapsed < 60.0,
          fmt("%.0f pinned digraphs with n <= 5, %.0f mismatches, formation Laplacian ",
              static_cast<double>(graphs), static_cast<double>(mismatches)) +
              (laplacian_ok ? "exact" : "differs") + fmt(", %.1f s", elapsed)};
}

// --- 3 ----------------------------------------------------------------------

Outcome finite_time_estimation() {
  const auto start = Clock::now();
  const ScenarioConfig cfg = load("paper_sec4_fixed_ic.scenario");
  std::vector<Vector6d> zetas;
  for (const ArmSetup& a : cfg.arms) zetas.push_back(a.initial_estimate.zeta);
  const double bound = settle_time_bound(zetas, *cfg.leader, cfg.timing.t0, cfg.betas);
  const SimTrace tr = run(cfg);
  double sigma = 0.0;
  for (std::size_t i = 0; i < cfg.arms.size(); ++i) {
    sigma = std::max(sigma, window_max(tr, "sigma_inf" + std::to_string(i + 1), bound + 0.01));
  }
  const double elapsed = seconds_since(start);
  return {!tr.abort_reason && sigma < 0.02 && elapsed < 30.0,
          fmt("t_fmax %.4f s, max sigma after t_fmax + 0.01 s = %.4g (< 0.02), %.1f s",
              bound, sigma, elapsed)};
}

// --- 4 ----------------------------------------------------------------------

Outcome maintask() {
  const ScenarioConfig base = load("paper_sec4_fixed_ic.scenario");
  bool ok = true;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ScenarioConfig cfg = base;
    cfg.disturbance.seed = seed;
    const SimTrace tr = run(cfg);
    const Tracking e = tail_tracking(tr, all_arms(cfg), kTail);
    const bool seed_ok = !tr.abort_reason && e.position < kPosition && e.velocity < kVelocity;
    ok = ok && seed_ok;
    if (!detail.empty()) detail += "; ";
    detail += fmt("seed %.0f: |e| %.3g, |ev| %.3g", static_cast<double>(seed), e.position,
                  e.velocity);
  }
  return {ok, detail + " (limits 0.02 m, 0.05 m/s over [15, 20] s)"};
}

// --- 5 ----------------------------------------------------------------------

Outcome subtasks() {
  const ScenarioConfig cfg = load("paper_sec4_fixed_ic.scenario");
  const auto [with, without] = run_pair_subtask(cfg);
  const double q62 = with.series("q6_2")[with.rows() - 1];
  const double es6 = window_max(with, "es_norm6", kTail);
  const double manip_with = window_mean(with, "manip7", kTail);
  const double manip_without = window_mean(without, "manip7", kTail);
  const bool ok = !with.abort_reason && !without.abort_reason &&
                  std::abs(q62 - 1.0) < 0.05 && es6 < 0.02 && manip_with > manip_without;
  return {ok, fmt("q6_2(20) = %.4f (target 1 +- 0.05), max |e_s6| = %.3g (< 0.02), "
                  "mean det(J7 J7^T) %.4g with vs %.4g without",
                  q62, es6, manip_with, manip_without)};
}

// --- 6 ----------------------------------------------------------------------

Outcome necessity() {
  const ScenarioConfig cfg = load("corollary1_broken.scenario");
  const SimTrace tr = run(cfg);
  const double off = window_max(tr, "e_norm6", 10.0, 20.0);
  const std::vector<bool> reached = leader_reached_nodes(cfg.topology.at(cfg.timing.t0));
  std::vector<int> reachable;
  for (std::size_t i = 0; i < reached.size(); ++i) {
    if (reached[i]) reachable.push_back(static_cast<int>(i));
  }
  const Tracking e = tail_tracking(tr, reachable, kTail);
  const bool ok = !tr.abort_reason && !reached[5] && off > 0.1 &&
                  e.position < kPosition && e.velocity < kVelocity;
  return {ok, fmt("sup |x6 - x0| on [10, 20] s = %.3g (> 0.1); reachable arms |e| %.3g, "
                  "|ev| %.3g (limits 0.02, 0.05)",
                  off, e.position, e.velocity)};
}

// --- 7 ----------------------------------------------------------------------

Outcome leaderless() {
  const ScenarioConfig cfg = load("corollary2_leaderless.scenario");
  const SimTrace tr = run(cfg);
  const int n = static_cast<int>(cfg.arms.size());
  const Eigen::VectorXd t = tr.time();
  const char* zeta_cols[6] = {"xh", "xh", "vh", "vh", "ah", "ah"};
  const char* axis[6] = {"_x", "_y", "_x", "_y", "_x", "_y"};
  Eigen::VectorXd gap = Eigen::VectorXd::Zero(tr.rows());
  Eigen::VectorXd spread = Eigen::VectorXd::Zero(tr.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::string a = std::to_string(i + 1);
      const std::string b = std::to_string(j + 1);
      for (int c = 0; c < 6; ++c) {
        gap = gap.cwiseMax((tr.series(zeta_cols[c] + a + axis[c]) -
                            tr.series(zeta_cols[c] + b + axis[c])).cwiseAbs());
      }
      const Eigen::ArrayXd dx = tr.series("x" + a + "_x") - tr.series("x" + b + "_x");
      const Eigen::ArrayXd dy = tr.series("x" + a + "_y") - tr.series("x" + b + "_y");
      spread = spread.cwiseMax((dx.square() + dy.square()).sqrt().matrix());
    }
  }
  // Observed settle time: first sample after which the gap stays below 0.02.
  int settle = tr.rows();
  while (settle > 0 && gap[settle - 1] < 0.02) --settle;
  const bool settled = settle < tr.rows();
  double tail_spread = 0.0;
  for (int k = 0; k < tr.rows(); ++k) {
    if (t[k] >= kTail - 1e-9) tail_spread = std::max(tail_spread, spread[k]);
  }
  const bool ok = !tr.abort_reason && settled && tail_spread < 0.05;
  return {ok, (settled ? fmt("estimates agree within 0.02 from t = %.2f s", t[settle])
                       : std::string("estimates never agree within 0.02")) +
                  fmt("; end-effector spread on [15, 20] s = %.3g m (< 0.05)", tail_spread)};
}

// --- 8 ----------------------------------------------------------------------

Outcome switching() {
  const ScenarioConfig cfg = load("corollary3_switching.scenario");
  bool assumption = cfg.topology.switching();
  for (const auto& seg : cfg.topology.segments()) {
    assumption = assumption && leader_reachable(seg.topology);
  }
  const SimTrace tr = run(cfg);
  const Tracking e = tail_tracking(tr, all_arms(cfg), kTail);
  const bool ok = assumption && !tr.abort_reason && e.position < kPosition &&
                  e.velocity < kVelocity;
  return {ok, fmt("%.0f segments, every one leader-reachable: ",
                  static_cast<double>(cfg.topology.segments().size())) +
                  (assumption ? "yes" : "no") +
                  fmt("; |e| %.3g, |ev| %.3g (limits 0.02, 0.05)", e.position, e.velocity)};
}

// --- 9 ----------------------------------------------------------------------

Outcome determinism() {
  int identical = 0;
  const char* names[] = {"paper_sec4.scenario", "paper_sec4_fixed_ic.scenario",
                         "corollary1_broken.scenario", "corollary2_leaderless.scenario",
                         "corollary3_switching.scenario"};
  for (const char* name : names) {
    const std::string first = trace_to_csv(run(load(name)));
    const std::string second = trace_to_csv(run(load(name)));
    identical += first == second;
  }
  return {identical == 5, fmt("%.0f of 5 fixtures produce bit-identical CSV traces",
                              static_cast<double>(identical))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"dynamics identities", dynamics_identities},
      {"graph oracle equivalence", graph_oracle},
      {"finite-time leader estimation", finite_time_estimation},
      {"maintask tracking under disturbance", maintask},
      {"subtasks of the redundant arms", subtasks},
      {"unreachable node cannot track", necessity},
      {"leaderless agreement", leaderless},
      {"switching topology", switching},
      {"determinism", determinism},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1..%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    if (only && static_cast<int>(k) + 1 != only) continue;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failures += !o.passed;
    std::printf("criterion %zu %s: %s | %s\n", k + 1, o.passed ? "PASS" : "FAIL",
                criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
