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
// Command-line entry point: run, verify, plot and sweep.
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dcea/errors.hpp"
#include "dcea/figures.hpp"
#include "dcea/report.hpp"
#include "dcea/scenario_io.hpp"
#include "dcea/simulation.hpp"
#include "dcea/trace_io.hpp"
#include "dcea/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kSeedEnv = "DCEA_SEED";

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv(kSeedEnv);
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0') {
    throw dcea::ScenarioError(std::string(kSeedEnv) + " must be a nonnegative integer");
  }
  return v;
}

dcea::ScenarioConfig load(const std::string& path, std::optional<std::uint64_t> seed,
                          std::optional<double> smooth) {
  dcea::ParsedScenario parsed = dcea::parse_scenario(path);
  for (const std::string& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  if (!seed) seed = seed_from_env();
  if (seed) parsed.config.disturbance.seed = *seed;
  if (smooth) parsed.config.boundary_layer = *smooth;
  return parsed.config;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw dcea::TraceError(path.string() + ": write failed");
}

bool has_subtask(const dcea::ScenarioConfig& config) {
  return std::any_of(config.arms.begin(), config.arms.end(), [](const auto& a) {
    return a.subtask.kind != dcea::SubtaskSpec::Kind::kNone;
  });
}

dcea::FigureOptions figure_options(const dcea::ScenarioConfig& config) {
  dcea::FigureOptions opt;
  for (std::size_t i = 0; i < config.arms.size(); ++i) {
    const dcea::SubtaskSpec& s = config.arms[i].subtask;
    if (s.kind == dcea::SubtaskSpec::Kind::kJointTarget) {
      opt.joint_arm = static_cast<int>(i) + 1;
      opt.joint = s.joint + 1;
    } else if (s.kind == dcea::SubtaskSpec::Kind::kManipulability) {
      opt.manipulability_arm = static_cast<int>(i) + 1;
    }
  }
  return opt;
}

int cmd_run(const std::string& scenario, const std::string& out_dir,
            std::optional<std::uint64_t> seed, std::optional<double> smooth,
            bool twin, bool figures) {
  const dcea::ScenarioConfig config = load(scenario, seed, smooth);
  fs::create_directories(out_dir);
  const fs::path out(out_dir);
  // Resolved configuration with the sampled initial values written out.
  write_text(out / "resolved.scenario", dcea::serialize_scenario(config));

  std::optional<dcea::SimTrace> twin_trace;
  dcea::SimTrace trace;
  if (twin && has_subtask(config)) {
    auto pair = dcea::run_pair_subtask(config);
    trace = std::move(pair.first);
    twin_trace = std::move(pair.second);
  } else {
    trace = dcea::run(config);
  }
  dcea::RunReport report = dcea::compute_report(trace, config);
  dcea::write_trace(trace, (out / "trace.csv").string());
  if (twin_trace) {
    dcea::ScenarioConfig twin_config = config;
    for (auto& arm : twin_config.arms) arm.subtask = dcea::SubtaskSpec{};
    dcea::add_twin_comparison(report, dcea::compute_report(*twin_trace, twin_config));
    dcea::write_trace(*twin_trace, (out / "trace_twin.csv").string());
  }
  write_text(out / "report.txt", dcea::format_report(report));
  write_text(out / "report.json", dcea::report_to_json(report));
  if (figures && trace.rows() > 0) {
    dcea::render_figures(trace, (out / "figures").string(),
                         twin_trace && twin_trace->rows() > 0 ? &*twin_trace : nullptr,
                         figure_options(config));
  }
  std::cout << dcea::format_report(report);
  return report.passed() ? 0 : 1;
}

int cmd_verify(std::uint64_t seed, int states) {
  const auto results = dcea::run_invariant_suite(seed, states);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%-4s %-50s %7ld/%-7ld worst %.3g (tol %.3g)\n",
                r.passed() ? "ok" : "FAIL", r.name.c_str(), r.trials - r.failures,
                r.trials, r.worst, r.tolerance);
    failed += r.passed() ? 0 : 1;
  }
  std::printf("%zu properties, %d failed\n", results.size(), failed);
  return failed == 0 ? 0 : 1;
}

int cmd_plot(const std::string& trace_path, const std::string& out_dir,
             const std::string& twin_path, const dcea::FigureOptions& opt) {
  const dcea::SimTrace trace = dcea::read_trace(trace_path);
  std::optional<dcea::SimTrace> twin;
  if (!twin_path.empty()) twin = dcea::read_trace(twin_path);
  for (const std::string& p :
       dcea::render_figures(trace, out_dir, twin ? &*twin : nullptr, opt)) {
    std::cout << p << "\n";
  }
  return 0;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const std::uint64_t v = std::stoull(text);
      return {v, v};
    }
    const std::uint64_t a = std::stoull(text.substr(0, dots));
    const std::uint64_t b = std::stoull(text.substr(dots + 2));
    if (b < a) throw std::invalid_argument("empty range");
    return {a, b};
  } catch (const std::logic_error&) {
    throw dcea::ScenarioError("--seeds expects a..b, got '" + text + "'");
  }
}

int cmd_sweep(const std::string& scenario, const std::string& seeds, unsigned jobs,
              std::optional<double> smooth) {
  const auto [first, last] = parse_range(seeds);
  const dcea::ScenarioConfig base = load(scenario, std::nullopt, smooth);
  const std::size_t count = static_cast<std::size_t>(last - first + 1);
  std::vector<dcea::RunReport> reports(count);
  std::vector<std::string> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      dcea::ScenarioConfig config = base;
      config.disturbance.seed = first + k;
      try {
        reports[k] = dcea::compute_report(dcea::run(config), config);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
  };
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < std::min<std::size_t>(jobs, count); ++j) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  std::size_t passed = 0;
  std::vector<std::string> names;
  std::vector<std::size_t> check_pass;
  for (std::size_t k = 0; k < count; ++k) {
    const bool ok = errors[k].empty() && reports[k].passed();
    passed += ok ? 1 : 0;
    std::printf("seed %llu: %s", static_cast<unsigned long long>(first + k),
                ok ? "PASS" : "FAIL");
    if (!errors[k].empty()) std::printf(" (%s)", errors[k].c_str());
    for (const dcea::Check& c : reports[k].checks) {
      if (!c.passed) std::printf(" %s=%.4g", c.name.c_str(), c.value);
      auto it = std::find(names.begin(), names.end(), c.name);
      if (it == names.end()) {
        names.push_back(c.name);
        check_pass.push_back(0);
        it = names.end() - 1;
      }
      check_pass[it - names.begin()] += c.passed ? 1 : 0;
    }
    std::printf("\n");
  }
  for (std::size_t c = 0; c < names.size(); ++c) {
    std::printf("  %-28s %zu/%zu\n", names[c].c_str(), check_pass[c], count);
  }
  std::printf("pass rate %zu/%zu\n", passed, count);
  return passed == count ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed controller-estimator simulator for networked planar arms"};
  app.require_subcommand(1);

  std::string scenario, out_dir, trace_path, twin_path, seeds;
  std::optional<std::uint64_t> seed;
  std::optional<double> smooth;
  bool twin = false, no_figures = false;
  std::uint64_t verify_seed = 1;
  int verify_states = 1000;
  unsigned jobs = 0;
  dcea::FigureOptions fig;

  auto* run = app.add_subcommand("run", "simulate a scenario, write trace, report and figures");
  run->add_option("scenario", scenario, "scenario file")->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--seed", seed, "disturbance seed (overrides DCEA_SEED and the file)");
  run->add_option("--smooth-sgn", smooth, "replace sgn by tanh(z / eps); eps defaults to 0.01")
      ->expected(0, 1)
      ->default_str("0.01");
  run->add_flag("--twin", twin, "also run the phi = 0 twin and compare subtasks");
  run->add_flag("--no-figures", no_figures, "skip SVG output");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--seed", verify_seed, "sampling seed");
  verify->add_option("--states", verify_states, "random states per arm");

  auto* plot = app.add_subcommand("plot", "render figures from a trace CSV");
  plot->add_option("trace", trace_path, "trace CSV")->required();
  plot->add_option("--out", out_dir, "output directory")->required();
  plot->add_option("--twin", twin_path, "phi = 0 twin trace for the subtask figures");
  plot->add_option("--joint-arm", fig.joint_arm, "arm shown in the joint figure");
  plot->add_option("--joint", fig.joint, "joint shown in the joint figure");
  plot->add_option("--manipulability-arm", fig.manipulability_arm,
                   "arm shown in the manipulability figure");

  auto* sweep = app.add_subcommand("sweep", "run a scenario over a range of disturbance seeds");
  sweep->add_option("scenario", scenario, "scenario file")->required();
  sweep->add_option("--seeds", seeds, "inclusive range a..b")->required();
  sweep->add_option("--jobs", jobs, "worker threads (0: hardware concurrency)");
  sweep->add_option("--smooth-sgn", smooth, "replace sgn by tanh(z / eps); eps defaults to 0.01")
      ->expected(0, 1)
      ->default_str("0.01");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(scenario, out_dir, seed, smooth, twin, !no_figures);
    if (*verify) return cmd_verify(verify_seed, verify_states);
    if (*plot) return cmd_plot(trace_path, out_dir, twin_path, fig);
    if (*sweep) return cmd_sweep(scenario, seeds, jobs, smooth);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
