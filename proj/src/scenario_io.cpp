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
#include "dcea/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "dcea/errors.hpp"
#include "dcea/random.hpp"

namespace dcea {

namespace {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

// Initial-condition sampling ranges for arms without an explicit block.
struct InitialSampling {
  std::uint64_t seed = 0;
  Range q{-5, 5};
  Range qdot{-5, 5};
  Range zeta{-5, 5};
  Range theta_hat{0, 5};
};

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
    std::ostringstream out;
    out << source_;
    if (at.IsDefined()) {
      const YAML::Mark mark = at.Mark();
      if (mark.line >= 0) out << ":" << mark.line + 1 << ":" << mark.column + 1;
    }
    out << ": " << msg;
    throw ScenarioError(out.str());
  }

  void check_keys(const YAML::Node& map, std::initializer_list<const char*> allowed,
                  const std::string& context) const {
    if (!map.IsMap()) fail(map, context + " must be a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* a) { return key == a; });
      if (!known) fail(kv.first, "unknown key '" + key + "' in " + context);
    }
  }

  YAML::Node require(const YAML::Node& map, const char* key,
                     const std::string& context) const {
    const YAML::Node node = map[key];
    if (!node.IsDefined() || node.IsNull()) {
      fail(map, "missing required key '" + std::string(key) + "' in " + context);
    }
    return node;
  }

  double number(const YAML::Node& node) const {
    if (!node.IsScalar()) fail(node, "expected a number");
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, "expected a number, got '" + node.Scalar() + "'");
    }
  }

  double number_or(const YAML::Node& map, const char* key, double fallback) const {
    const YAML::Node node = map[key];
    return node.IsDefined() && !node.IsNull() ? number(node) : fallback;
  }

  std::uint64_t seed(const YAML::Node& node) const {
    if (!node.IsScalar()) fail(node, "expected an integer seed");
    try {
      return node.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      fail(node, "expected a nonnegative integer seed");
    }
  }

  Eigen::VectorXd vector(const YAML::Node& node, int expected = -1) const {
    if (!node.IsSequence()) fail(node, "expected a list of numbers");
    Eigen::VectorXd v(node.size());
    for (std::size_t k = 0; k < node.size(); ++k) v[k] = number(node[k]);
    if (expected >= 0 && v.size() != expected) {
      fail(node, "expected " + std::to_string(expected) + " entries, got " +
                     std::to_string(v.size()));
    }
    return v;
  }

  // Scalar (times identity), diagonal list, or list of rows.
  Eigen::MatrixXd matrix(const YAML::Node& node, int dim) const {
    if (node.IsScalar()) {
      return number(node) * Eigen::MatrixXd::Identity(dim, dim);
    }
    if (!node.IsSequence() || node.size() == 0) {
      fail(node, "expected a scalar, a diagonal list or a list of rows");
    }
    if (node[0].IsSequence()) {
      Eigen::MatrixXd m(node.size(), node[0].size());
      for (std::size_t r = 0; r < node.size(); ++r) {
        const Eigen::VectorXd row = vector(node[r]);
        if (row.size() != m.cols()) fail(node[r], "ragged matrix row");
        m.row(r) = row.transpose();
      }
      return m;
    }
    return vector(node).asDiagonal();
  }

  Range range(const YAML::Node& node) const {
    const Eigen::VectorXd v = vector(node, 2);
    if (!(v[0] <= v[1])) fail(node, "range must be [low, high]");
    return {v[0], v[1]};
  }

 private:
  std::string source_;
};

Topology read_topology(const Reader& rd, const YAML::Node& node, int nodes,
                       const std::string& context) {
  rd.check_keys(node, {"start", "edges", "pinning", "nodes", "schedule"}, context);
  std::vector<Edge> edges;
  const YAML::Node list = node["edges"];
  if (list.IsDefined() && !list.IsNull()) {
    if (!list.IsSequence()) rd.fail(list, "edges must be a list");
    for (const auto& e : list) {
      const Eigen::VectorXd v = rd.vector(e);
      if (v.size() != 2 && v.size() != 3) {
        rd.fail(e, "edge must be [from, to] or [from, to, weight]");
      }
      const int from = static_cast<int>(v[0]);
      const int to = static_cast<int>(v[1]);
      if (from != v[0] || to != v[1] || from < 1 || to < 1 || from > nodes ||
          to > nodes) {
        rd.fail(e, "edge endpoints must be node ids in 1.." + std::to_string(nodes));
      }
      if (from == to) rd.fail(e, "self loops are not allowed");
      const double w = v.size() == 3 ? v[2] : 1.0;
      if (!(w > 0)) rd.fail(e, "edge weight must be positive");
      edges.push_back({from - 1, to - 1, w});
    }
  }
  Eigen::VectorXd pinning = Eigen::VectorXd::Zero(nodes);
  if (node["pinning"].IsDefined()) pinning = rd.vector(node["pinning"], nodes);
  try {
    return Topology::from_edges(nodes, edges, pinning);
  } catch (const Error& e) {
    rd.fail(node, e.what());
  }
}

SubtaskSpec read_subtask(const Reader& rd, const YAML::Node& node, int dof) {
  SubtaskSpec spec;
  std::string type;
  if (node.IsScalar()) {
    type = node.as<std::string>();
  } else {
    rd.check_keys(node, {"type", "joint", "target", "gain"}, "subtask");
    type = rd.require(node, "type", "subtask").as<std::string>();
  }
  if (type == "none") return spec;
  if (type == "joint-target") {
    spec.kind = SubtaskSpec::Kind::kJointTarget;
    const double joint = rd.number(rd.require(node, "joint", "subtask"));
    if (joint != static_cast<int>(joint) || joint < 1 || joint > dof) {
      rd.fail(node["joint"], "subtask joint must be in 1.." + std::to_string(dof));
    }
    spec.joint = static_cast<int>(joint) - 1;
    spec.target = rd.number(rd.require(node, "target", "subtask"));
    spec.gain = rd.number_or(node, "gain", 1.0);
    return spec;
  }
  if (type == "manipulability") {
    spec.kind = SubtaskSpec::Kind::kManipulability;
    if (!node.IsScalar()) spec.gain = rd.number_or(node, "gain", 1.0);
    return spec;
  }
  rd.fail(node, "unknown subtask type '" + type +
                    "' (expected none, joint-target or manipulability)");
}

struct ArmDraft {
  ArmSetup setup;
  bool explicit_initial = false;
};

ArmDraft read_arm(const Reader& rd, const YAML::Node& node, double gravity,
                  std::size_t index) {
  const std::string ctx = "arm " + std::to_string(index + 1);
  rd.check_keys(node, {"name", "masses", "lengths", "com", "inertias", "gravity",
                       "gains", "subtask", "initial"},
                ctx);
  const std::string name = node["name"].IsDefined()
                               ? node["name"].as<std::string>()
                               : "arm" + std::to_string(index + 1);
  const std::string actx = "arm '" + name + "'";
  const Eigen::VectorXd masses = rd.vector(rd.require(node, "masses", actx));
  const int p = static_cast<int>(masses.size());
  if (p != 2 && p != 3) rd.fail(node["masses"], actx + ": arms must have 2 or 3 links");
  const Eigen::VectorXd lengths = rd.vector(rd.require(node, "lengths", actx), p);
  const Eigen::VectorXd com = rd.vector(rd.require(node, "com", actx), p);
  const Eigen::VectorXd inertias = rd.vector(rd.require(node, "inertias", actx), p);
  const double g = rd.number_or(node, "gravity", gravity);

  std::optional<ArmModel> model;
  try {
    model.emplace(masses, lengths, com, inertias, g);
  } catch (const Error& e) {
    rd.fail(node, actx + ": " + e.what());
  }

  const YAML::Node gn = rd.require(node, "gains", actx);
  rd.check_keys(gn, {"alpha", "Kx", "Ks", "Kr", "T"}, actx + " gains");
  ControlGains gains;
  gains.alpha = rd.number(rd.require(gn, "alpha", actx + " gains"));
  const Eigen::MatrixXd kx = rd.matrix(rd.require(gn, "Kx", actx + " gains"), 2);
  if (kx.rows() != 2 || kx.cols() != 2) {
    rd.fail(gn["Kx"], actx + ": Kx must be 2x2, got " + std::to_string(kx.rows()) +
                          "x" + std::to_string(kx.cols()));
  }
  gains.Kx = kx;
  gains.Ks = rd.matrix(rd.require(gn, "Ks", actx + " gains"), p);
  gains.Kr = rd.matrix(rd.require(gn, "Kr", actx + " gains"), p);
  const YAML::Node tn = rd.require(gn, "T", actx + " gains");
  const int np = ArmModel::parameter_count(p);
  gains.T = tn.IsScalar() ? Eigen::VectorXd::Constant(np, rd.number(tn))
                          : rd.vector(tn);
  try {
    gains.validate(p);
  } catch (const Error& e) {
    rd.fail(gn, actx + ": " + e.what());
  }

  SubtaskSpec subtask;
  if (node["subtask"].IsDefined()) subtask = read_subtask(rd, node["subtask"], p);
  if (subtask.kind != SubtaskSpec::Kind::kNone && p == kTaskDim) {
    rd.fail(node["subtask"], actx + ": subtasks need a redundant (3-link) arm");
  }

  ArmDraft draft{ArmSetup{name, *model, {}, {}, gains, subtask}, false};
  const YAML::Node init = node["initial"];
  if (init.IsDefined()) {
    rd.check_keys(init, {"q", "qdot", "zeta", "theta_hat"}, actx + " initial");
    draft.setup.initial.q = rd.vector(rd.require(init, "q", actx + " initial"), p);
    draft.setup.initial.qdot =
        rd.vector(rd.require(init, "qdot", actx + " initial"), p);
    draft.setup.initial_estimate.zeta =
        rd.vector(rd.require(init, "zeta", actx + " initial"), 6);
    draft.setup.initial_estimate.theta_hat =
        rd.vector(rd.require(init, "theta_hat", actx + " initial"), np);
    draft.explicit_initial = true;
  }
  return draft;
}

std::optional<double> optional_number(const Reader& rd, const YAML::Node& map,
                                      const char* key) {
  const YAML::Node node = map[key];
  if (!node.IsDefined() || node.IsNull()) return std::nullopt;
  return rd.number(node);
}

}  // namespace

ParsedScenario parse_scenario_text(const std::string& text,
                                   const std::string& source) {
  const Reader rd(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream out;
    out << source << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": "
        << e.msg;
    throw ScenarioError(out.str());
  }
  rd.check_keys(root, {"name", "timing", "estimator", "leader", "gravity",
                       "topology", "disturbance", "initial", "arms", "thresholds"},
                "scenario");
  ScenarioConfig cfg;
  if (root["name"].IsDefined()) cfg.name = root["name"].as<std::string>();

  const YAML::Node tn = rd.require(root, "timing", "scenario");
  rd.check_keys(tn, {"t0", "t_end", "control_period", "dt", "estimator_dt"}, "timing");
  cfg.timing.t0 = rd.number_or(tn, "t0", 0.0);
  cfg.timing.t_end = rd.number(rd.require(tn, "t_end", "timing"));
  cfg.timing.control_period = rd.number_or(tn, "control_period", 0.01);
  cfg.timing.dt = rd.number_or(tn, "dt", 0.001);
  cfg.timing.estimator_dt = optional_number(rd, tn, "estimator_dt");

  const YAML::Node en = rd.require(root, "estimator", "scenario");
  rd.check_keys(en, {"mode", "betas", "boundary_layer"}, "estimator");
  const std::string mode = en["mode"].IsDefined() ? en["mode"].as<std::string>() : "pinned";
  if (mode == "pinned") {
    cfg.mode = EstimatorMode::kPinned;
  } else if (mode == "leaderless") {
    cfg.mode = EstimatorMode::kLeaderless;
  } else {
    rd.fail(en["mode"], "estimator mode must be 'pinned' or 'leaderless'");
  }
  const Eigen::VectorXd betas = rd.vector(rd.require(en, "betas", "estimator"), 3);
  cfg.betas = {betas[0], betas[1], betas[2]};
  cfg.boundary_layer = rd.number_or(en, "boundary_layer", 0.0);

  const YAML::Node ln = root["leader"];
  if (ln.IsDefined() && !(ln.IsScalar() && ln.as<std::string>() == "none")) {
    rd.check_keys(ln, {"type", "center", "amplitude", "omega", "phase", "bounds"},
                  "leader");
    const std::string type = rd.require(ln, "type", "leader").as<std::string>();
    if (type != "ellipse") rd.fail(ln["type"], "unknown leader type '" + type + "'");
    EllipseLeader leader(rd.vector(rd.require(ln, "center", "leader"), 2),
                         rd.vector(rd.require(ln, "amplitude", "leader"), 2),
                         rd.number(rd.require(ln, "omega", "leader")),
                         rd.number_or(ln, "phase", 0.0));
    if (ln["bounds"].IsDefined()) {
      const Eigen::VectorXd b = rd.vector(ln["bounds"], 3);
      leader.set_bounds({b[0], b[1], b[2]});
    }
    cfg.leader = leader;
  }

  const double gravity = rd.number_or(root, "gravity", kDefaultGravity);

  const YAML::Node an = rd.require(root, "arms", "scenario");
  if (!an.IsSequence() || an.size() == 0) rd.fail(an, "arms must be a nonempty list");
  std::vector<ArmDraft> drafts;
  for (std::size_t i = 0; i < an.size(); ++i) {
    drafts.push_back(read_arm(rd, an[i], gravity, i));
  }
  const int n = static_cast<int>(drafts.size());

  const YAML::Node gn = rd.require(root, "topology", "scenario");
  rd.check_keys(gn, {"nodes", "edges", "pinning", "schedule"}, "topology");
  if (gn["nodes"].IsDefined() && rd.number(gn["nodes"]) != n) {
    rd.fail(gn["nodes"], "topology declares " + gn["nodes"].as<std::string>() +
                             " nodes but the scenario has " + std::to_string(n) +
                             " arms");
  }
  if (gn["schedule"].IsDefined()) {
    if (gn["edges"].IsDefined() || gn["pinning"].IsDefined()) {
      rd.fail(gn, "topology takes either a schedule or edges/pinning, not both");
    }
    const YAML::Node sn = gn["schedule"];
    if (!sn.IsSequence() || sn.size() == 0) rd.fail(sn, "schedule must be a nonempty list");
    std::vector<TopologySchedule::Segment> segs;
    for (std::size_t k = 0; k < sn.size(); ++k) {
      const std::string ctx = "schedule segment " + std::to_string(k + 1);
      const double start = rd.number(rd.require(sn[k], "start", ctx));
      segs.push_back({start, read_topology(rd, sn[k], n, ctx)});
    }
    if (segs.front().start != cfg.timing.t0) {
      rd.fail(sn[0], "first schedule segment must start at t0");
    }
    try {
      cfg.topology = TopologySchedule(std::move(segs));
    } catch (const Error& e) {
      rd.fail(sn, e.what());
    }
  } else {
    cfg.topology = TopologySchedule(read_topology(rd, gn, n, "topology"), cfg.timing.t0);
  }

  if (root["disturbance"].IsDefined()) {
    const YAML::Node dn = root["disturbance"];
    rd.check_keys(dn, {"bound", "hold", "seed"}, "disturbance");
    cfg.disturbance.bound = rd.number_or(dn, "bound", 0.0);
    cfg.disturbance.hold = rd.number_or(dn, "hold", 0.0);
    if (dn["seed"].IsDefined()) cfg.disturbance.seed = rd.seed(dn["seed"]);
  }

  InitialSampling sampling;
  bool have_sampling = false;
  if (root["initial"].IsDefined()) {
    const YAML::Node in = root["initial"];
    rd.check_keys(in, {"seed", "q", "qdot", "zeta", "theta_hat"}, "initial");
    have_sampling = true;
    if (in["seed"].IsDefined()) sampling.seed = rd.seed(in["seed"]);
    if (in["q"].IsDefined()) sampling.q = rd.range(in["q"]);
    if (in["qdot"].IsDefined()) sampling.qdot = rd.range(in["qdot"]);
    if (in["zeta"].IsDefined()) sampling.zeta = rd.range(in["zeta"]);
    if (in["theta_hat"].IsDefined()) sampling.theta_hat = rd.range(in["theta_hat"]);
  }
  UniformSource draw(sampling.seed);
  auto sample = [&](int size, Range r) {
    Eigen::VectorXd v(size);
    for (int k = 0; k < size; ++k) v[k] = draw.next(r.lo, r.hi);
    return v;
  };
  for (std::size_t i = 0; i < drafts.size(); ++i) {
    ArmDraft& d = drafts[i];
    if (d.explicit_initial) continue;
    if (!have_sampling) {
      rd.fail(an[i], "arm '" + d.setup.name +
                         "' has no initial block and the scenario has no "
                         "initial sampling section");
    }
    const int p = d.setup.model.dof();
    d.setup.initial.q = sample(p, sampling.q);
    d.setup.initial.qdot = sample(p, sampling.qdot);
    d.setup.initial_estimate.zeta = sample(6, sampling.zeta);
    d.setup.initial_estimate.theta_hat =
        sample(d.setup.model.parameter_count(), sampling.theta_hat);
  }
  for (ArmDraft& d : drafts) cfg.arms.push_back(std::move(d.setup));

  if (root["thresholds"].IsDefined()) {
    const YAML::Node hn = root["thresholds"];
    rd.check_keys(hn, {"settle_tolerance", "tail_start", "position_error",
                       "velocity_error", "subtask_error", "joint_target_error",
                       "pairwise_position_error"},
                  "thresholds");
    Thresholds& th = cfg.thresholds;
    th.settle_tolerance = rd.number_or(hn, "settle_tolerance", th.settle_tolerance);
    th.tail_start = optional_number(rd, hn, "tail_start");
    th.position_error = optional_number(rd, hn, "position_error");
    th.velocity_error = optional_number(rd, hn, "velocity_error");
    th.subtask_error = optional_number(rd, hn, "subtask_error");
    th.joint_target_error = optional_number(rd, hn, "joint_target_error");
    th.pairwise_position_error = optional_number(rd, hn, "pairwise_position_error");
  }

  try {
    cfg.validate();
  } catch (const ScenarioError& e) {
    rd.fail(root, e.what());
  }
  return {cfg, cfg.warnings()};
}

ParsedScenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError(path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

namespace {

// Shortest text that parses back to the same double.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void emit_vector(YAML::Emitter& out, const Eigen::VectorXd& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index k = 0; k < v.size(); ++k) out << num(v[k]);
  out << YAML::EndSeq;
}

void emit_matrix(YAML::Emitter& out, const Eigen::MatrixXd& m) {
  const bool diagonal =
      (m - Eigen::MatrixXd(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0;
  if (diagonal) {
    emit_vector(out, m.diagonal());
    return;
  }
  out << YAML::Flow << YAML::BeginSeq;
  for (Eigen::Index r = 0; r < m.rows(); ++r) emit_vector(out, m.row(r).transpose());
  out << YAML::EndSeq;
}

void emit_topology_body(YAML::Emitter& out, const Topology& g) {
  out << YAML::Key << "edges" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (const Edge& e : g.edges()) {
    out << YAML::Flow << YAML::BeginSeq << e.from + 1 << e.to + 1;
    if (e.weight != 1.0) out << num(e.weight);
    out << YAML::EndSeq;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "pinning" << YAML::Value;
  emit_vector(out, g.pinning());
}

}  // namespace

std::string serialize_scenario(const ScenarioConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << cfg.name;

  out << YAML::Key << "timing" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "t0" << YAML::Value << num(cfg.timing.t0);
  out << YAML::Key << "t_end" << YAML::Value << num(cfg.timing.t_end);
  out << YAML::Key << "control_period" << YAML::Value << num(cfg.timing.control_period);
  out << YAML::Key << "dt" << YAML::Value << num(cfg.timing.dt);
  if (cfg.timing.estimator_dt) {
    out << YAML::Key << "estimator_dt" << YAML::Value << num(*cfg.timing.estimator_dt);
  }
  out << YAML::EndMap;

  out << YAML::Key << "estimator" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << to_string(cfg.mode);
  out << YAML::Key << "betas" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << num(cfg.betas.position) << num(cfg.betas.velocity) << num(cfg.betas.acceleration)
      << YAML::EndSeq;
  out << YAML::Key << "boundary_layer" << YAML::Value << num(cfg.boundary_layer);
  out << YAML::EndMap;

  out << YAML::Key << "leader" << YAML::Value;
  if (cfg.leader) {
    const EllipseLeader& l = *cfg.leader;
    out << YAML::BeginMap;
    out << YAML::Key << "type" << YAML::Value << "ellipse";
    out << YAML::Key << "center" << YAML::Value;
    emit_vector(out, l.center());
    out << YAML::Key << "amplitude" << YAML::Value;
    emit_vector(out, l.amplitude());
    out << YAML::Key << "omega" << YAML::Value << num(l.omega());
    out << YAML::Key << "phase" << YAML::Value << num(l.phase());
    out << YAML::Key << "bounds" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << num(l.bounds().velocity) << num(l.bounds().acceleration) << num(l.bounds().jerk)
        << YAML::EndSeq;
    out << YAML::EndMap;
  } else {
    out << "none";
  }

  out << YAML::Key << "topology" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "nodes" << YAML::Value << cfg.topology.size();
  if (cfg.topology.switching()) {
    out << YAML::Key << "schedule" << YAML::Value << YAML::BeginSeq;
    for (const auto& seg : cfg.topology.segments()) {
      out << YAML::BeginMap << YAML::Key << "start" << YAML::Value << num(seg.start);
      emit_topology_body(out, seg.topology);
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  } else {
    emit_topology_body(out, cfg.topology.segments().front().topology);
  }
  out << YAML::EndMap;

  out << YAML::Key << "disturbance" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "bound" << YAML::Value << num(cfg.disturbance.bound);
  out << YAML::Key << "hold" << YAML::Value << num(cfg.disturbance.hold);
  out << YAML::Key << "seed" << YAML::Value << cfg.disturbance.seed;
  out << YAML::EndMap;

  out << YAML::Key << "arms" << YAML::Value << YAML::BeginSeq;
  for (const ArmSetup& arm : cfg.arms) {
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << arm.name;
    out << YAML::Key << "masses" << YAML::Value;
    emit_vector(out, arm.model.masses());
    out << YAML::Key << "lengths" << YAML::Value;
    emit_vector(out, arm.model.lengths());
    out << YAML::Key << "com" << YAML::Value;
    emit_vector(out, arm.model.com_offsets());
    out << YAML::Key << "inertias" << YAML::Value;
    emit_vector(out, arm.model.inertias());
    out << YAML::Key << "gravity" << YAML::Value << num(arm.model.gravity());
    out << YAML::Key << "gains" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "alpha" << YAML::Value << num(arm.gains.alpha);
    out << YAML::Key << "Kx" << YAML::Value;
    emit_matrix(out, arm.gains.Kx);
    out << YAML::Key << "Ks" << YAML::Value;
    emit_matrix(out, arm.gains.Ks);
    out << YAML::Key << "Kr" << YAML::Value;
    emit_matrix(out, arm.gains.Kr);
    out << YAML::Key << "T" << YAML::Value;
    emit_vector(out, arm.gains.T);
    out << YAML::EndMap;
    out << YAML::Key << "subtask" << YAML::Value;
    switch (arm.subtask.kind) {
      case SubtaskSpec::Kind::kNone:
        out << "none";
        break;
      case SubtaskSpec::Kind::kJointTarget:
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "type" << YAML::Value
            << "joint-target" << YAML::Key << "joint" << YAML::Value
            << arm.subtask.joint + 1 << YAML::Key << "target" << YAML::Value
            << num(arm.subtask.target) << YAML::Key << "gain" << YAML::Value
            << num(arm.subtask.gain) << YAML::EndMap;
        break;
      case SubtaskSpec::Kind::kManipulability:
        out << YAML::Flow << YAML::BeginMap << YAML::Key << "type" << YAML::Value
            << "manipulability" << YAML::Key << "gain" << YAML::Value
            << num(arm.subtask.gain) << YAML::EndMap;
        break;
    }
    out << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "q" << YAML::Value;
    emit_vector(out, arm.initial.q);
    out << YAML::Key << "qdot" << YAML::Value;
    emit_vector(out, arm.initial.qdot);
    out << YAML::Key << "zeta" << YAML::Value;
    emit_vector(out, arm.initial_estimate.zeta);
    out << YAML::Key << "theta_hat" << YAML::Value;
    emit_vector(out, arm.initial_estimate.theta_hat);
    out << YAML::EndMap;
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  const Thresholds& th = cfg.thresholds;
  out << YAML::Key << "thresholds" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "settle_tolerance" << YAML::Value << num(th.settle_tolerance);
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) out << YAML::Key << key << YAML::Value << num(*v);
  };
  opt("tail_start", th.tail_start);
  opt("position_error", th.position_error);
  opt("velocity_error", th.velocity_error);
  opt("subtask_error", th.subtask_error);
  opt("joint_target_error", th.joint_target_error);
  opt("pairwise_position_error", th.pairwise_position_error);
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
  if (a.arms.size() != b.arms.size()) return false;
  for (std::size_t i = 0; i < a.arms.size(); ++i) {
    const ArmSetup& x = a.arms[i];
    const ArmSetup& y = b.arms[i];
    if (x.name != y.name || !(x.model == y.model) || !(x.initial == y.initial) ||
        x.initial_estimate.zeta != y.initial_estimate.zeta ||
        !same_values(x.initial_estimate.theta_hat, y.initial_estimate.theta_hat) ||
        !(x.gains == y.gains) || !(x.subtask == y.subtask)) {
      return false;
    }
  }
  return a.name == b.name && a.topology == b.topology && a.leader == b.leader &&
         a.mode == b.mode && a.betas == b.betas &&
         a.boundary_layer == b.boundary_layer &&
         a.disturbance == b.disturbance && a.timing == b.timing &&
         a.thresholds == b.thresholds;
}

}  // namespace dcea
