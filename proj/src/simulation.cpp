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
#include "dcea/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcea/errors.hpp"
#include "dcea/random.hpp"
#include "dcea/signum.hpp"

namespace dcea {

namespace {

constexpr const char* kAxis[2] = {"x", "y"};

std::string arm_tag(std::size_t i) { return std::to_string(i + 1); }

std::string format_vector(const Eigen::VectorXd& v) {
  std::ostringstream out;
  out.precision(6);
  out << "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) out << (k ? ", " : "") << v[k];
  out << "]";
  return out.str();
}

int ratio(double period, double step) {
  return static_cast<int>(std::lround(period / step));
}

// Per-arm mutable state of a run.
struct ArmRuntime {
  const ArmSetup* setup = nullptr;
  SubtaskFunction subtask;
  JointState state;
  EstimatorState estimate;
  ControlOutput control;
  Eigen::VectorXd disturbance;
};

struct RowWriter {
  Eigen::MatrixXd& samples;
  int row;
  int col = 0;
  void put(double v) { samples(row, col++) = v; }
  template <typename Derived>
  void put(const Eigen::MatrixBase<Derived>& v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) put(v[k]);
  }
};

// f~ = H^ qddot~_r + C^ qdot~_r - J^T Kx J s~ - Ks s~ - Kr (sgn s^ - sgn s),
// the residual that vanishes once the estimate matches the leader.
double residual_norm(const ArmRuntime& arm, const ReferenceVariables& ref,
                     double boundary_layer) {
  const ArmModel& model = arm.setup->model;
  const ControlGains& g = arm.setup->gains;
  const JointState& st = arm.state;
  const Eigen::VectorXd dqd = arm.control.aux.qdot_r - ref.qdot_r;
  const Eigen::VectorXd dqdd = arm.control.aux.qddot_r - ref.qddot_r;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(model.dof());
  const Eigen::VectorXd& th = arm.estimate.theta_hat;
  const Eigen::VectorXd inertial =
      regressor(model, st.q, st.qdot, dqd, dqdd) * th -
      regressor(model, st.q, st.qdot, zero, zero) * th;
  const Eigen::VectorXd s_tilde = -dqd;
  const Eigen::Matrix2Xd jac = jacobian(model, st.q);
  const Eigen::VectorXd f =
      inertial - jac.transpose() * g.Kx * jac * s_tilde - g.Ks * s_tilde -
      g.Kr * (signum(arm.control.s_hat, boundary_layer) -
              signum(ref.s, boundary_layer));
  return f.norm();
}

}  // namespace

bool SimTrace::has_column(std::string_view name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

int SimTrace::column(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw TraceError("trace has no column '" + std::string(name) + "'");
  }
  return static_cast<int>(std::distance(columns.begin(), it));
}

std::vector<std::string> trace_columns(const ScenarioConfig& config) {
  std::vector<std::string> cols = {"t", "segment"};
  const bool leader = config.leader.has_value();
  if (leader) {
    for (const char* sig : {"x0", "v0", "a0"}) {
      for (const char* ax : kAxis) cols.push_back(std::string(sig) + "_" + ax);
    }
  }
  for (std::size_t i = 0; i < config.arms.size(); ++i) {
    const std::string n = arm_tag(i);
    const int p = config.arms[i].model.dof();
    auto joints = [&](const std::string& stem) {
      for (int k = 0; k < p; ++k) {
        cols.push_back(stem + n + "_" + std::to_string(k + 1));
      }
    };
    auto planar = [&](const std::string& stem) {
      for (const char* ax : kAxis) cols.push_back(stem + n + "_" + ax);
    };
    joints("q");
    joints("qd");
    planar("x");
    planar("xd");
    planar("xh");
    planar("vh");
    planar("ah");
    for (int k = 0; k < config.arms[i].model.parameter_count(); ++k) {
      cols.push_back("th" + n + "_" + std::to_string(k + 1));
    }
    joints("u");
    joints("sh");
    if (leader) {
      planar("e");
      cols.push_back("e_norm" + n);
      cols.push_back("ev_norm" + n);
      cols.push_back("sigma_inf" + n);
      cols.push_back("ftilde_norm" + n);
    }
    if (config.arms[i].model.redundant()) {
      joints("es");
      cols.push_back("es_norm" + n);
      cols.push_back("manip" + n);
    }
  }
  return cols;
}

SimTrace run(const ScenarioConfig& config) {
  config.validate();
  const Timing& tm = config.timing;
  const LeaderTrajectory* leader = config.leader_ptr();
  const int substeps = ratio(tm.control_period, tm.dt);
  const int ticks = ratio(tm.t_end - tm.t0, tm.control_period);
  const int hold_steps = ratio(config.disturbance_hold(), tm.dt);
  const int estimator_steps = tm.estimator_dt ? ratio(tm.dt, *tm.estimator_dt) : 0;
  const double estimator_h = tm.estimator_dt ? *tm.estimator_dt : 0.0;
  // Lookups nudge forward so a tick landing on a segment start selects it.
  const double nudge = 1e-9 * tm.control_period;

  SimTrace trace;
  trace.columns = trace_columns(config);
  trace.samples.resize(ticks + 1, static_cast<Eigen::Index>(trace.columns.size()));

  std::vector<ArmRuntime> arms(config.arms.size());
  std::vector<Vector6d> zetas(config.arms.size());
  for (std::size_t i = 0; i < arms.size(); ++i) {
    arms[i].setup = &config.arms[i];
    arms[i].subtask = SubtaskFunction::build(config.arms[i].subtask,
                                             config.arms[i].model);
    arms[i].state = config.arms[i].initial;
    arms[i].estimate = config.arms[i].initial_estimate;
    arms[i].disturbance = Eigen::VectorXd::Zero(config.arms[i].model.dof());
    zetas[i] = arms[i].estimate.zeta;
  }
  std::vector<Vector6d> zeta_rates(arms.size(), Vector6d::Zero());
  UniformSource noise(config.disturbance.seed);

  auto estimator_rates = [&](double t) {
    const Topology& g = config.topology.at(t + nudge);
    for (std::size_t i = 0; i < arms.size(); ++i) {
      zeta_rates[i] = estimator_rate(static_cast<int>(i), zetas, g, leader, t,
                                     config.mode, config.betas,
                                     config.boundary_layer);
    }
  };

  auto abort = [&](int recorded, std::string reason) {
    trace.samples.conservativeResize(recorded, Eigen::NoChange);
    trace.abort_reason = std::move(reason);
  };

  for (int k = 0; k <= ticks; ++k) {
    const double t = tm.t0 + k * tm.control_period;
    const int segment = config.topology.segment_index(t + nudge);

    // Controller evaluation at the tick.
    for (std::size_t i = 0; i < arms.size(); ++i) {
      ArmRuntime& arm = arms[i];
      try {
        arm.control = evaluate_controller(arm.setup->model, arm.state,
                                          arm.estimate, arm.setup->gains,
                                          arm.subtask, t, config.boundary_layer);
      } catch (const SingularJacobian& e) {
        std::ostringstream msg;
        msg << "SingularJacobian: arm '" << arm.setup->name << "' at t=" << t
            << " q=" << format_vector(arm.state.q)
            << " (smallest singular value " << e.smallest_singular_value()
            << ")";
        abort(k, msg.str());
        return trace;
      }
      if (!arm.control.u.allFinite() || !arm.control.theta_hat_rate.allFinite()) {
        abort(k, "NonfiniteState: arm '" + arm.setup->name +
                     "' produced a non-finite control at t=" +
                     std::to_string(t));
        return trace;
      }
    }
    estimator_rates(t);

    // Record the sample.
    RowWriter row{trace.samples, k};
    row.put(t);
    row.put(static_cast<double>(segment));
    Vector6d reference = Vector6d::Zero();
    if (leader) {
      reference = leader->stack(t);
      row.put(reference);
    }
    for (ArmRuntime& arm : arms) {
      const ArmModel& model = arm.setup->model;
      const JointState& st = arm.state;
      const Eigen::Vector2d x = forward_kinematics(model, st.q);
      const Eigen::Matrix2Xd jac = jacobian(model, st.q);
      const Eigen::Vector2d xdot = jac * st.qdot;
      row.put(st.q);
      row.put(st.qdot);
      row.put(x);
      row.put(xdot);
      row.put(arm.estimate.zeta);
      row.put(arm.estimate.theta_hat);
      row.put(arm.control.u);
      row.put(arm.control.s_hat);
      if (leader) {
        const Eigen::Vector2d e = x - reference.segment<2>(0);
        row.put(e);
        row.put(e.norm());
        row.put((xdot - reference.segment<2>(2)).norm());
        row.put((arm.estimate.zeta - reference).cwiseAbs().maxCoeff());
        const ReferenceVariables ref = reference_variables(
            model, st, *leader, arm.setup->gains.alpha, arm.subtask, t);
        row.put(residual_norm(arm, ref, config.boundary_layer));
      }
      if (model.redundant()) {
        const Eigen::VectorXd es = subtask_error(model, st, arm.subtask, t);
        row.put(es);
        row.put(es.norm());
        row.put(manipulability(model, st.q));
      }
    }
    if (k == ticks) break;

    // Plant and estimator integration over the control period.
    for (int sub = 0; sub < substeps; ++sub) {
      const long step = static_cast<long>(k) * substeps + sub;
      const double ts = t + sub * tm.dt;
      if (step % hold_steps == 0 && config.disturbance.bound > 0) {
        const double d = config.disturbance.bound;
        for (ArmRuntime& arm : arms) {
          for (Eigen::Index j = 0; j < arm.disturbance.size(); ++j) {
            arm.disturbance[j] = noise.next(-d, d);
          }
        }
      }
      for (ArmRuntime& arm : arms) {
        const ArmModel& model = arm.setup->model;
        JointState& st = arm.state;
        const Eigen::MatrixXd h = inertia_matrix(model, st.q);
        const Eigen::VectorXd rhs = arm.control.u -
                                    coriolis_matrix(model, st.q, st.qdot) * st.qdot -
                                    gravity_vector(model, st.q) - arm.disturbance;
        Eigen::LLT<Eigen::MatrixXd> llt(h);
        if (llt.info() != Eigen::Success) {
          throw InvalidModel("inertia matrix of arm '" + arm.setup->name +
                             "' is not positive definite");
        }
        st.qdot += tm.dt * llt.solve(rhs);
        st.q += tm.dt * st.qdot;
        arm.estimate.theta_hat += tm.dt * arm.control.theta_hat_rate;
      }
      if (estimator_steps > 0) {
        for (int e = 0; e < estimator_steps; ++e) {
          estimator_rates(ts + e * estimator_h);
          for (std::size_t i = 0; i < arms.size(); ++i) {
            zetas[i] += estimator_h * zeta_rates[i];
          }
        }
      } else {
        for (std::size_t i = 0; i < arms.size(); ++i) {
          zetas[i] += tm.dt * zeta_rates[i];
        }
      }
      for (std::size_t i = 0; i < arms.size(); ++i) {
        arms[i].estimate.zeta = zetas[i];
      }
    }
    for (const ArmRuntime& arm : arms) {
      if (!arm.state.q.allFinite() || !arm.state.qdot.allFinite() ||
          !arm.estimate.zeta.allFinite() ||
          !arm.estimate.theta_hat.allFinite()) {
        std::ostringstream msg;
        msg << "NonfiniteState: arm '" << arm.setup->name << "' at t="
            << t + tm.control_period;
        abort(k + 1, msg.str());
        return trace;
      }
    }
  }
  return trace;
}

std::pair<SimTrace, SimTrace> run_pair_subtask(const ScenarioConfig& config) {
  ScenarioConfig twin = config;
  for (ArmSetup& arm : twin.arms) arm.subtask = SubtaskSpec{};
  return {run(config), run(twin)};
}

}  // namespace dcea
