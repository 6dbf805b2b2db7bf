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
#include "dcea/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "dcea/arm_model.hpp"
#include "dcea/estimator.hpp"
#include "dcea/graph.hpp"
#include "dcea/random.hpp"
#include "dcea/reference_arms.hpp"

namespace dcea {

namespace {

class Tally {
 public:
  Tally(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }
  void add(double residual) {
    ++result_.trials;
    if (!(residual < result_.tolerance)) ++result_.failures;
    if (std::isnan(residual)) {
      result_.worst = residual;
    } else if (!std::isnan(result_.worst)) {
      result_.worst = std::max(result_.worst, residual);
    }
  }
  // Boolean property: residual 0 on success, 1 on failure.
  void expect(bool ok) { add(ok ? 0.0 : 1.0); }
  PropertyResult result() const { return result_; }

 private:
  PropertyResult result_;
};

Eigen::VectorXd random_vector(UniformSource& rng, int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) v[k] = rng.next(lo, hi);
  return v;
}

// Bitmask transitive closure: reach[i] has bit j set iff j is reachable
// from i along sender-to-receiver edges.
std::vector<unsigned> closure(const Eigen::MatrixXd& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<unsigned> reach(n, 0);
  for (int i = 0; i < n; ++i) {
    reach[i] = 1u << i;
    for (int j = 0; j < n; ++j) {
      if (adjacency(j, i) > 0) reach[i] |= 1u << j;  // j reads i
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (reach[i] >> k & 1u) reach[i] |= reach[k];
    }
  }
  return reach;
}

}  // namespace

std::vector<PropertyResult> run_invariant_suite(std::uint64_t seed,
                                                int states_per_arm) {
  UniformSource rng(seed);
  Tally pd("inertia positive definite", 0.5);  // counts failures of z'Hz > 0
  Tally skew("skew symmetry of Hdot - 2C", 1e-9);
  Tally regress("regressor identity", 1e-9);
  Tally projector("J (I - J# J) = 0 and J J# = I", 1e-10);
  Tally penrose("Moore-Penrose conditions", 1e-10);
  Tally jac_fd("Jacobian matches finite differences", 1e-6);

  for (const ArmModel& arm : reference_arms()) {
    const int p = arm.dof();
    for (int s = 0; s < states_per_arm; ++s) {
      const Eigen::VectorXd q = random_vector(rng, p, -M_PI, M_PI);
      const Eigen::VectorXd qd = random_vector(rng, p, -5, 5);
      const Eigen::VectorXd x = random_vector(rng, p, -5, 5);
      const Eigen::VectorXd y = random_vector(rng, p, -5, 5);
      const Eigen::VectorXd z = random_vector(rng, p, -1, 1);
      const Eigen::MatrixXd h = inertia_matrix(arm, q);
      pd.expect(z.dot(h * z) > 0);
      const Eigen::MatrixXd n = inertia_matrix_dot(arm, q, qd) -
                                2.0 * coriolis_matrix(arm, q, qd);
      skew.add(std::abs(z.dot(n * z)));
      const Eigen::VectorXd lhs = regressor(arm, q, qd, y, x) * arm.parameters();
      const Eigen::VectorXd rhs =
          h * x + coriolis_matrix(arm, q, qd) * y + gravity_vector(arm, q);
      regress.add((lhs - rhs).norm());

      const Eigen::Matrix2Xd j = jacobian(arm, q);
      const double h_fd = 1e-6;
      Eigen::Matrix2Xd fd(2, p);
      for (int k = 0; k < p; ++k) {
        Eigen::VectorXd qp = q, qm = q;
        qp[k] += h_fd;
        qm[k] -= h_fd;
        fd.col(k) = (forward_kinematics(arm, qp) - forward_kinematics(arm, qm)) / (2 * h_fd);
      }
      jac_fd.add((fd - j).cwiseAbs().maxCoeff());

      if (smallest_singular_value(j) < 1e-3) continue;  // skip near-singular draws
      const Eigen::MatrixX2d js = j_sharp(arm, q);
      const Eigen::MatrixXd proj = null_projector(arm, q);
      projector.add(std::max((j * proj).cwiseAbs().maxCoeff(),
                         (j * js - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff()));
      const Eigen::MatrixXd jjs = j * js;
      const Eigen::MatrixXd jsj = js * j;
      penrose.add(std::max({(j * js * j - j).cwiseAbs().maxCoeff(),
                            (js * j * js - js).cwiseAbs().maxCoeff(),
                            (jjs - jjs.transpose()).cwiseAbs().maxCoeff(),
                            (jsj - jsj.transpose()).cwiseAbs().maxCoeff()}));
    }
  }

  // Graph oracles over every binary digraph and pinning on up to 4 nodes.
  Tally reach("leader_reachable matches transitive closure", 0.5);
  Tally tree("spanning_tree_exists matches transitive closure", 0.5);
  Tally lap("Laplacian rows sum to zero", 1e-12);
  for (int n = 1; n <= 4; ++n) {
    const int off = n * (n - 1);
    for (unsigned mask = 0; mask < (1u << off); ++mask) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      int bit = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i != j) a(i, j) = (mask >> bit++) & 1u;
        }
      }
      const std::vector<unsigned> r = closure(a);
      const unsigned all = (1u << n) - 1;
      const bool has_root =
          std::any_of(r.begin(), r.end(), [&](unsigned m) { return m == all; });
      for (unsigned pin = 0; pin < (1u << n); ++pin) {
        Eigen::VectorXd b(n);
        unsigned covered = 0;
        for (int i = 0; i < n; ++i) {
          b[i] = (pin >> i) & 1u;
          if (b[i] > 0) covered |= r[i];
        }
        const Topology g(a, b);
        reach.expect(leader_reachable(g) == (covered == all));
        if (pin == 0) {
          tree.expect(spanning_tree_exists(g) == has_root);
          lap.add(laplacian(g).rowwise().sum().cwiseAbs().maxCoeff());
        }
      }
    }
  }

  // Removing edge j -> i changes only node i's estimator rate.
  Tally local("estimator locality", 0.5);
  const EllipseLeader leader(Eigen::Vector2d(1.2, 1.3), Eigen::Vector2d(0.5, 0.3), M_PI);
  const Betas betas{4, 7, 21};
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i != j && rng.next(0, 1) < 0.5) a(i, j) = rng.next(0.5, 2);
      }
    }
    const Eigen::VectorXd b = (random_vector(rng, n, 0, 1).array() < 0.5).cast<double>();
    std::vector<Vector6d> zetas(n);
    for (Vector6d& zeta : zetas) zeta = random_vector(rng, 6, -5, 5);
    const double t = rng.next(0, 10);
    const int i = static_cast<int>(rng.next(0, n));
    int j = static_cast<int>(rng.next(0, n - 1));
    if (j >= i) ++j;
    Eigen::MatrixXd cut = a;
    cut(i, j) = 0;
    const Topology g(a, b), gc(cut, b);
    bool ok = true;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      ok = ok && estimator_rate(k, zetas, g, &leader, t, EstimatorMode::kPinned, betas) ==
                     estimator_rate(k, zetas, gc, &leader, t, EstimatorMode::kPinned, betas);
    }
    local.expect(ok);
  }

  return {pd.result(),    skew.result(),  regress.result(), projector.result(),
          penrose.result(), jac_fd.result(), reach.result(),  tree.result(),
          lap.result(),   local.result()};
}

}  // namespace dcea
