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
//
// Dynamics and kinematics of planar revolute chains with two or three links.
//
// Link k has mass m_k, length l_k, centre of mass at distance r_k from its
// proximal joint and rotational inertia I_k about the centre of mass. Gravity
// acts along -Y of the task plane. Joint angles are relative; the absolute
// angle of link k is theta_k = q_1 + ... + q_k.
//
// The inertial parameter vector used by the regressor has 2p entries, two per
// link, interleaved as (pi_1a, pi_1b, pi_2a, pi_2b, ...):
//
//   pi_ka = I_k + m_k r_k^2 + M_k l_k^2     (inertia about joint k)
//   pi_kb = m_k r_k + M_k l_k               (first moment about joint k)
//
// where M_k is the total mass of the links distal to link k. With these the
// kinetic energy is 1/2 sum_k pi_ka w_k^2 + sum_{a<k} l_a pi_kb cos(theta_k -
// theta_a) w_a w_k (w_k the absolute angular rate) and the potential energy is
// g sum_k pi_kb sin(theta_k). This basis is minimal for the planar chain.
//
// inertia_matrix, coriolis_matrix and gravity_vector are computed from the
// centre-of-mass Jacobians and the physical fields directly, so they form an
// independent route against which the regressor is checked.
#ifndef DCEA_ARM_MODEL_HPP
#define DCEA_ARM_MODEL_HPP

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dcea/eigen_types.hpp"
#include "dcea/errors.hpp"

namespace dcea {

inline constexpr int kTaskDim = 2;
inline constexpr double kDefaultGravity = 9.81;
inline constexpr double kDefaultSingularityThreshold = 1e-6;

template <typename Scalar>
class PlanarArm {
 public:
  using Vector = VectorX<Scalar>;

  PlanarArm(Vector masses, Vector lengths, Vector com_offsets, Vector inertias,
            Scalar gravity = Scalar(kDefaultGravity))
      : masses_(std::move(masses)),
        lengths_(std::move(lengths)),
        com_offsets_(std::move(com_offsets)),
        inertias_(std::move(inertias)),
        gravity_(gravity) {
    const auto p = masses_.size();
    if (p != 2 && p != 3) {
      throw InvalidModel("planar arm must have 2 or 3 links, got " +
                         std::to_string(p));
    }
    if (lengths_.size() != p || com_offsets_.size() != p ||
        inertias_.size() != p) {
      throw InvalidModel("link parameter vectors differ in length");
    }
    for (Eigen::Index k = 0; k < p; ++k) {
      if (!(masses_[k] > 0) || !(lengths_[k] > 0)) {
        throw InvalidModel("link " + std::to_string(k + 1) +
                           ": mass and length must be positive");
      }
      if (!(com_offsets_[k] > 0) || com_offsets_[k] > lengths_[k]) {
        throw InvalidModel("link " + std::to_string(k + 1) +
                           ": centre of mass must lie in (0, length]");
      }
      if (!(inertias_[k] >= 0)) {
        throw InvalidModel("link " + std::to_string(k + 1) +
                           ": inertia must be nonnegative");
      }
    }
    if (!std::isfinite(static_cast<double>(gravity_))) {
      throw InvalidModel("gravity must be finite");
    }
  }

  int dof() const { return static_cast<int>(masses_.size()); }
  bool redundant() const { return dof() > kTaskDim; }
  static int parameter_count(int dof) { return 2 * dof; }
  int parameter_count() const { return parameter_count(dof()); }

  const Vector& masses() const { return masses_; }
  const Vector& lengths() const { return lengths_; }
  const Vector& com_offsets() const { return com_offsets_; }
  const Vector& inertias() const { return inertias_; }
  Scalar gravity() const { return gravity_; }

  // True inertial parameters in the basis documented at the top of the file.
  Vector parameters() const {
    const int p = dof();
    Vector theta(parameter_count());
    for (int k = 0; k < p; ++k) {
      Scalar distal = 0;
      for (int i = k + 1; i < p; ++i) distal += masses_[i];
      const Scalar r = com_offsets_[k];
      const Scalar l = lengths_[k];
      theta[2 * k] = inertias_[k] + masses_[k] * r * r + distal * l * l;
      theta[2 * k + 1] = masses_[k] * r + distal * l;
    }
    return theta;
  }

  friend bool operator==(const PlanarArm& a, const PlanarArm& b) {
    return same_values(a.masses_, b.masses_) &&
           same_values(a.lengths_, b.lengths_) &&
           same_values(a.com_offsets_, b.com_offsets_) &&
           same_values(a.inertias_, b.inertias_) && a.gravity_ == b.gravity_;
  }

 private:
  Vector masses_;
  Vector lengths_;
  Vector com_offsets_;
  Vector inertias_;
  Scalar gravity_;
};

using ArmModel = PlanarArm<double>;

struct JointState {
  Eigen::VectorXd q;
  Eigen::VectorXd qdot;
  friend bool operator==(const JointState& a, const JointState& b) {
    return same_values(a.q, b.q) && same_values(a.qdot, b.qdot);
  }
};

namespace detail {

template <typename Scalar, typename Derived>
void check_size(const PlanarArm<Scalar>& arm,
                const Eigen::MatrixBase<Derived>& v, const char* what) {
  if (v.size() != arm.dof()) {
    throw DimensionMismatch(std::string(what) + " has length " +
                            std::to_string(v.size()) + ", arm has " +
                            std::to_string(arm.dof()) + " joints");
  }
}

template <typename Scalar, typename Derived>
VectorX<Scalar> absolute_angles(const Eigen::MatrixBase<Derived>& q) {
  VectorX<Scalar> theta(q.size());
  Scalar acc = 0;
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    acc += q[k];
    theta[k] = acc;
  }
  return theta;
}

template <typename Scalar>
Vector2<Scalar> unit(Scalar angle) {
  using std::cos;
  using std::sin;
  return Vector2<Scalar>(cos(angle), sin(angle));
}

template <typename Scalar>
Vector2<Scalar> unit_perp(Scalar angle) {
  using std::cos;
  using std::sin;
  return Vector2<Scalar>(-sin(angle), cos(angle));
}

// Jacobian of the centre of mass of `link` (0-based) with respect to q.
template <typename Scalar>
Matrix2X<Scalar> com_jacobian(const PlanarArm<Scalar>& arm,
                              const VectorX<Scalar>& theta, int link) {
  const int p = arm.dof();
  Matrix2X<Scalar> jac = Matrix2X<Scalar>::Zero(2, p);
  for (int j = 0; j <= link; ++j) {
    for (int a = j; a < link; ++a) {
      jac.col(j) += arm.lengths()[a] * unit_perp(theta[a]);
    }
    jac.col(j) += arm.com_offsets()[link] * unit_perp(theta[link]);
  }
  return jac;
}

// d(com_jacobian(link)) / dq_k.
template <typename Scalar>
Matrix2X<Scalar> com_jacobian_partial(const PlanarArm<Scalar>& arm,
                                      const VectorX<Scalar>& theta, int link,
                                      int k) {
  const int p = arm.dof();
  Matrix2X<Scalar> d = Matrix2X<Scalar>::Zero(2, p);
  for (int j = 0; j <= link; ++j) {
    for (int a = j; a < link; ++a) {
      if (k <= a) d.col(j) -= arm.lengths()[a] * unit(theta[a]);
    }
    if (k <= link) d.col(j) -= arm.com_offsets()[link] * unit(theta[link]);
  }
  return d;
}

}  // namespace detail

template <typename Scalar, typename Derived>
MatrixX<Scalar> inertia_matrix(const PlanarArm<Scalar>& arm,
                               const Eigen::MatrixBase<Derived>& q) {
  detail::check_size(arm, q, "q");
  const int p = arm.dof();
  const VectorX<Scalar> theta = detail::absolute_angles<Scalar>(q);
  MatrixX<Scalar> h = MatrixX<Scalar>::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    const Matrix2X<Scalar> jv = detail::com_jacobian(arm, theta, i);
    h.noalias() += arm.masses()[i] * jv.transpose() * jv;
    // Angular velocity of link i is the sum of the first i+1 joint rates.
    h.topLeftCorner(i + 1, i + 1).array() += arm.inertias()[i];
  }
  return h;
}

// dH/dq_k, analytic.
template <typename Scalar, typename Derived>
MatrixX<Scalar> inertia_matrix_partial(const PlanarArm<Scalar>& arm,
                                       const Eigen::MatrixBase<Derived>& q,
                                       int k) {
  detail::check_size(arm, q, "q");
  const int p = arm.dof();
  const VectorX<Scalar> theta = detail::absolute_angles<Scalar>(q);
  MatrixX<Scalar> dh = MatrixX<Scalar>::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    const Matrix2X<Scalar> jv = detail::com_jacobian(arm, theta, i);
    const Matrix2X<Scalar> djv = detail::com_jacobian_partial(arm, theta, i, k);
    const MatrixX<Scalar> half = djv.transpose() * jv;
    dh += arm.masses()[i] * (half + half.transpose());
  }
  return dh;
}

// Hdot = sum_k dH/dq_k qdot_k.
template <typename Scalar, typename D1, typename D2>
MatrixX<Scalar> inertia_matrix_dot(const PlanarArm<Scalar>& arm,
                                   const Eigen::MatrixBase<D1>& q,
                                   const Eigen::MatrixBase<D2>& qdot) {
  detail::check_size(arm, qdot, "qdot");
  MatrixX<Scalar> hdot = MatrixX<Scalar>::Zero(arm.dof(), arm.dof());
  for (int k = 0; k < arm.dof(); ++k) {
    hdot += inertia_matrix_partial(arm, q, k) * qdot[k];
  }
  return hdot;
}

// Christoffel-symbol Coriolis matrix; Hdot - 2C is skew-symmetric.
template <typename Scalar, typename D1, typename D2>
MatrixX<Scalar> coriolis_matrix(const PlanarArm<Scalar>& arm,
                                const Eigen::MatrixBase<D1>& q,
                                const Eigen::MatrixBase<D2>& qdot) {
  detail::check_size(arm, q, "q");
  detail::check_size(arm, qdot, "qdot");
  const int p = arm.dof();
  std::vector<MatrixX<Scalar>> dh;
  dh.reserve(p);
  for (int k = 0; k < p; ++k) dh.push_back(inertia_matrix_partial(arm, q, k));
  MatrixX<Scalar> c = MatrixX<Scalar>::Zero(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      Scalar acc = 0;
      for (int k = 0; k < p; ++k) {
        acc += (dh[k](i, j) + dh[j](i, k) - dh[i](j, k)) * qdot[k];
      }
      c(i, j) = acc / 2;
    }
  }
  return c;
}

template <typename Scalar, typename Derived>
VectorX<Scalar> gravity_vector(const PlanarArm<Scalar>& arm,
                               const Eigen::MatrixBase<Derived>& q) {
  detail::check_size(arm, q, "q");
  const VectorX<Scalar> theta = detail::absolute_angles<Scalar>(q);
  VectorX<Scalar> g = VectorX<Scalar>::Zero(arm.dof());
  for (int i = 0; i < arm.dof(); ++i) {
    const Matrix2X<Scalar> jv = detail::com_jacobian(arm, theta, i);
    g += arm.masses()[i] * arm.gravity() * jv.row(1).transpose();
  }
  return g;
}

template <typename Scalar, typename Derived>
Vector2<Scalar> forward_kinematics(const PlanarArm<Scalar>& arm,
                                   const Eigen::MatrixBase<Derived>& q) {
  detail::check_size(arm, q, "q");
  const VectorX<Scalar> theta = detail::absolute_angles<Scalar>(q);
  Vector2<Scalar> x = Vector2<Scalar>::Zero();
  for (int k = 0; k < arm.dof(); ++k) {
    x += arm.lengths()[k] * detail::unit(theta[k]);
  }
  return x;
}

template <typename Scalar, typename Derived>
Matrix2X<Scalar> jacobian(const PlanarArm<Scalar>& arm,
                          const Eigen::MatrixBase<Derived>& q) {
  detail::check_size(arm, q, "q");
  const int p = arm.dof();
  const VectorX<Scalar> theta = detail::absolute_angles<Scalar>(q);
  Matrix2X<Scalar> jac = Matrix2X<Scalar>::Zero(2, p);
  for (int a = p - 1; a >= 0; --a) {
    const Vector2<Scalar> term = arm.lengths()[a] * detail::unit_perp(theta[a]);
    for (int j = 0; j <= a; ++j) jac.col(j) += term;
  }
  return jac;
}

// dJ/dq_k, analytic.
template <typename Scalar, typename Derived>
Matrix2X<Scalar> jacobian_partial(const PlanarArm<Scalar>& arm,
                                  const Eigen::MatrixBase<Derived>& q, int k) {
  detail::check_size(arm, q, "q");
  const int p = arm.dof();
  const VectorX<Scalar> theta = detail::absolute_angles<Scalar>(q);
  Matrix2X<Scalar> d = Matrix2X<Scalar>::Zero(2, p);
  for (int a = k; a < p; ++a) {
    const Vector2<Scalar> term = -arm.lengths()[a] * detail::unit(theta[a]);
    for (int j = 0; j <= a; ++j) d.col(j) += term;
  }
  return d;
}

template <typename Scalar, typename D1, typename D2>
Matrix2X<Scalar> jacobian_dot(const PlanarArm<Scalar>& arm,
                              const Eigen::MatrixBase<D1>& q,
                              const Eigen::MatrixBase<D2>& qdot) {
  detail::check_size(arm, q, "q");
  detail::check_size(arm, qdot, "qdot");
  const int p = arm.dof();
  const VectorX<Scalar> theta = detail::absolute_angles<Scalar>(q);
  const VectorX<Scalar> omega = detail::absolute_angles<Scalar>(qdot);
  Matrix2X<Scalar> jd = Matrix2X<Scalar>::Zero(2, p);
  for (int a = p - 1; a >= 0; --a) {
    const Vector2<Scalar> term =
        -arm.lengths()[a] * omega[a] * detail::unit(theta[a]);
    for (int j = 0; j <= a; ++j) jd.col(j) += term;
  }
  return jd;
}

template <typename Scalar>
Scalar smallest_singular_value(const Matrix2X<Scalar>& jac) {
  Eigen::JacobiSVD<Matrix2X<Scalar>> svd(jac);
  return svd.singularValues()[1];
}

// Inverse for square arms, Moore-Penrose pseudoinverse J^T (J J^T)^-1 for
// redundant ones. Throws SingularJacobian below the threshold.
template <typename Scalar, typename Derived>
MatrixX2<Scalar> j_sharp(const PlanarArm<Scalar>& arm,
                         const Eigen::MatrixBase<Derived>& q,
                         Scalar threshold = Scalar(kDefaultSingularityThreshold)) {
  const Matrix2X<Scalar> jac = jacobian(arm, q);
  const Scalar sigma = smallest_singular_value(jac);
  if (!(sigma >= threshold)) {
    throw SingularJacobian("Jacobian smallest singular value " +
                               std::to_string(static_cast<double>(sigma)) +
                               " is below threshold",
                           static_cast<double>(sigma));
  }
  if (arm.dof() == kTaskDim) {
    const Eigen::Matrix<Scalar, 2, 2> square = jac;
    return square.inverse();
  }
  const Eigen::Matrix<Scalar, 2, 2> jjt = jac * jac.transpose();
  return jac.transpose() * jjt.inverse();
}

template <typename Scalar, typename Derived>
MatrixX<Scalar> null_projector(const PlanarArm<Scalar>& arm,
                               const Eigen::MatrixBase<Derived>& q,
                               Scalar threshold = Scalar(kDefaultSingularityThreshold)) {
  const MatrixX2<Scalar> pinv = j_sharp(arm, q, threshold);
  const int p = arm.dof();
  if (p == kTaskDim) return MatrixX<Scalar>::Zero(p, p);
  return MatrixX<Scalar>::Identity(p, p) - pinv * jacobian(arm, q);
}

template <typename Scalar, typename D1, typename D2>
MatrixX2<Scalar> j_sharp_dot(const PlanarArm<Scalar>& arm,
                             const Eigen::MatrixBase<D1>& q,
                             const Eigen::MatrixBase<D2>& qdot,
                             Scalar threshold = Scalar(kDefaultSingularityThreshold)) {
  const MatrixX2<Scalar> pinv = j_sharp(arm, q, threshold);
  const Matrix2X<Scalar> jac = jacobian(arm, q);
  const Matrix2X<Scalar> jd = jacobian_dot(arm, q, qdot);
  if (arm.dof() == kTaskDim) return -pinv * jd * pinv;
  const Eigen::Matrix<Scalar, 2, 2> m = (jac * jac.transpose()).inverse();
  const Eigen::Matrix<Scalar, 2, 2> mdot =
      -m * (jd * jac.transpose() + jac * jd.transpose()) * m;
  return jd.transpose() * m + jac.transpose() * mdot;
}

// Y such that Y * parameters() = H(q) x + C(q, qdot) y + g(q).
template <typename Scalar, typename D1, typename D2, typename D3, typename D4>
MatrixX<Scalar> regressor(const PlanarArm<Scalar>& arm,
                          const Eigen::MatrixBase<D1>& q,
                          const Eigen::MatrixBase<D2>& qdot,
                          const Eigen::MatrixBase<D3>& y,
                          const Eigen::MatrixBase<D4>& x) {
  using std::cos;
  using std::sin;
  detail::check_size(arm, q, "q");
  detail::check_size(arm, qdot, "qdot");
  detail::check_size(arm, y, "y");
  detail::check_size(arm, x, "x");
  const int p = arm.dof();
  const VectorX<Scalar> theta = detail::absolute_angles<Scalar>(q);
  const VectorX<Scalar> omega = detail::absolute_angles<Scalar>(qdot);
  // Work in absolute-angle coordinates, then map back with S^T where S is the
  // lower-triangular matrix of ones (theta = S q).
  const VectorX<Scalar> xa = detail::absolute_angles<Scalar>(x);
  const VectorX<Scalar> ya = detail::absolute_angles<Scalar>(y);
  const auto& l = arm.lengths();

  MatrixX<Scalar> w = MatrixX<Scalar>::Zero(p, 2 * p);
  for (int k = 0; k < p; ++k) {
    w(k, 2 * k) = xa[k];
    Scalar own = arm.gravity() * cos(theta[k]);
    for (int j = 0; j < k; ++j) {
      own += l[j] * (cos(theta[j] - theta[k]) * xa[j] +
                     sin(theta[k] - theta[j]) * omega[j] * ya[j]);
    }
    w(k, 2 * k + 1) = own;
    for (int i = 0; i < k; ++i) {
      w(i, 2 * k + 1) = l[i] * (cos(theta[k] - theta[i]) * xa[k] +
                                sin(theta[i] - theta[k]) * omega[k] * ya[k]);
    }
  }
  // S^T w: row i becomes the sum of rows i..p-1.
  MatrixX<Scalar> out(p, 2 * p);
  out.row(p - 1) = w.row(p - 1);
  for (int i = p - 2; i >= 0; --i) out.row(i) = out.row(i + 1) + w.row(i);
  return out;
}

// det(J J^T), the manipulability measure used by the subtask.
template <typename Scalar, typename Derived>
Scalar manipulability(const PlanarArm<Scalar>& arm,
                      const Eigen::MatrixBase<Derived>& q) {
  const Matrix2X<Scalar> jac = jacobian(arm, q);
  return (jac * jac.transpose()).determinant();
}

}  // namespace dcea

#endif  // DCEA_ARM_MODEL_HPP
