#pragma once

#include <Eigen/Dense>

#include "mars/rigid_body.hpp"

namespace mars {

inline constexpr int kStateDim = 8;
inline constexpr int kWrenchDim = 4;

// Quasi-static linear model around hover. State ordering:
//   x = [p_z, phi, theta, psi, v_z, omega_x, omega_y, omega_z]
// Dynamics: xdot = A x + B (u_f - gravity), with
//   A = [[0, I4], [0, 0]],  B = [[0], [diag(-n m, Jxx, Jyy, Jzz)^-1]].
struct LinearModel {
  Eigen::Matrix<double, kStateDim, kStateDim> A;
  Eigen::Matrix<double, kStateDim, kWrenchDim> B;
  Eigen::Vector4d gravity;  // [n m g, 0, 0, 0]
};

LinearModel linear_model(const RigidBodyModel& body);

// Controllability of (A, B) via the numerical rank of [B, AB, ..., A^7 B];
// singular values below `tol` times the largest are treated as zero.
bool rank_condition(const LinearModel& model, double tol = 1e-9);

}  // namespace mars
