#pragma once

#include <Eigen/Dense>

#include "mars/linear_model.hpp"

namespace mars {

// Infinite-horizon LQR gain for the hover-linearized model, found by
// Kleinman's iteration on the algebraic Riccati equation: start from a
// stabilizing gain, solve the closed-loop Lyapunov equation (dense
// Kronecker factorization, the state is only 8-dimensional), update
// K = R^{-1} B^T P, repeat until the update stalls. Throws
// RegulatorFailure if no stabilizing gain is found.
struct RegulatorWeights {
  double state = 1.0;    // Q = state * I
  double control = 0.1;  // R = control * I
};

struct Regulator {
  Eigen::Matrix<double, kWrenchDim, kStateDim> gain;
  double closed_loop_abscissa = 0.0;  // max real part of eig(A - B K), < 0
  int iterations = 0;
};

Regulator lqr_gain(const LinearModel& model, const RegulatorWeights& weights = {});

}  // namespace mars
