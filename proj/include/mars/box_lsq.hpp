#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mars {

// Active-set solver for min ||A x - b||_2 subject to 0 <= x <= upper,
// following the bounded-variable least-squares scheme: one variable leaves
// its bound per outer iteration (largest KKT violation, ties to the lowest
// index), the free subproblem is solved by a complete orthogonal
// decomposition (minimum-norm when the free block is rank-deficient), and
// partial steps re-bind variables that hit a bound. Deterministic for a
// given input.
struct BoxLsqResult {
  Eigen::VectorXd x;         // optimal thrusts, clamped to the box
  Eigen::VectorXd residual;  // b - A x
  double distance = 0.0;     // ||b - A x||
  int iterations = 0;
};

class BoxLsqSolver {
 public:
  // kkt_tol is relative to max(1, ||A^T b||_inf). The iteration cap is
  // 10 n + 100 outer iterations; exceeding it throws NonConvergence.
  explicit BoxLsqSolver(double kkt_tol = 1e-12) : kkt_tol_(kkt_tol) {}

  BoxLsqResult solve(const Eigen::Matrix<double, 4, Eigen::Dynamic>& A,
                     const Eigen::Vector4d& b,
                     const Eigen::VectorXd& upper) const;

 private:
  double kkt_tol_;
};

}  // namespace mars
