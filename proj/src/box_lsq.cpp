#include "mars/box_lsq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mars/errors.hpp"

namespace mars {
namespace {

enum class VarState : std::int8_t { kLower, kUpper, kFree };

}  // namespace

BoxLsqResult BoxLsqSolver::solve(const Eigen::Matrix<double, 4, Eigen::Dynamic>& A,
                                 const Eigen::Vector4d& b,
                                 const Eigen::VectorXd& upper) const {
  const int n = static_cast<int>(A.cols());
  if (upper.size() != n) throw InputError("bound vector size mismatch");
  for (int i = 0; i < n; ++i)
    if (!(upper(i) >= 0.0)) throw InputError("upper bounds must be >= 0");

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<VarState> state(n, VarState::kLower);
  // A variable that refused to leave its bound (degenerate zero-length
  // step) is excluded from freeing until some step makes progress again.
  std::vector<char> blocked(n, 0);

  const double scale =
      std::max(1.0, (A.transpose() * b).lpNorm<Eigen::Infinity>());
  const double tol = kkt_tol_ * scale;
  const int cap = 10 * n + 100;

  BoxLsqResult result;
  for (int outer = 0;; ++outer) {
    if (outer >= cap)
      throw NonConvergence("bounded least squares exceeded iteration cap");

    Eigen::Vector4d r = b - A * x;
    Eigen::VectorXd w = A.transpose() * r;

    // Most violated first-order condition among bound variables; strict >
    // keeps the lowest index on ties.
    int enter = -1;
    double worst = tol;
    for (int i = 0; i < n; ++i) {
      if (blocked[i] || state[i] == VarState::kFree) continue;
      const double v = state[i] == VarState::kLower ? w(i) : -w(i);
      if (v > worst) {
        worst = v;
        enter = i;
      }
    }
    if (enter < 0) break;
    state[enter] = VarState::kFree;

    // Re-solve the free subproblem, re-binding variables that hit a bound,
    // until the free solution is feasible. Each pass binds at least one
    // variable, so this terminates.
    bool moved = false;
    for (;;) {
      std::vector<int> free_idx;
      for (int i = 0; i < n; ++i)
        if (state[i] == VarState::kFree) free_idx.push_back(i);
      if (free_idx.empty()) break;

      Eigen::Vector4d rhs = b;
      for (int i = 0; i < n; ++i)
        if (state[i] == VarState::kUpper) rhs -= upper(i) * A.col(i);
      Eigen::MatrixXd af(4, free_idx.size());
      for (size_t j = 0; j < free_idx.size(); ++j)
        af.col(j) = A.col(free_idx[j]);

      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(af);
      Eigen::VectorXd z = cod.solve(rhs);

      double alpha = 1.0;
      int crossing = -1;
      for (size_t j = 0; j < free_idx.size(); ++j) {
        const int i = free_idx[j];
        double target = z(j);
        double bound;
        if (target < 0.0)
          bound = 0.0;
        else if (target > upper(i))
          bound = upper(i);
        else
          continue;
        const double delta = target - x(i);
        const double step = delta != 0.0 ? (bound - x(i)) / delta : 0.0;
        if (step < alpha) {
          alpha = step;
          crossing = i;
        }
      }

      if (crossing < 0) {
        for (size_t j = 0; j < free_idx.size(); ++j) x(free_idx[j]) = z(j);
        moved = true;
        break;
      }

      alpha = std::max(alpha, 0.0);
      for (size_t j = 0; j < free_idx.size(); ++j) {
        const int i = free_idx[j];
        x(i) += alpha * (z(j) - x(i));
      }
      if (alpha > 0.0) moved = true;
      // Bind every free variable now resting on a bound (the crossing one
      // always is; rounding may park others there too).
      const double snap = 1e-14 * scale + 1e-300;
      for (size_t j = 0; j < free_idx.size(); ++j) {
        const int i = free_idx[j];
        if (x(i) <= snap) {
          x(i) = 0.0;
          state[i] = VarState::kLower;
        } else if (x(i) >= upper(i) - snap) {
          x(i) = upper(i);
          state[i] = VarState::kUpper;
        }
      }
      if (state[crossing] == VarState::kFree) {
        // Guarantee termination of the inner loop even when rounding left
        // the crossing variable marginally interior.
        x(crossing) = x(crossing) <= 0.5 * upper(crossing) ? 0.0 : upper(crossing);
        state[crossing] =
            x(crossing) == 0.0 ? VarState::kLower : VarState::kUpper;
      }
      if (!moved && crossing == enter) {
        blocked[enter] = 1;
        break;
      }
    }
    if (moved) std::fill(blocked.begin(), blocked.end(), 0);
    result.iterations = outer + 1;
  }

  for (int i = 0; i < n; ++i) x(i) = std::clamp(x(i), 0.0, upper(i));
  result.x = x;
  Eigen::Vector4d final_r = b - A * x;
  result.residual = final_r;
  result.distance = final_r.norm();
  return result;
}

}  // namespace mars
