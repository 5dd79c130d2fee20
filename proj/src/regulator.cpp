#include "mars/regulator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "mars/errors.hpp"

namespace mars {
namespace {

constexpr int kN = kStateDim;
constexpr int kM = kWrenchDim;
using StateMatrix = Eigen::Matrix<double, kN, kN>;
using GainMatrix = Eigen::Matrix<double, kM, kN>;

double spectral_abscissa(const StateMatrix& m) {
  Eigen::EigenSolver<StateMatrix> eig(m, /*computeEigenvectors=*/false);
  return eig.eigenvalues().real().maxCoeff();
}

// Solves A^T P + P A + W = 0 for symmetric P by dense Kronecker
// factorization; the state dimension is fixed at 8, so the 64x64 system is
// cheap and unconditionally robust for a Hurwitz A.
StateMatrix solve_lyapunov(const StateMatrix& a, const StateMatrix& w) {
  constexpr int kNN = kN * kN;
  const StateMatrix at = a.transpose();
  Eigen::Matrix<double, kNN, kNN> op = Eigen::Matrix<double, kNN, kNN>::Zero();
  for (int b = 0; b < kN; ++b) op.block<kN, kN>(kN * b, kN * b) += at;
  for (int i = 0; i < kN; ++i)
    for (int j = 0; j < kN; ++j)
      op.block<kN, kN>(kN * i, kN * j) +=
          at(i, j) * StateMatrix::Identity();
  Eigen::Matrix<double, kNN, 1> rhs;
  Eigen::Map<StateMatrix>(rhs.data()) = -w;
  const Eigen::Matrix<double, kNN, 1> vec_p = op.partialPivLu().solve(rhs);
  StateMatrix p = Eigen::Map<const StateMatrix>(vec_p.data());
  return 0.5 * (p + p.transpose());
}

}  // namespace

Regulator lqr_gain(const LinearModel& model, const RegulatorWeights& weights) {
  if (!(weights.state > 0.0) || !(weights.control > 0.0))
    throw InputError("regulator weights must be positive");

  const StateMatrix q = weights.state * StateMatrix::Identity();
  const double r = weights.control;

  // Stabilizing seed. The model is four decoupled double integrators driven
  // through the invertible bottom block of B, so a per-axis PD law
  // acc = -(x + 2 v) is Hurwitz regardless of the block's signs.
  const Eigen::Matrix<double, kM, kM> bottom =
      model.B.template bottomRows<kM>();
  if (std::abs(bottom.determinant()) < 1e-14)
    throw RegulatorFailure("input map is singular");
  Eigen::Matrix<double, kM, 2 * kM> pd;
  pd << Eigen::Matrix<double, kM, kM>::Identity(),
      2.0 * Eigen::Matrix<double, kM, kM>::Identity();
  GainMatrix gain = bottom.inverse() * pd;

  Regulator out;
  constexpr int kMaxIterations = 100;
  for (int it = 0; it < kMaxIterations; ++it) {
    const StateMatrix closed = model.A - model.B * gain;
    const double abscissa = spectral_abscissa(closed);
    if (!(abscissa < 0.0))
      throw RegulatorFailure("iterate lost closed-loop stability");
    const StateMatrix p =
        solve_lyapunov(closed, q + gain.transpose() * (r * gain));
    const GainMatrix next = (1.0 / r) * model.B.transpose() * p;
    const double step = (next - gain).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, next.cwiseAbs().maxCoeff());
    gain = next;
    if (step <= 1e-12 * scale) {
      out.gain = gain;
      out.closed_loop_abscissa = spectral_abscissa(model.A - model.B * gain);
      out.iterations = it + 1;
      return out;
    }
  }
  throw RegulatorFailure("Riccati iteration did not converge");
}

}  // namespace mars
