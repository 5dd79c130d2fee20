#pragma once

#include <Eigen/Dense>

#include "mars/wrench_map.hpp"

namespace mars {

// Attainable wrench set of box-bounded thrusts as a zonotope:
//   Omega = { center + sum_i s_i g_i : s_i in [-1, 1] }
// with g_i = (K_i / 2) column_i and center = sum_i (K_i / 2) column_i, which
// equals { B_f f : 0 <= f_i <= K_i } exactly. Zero-norm generators (dead
// rotors) are dropped; their count is recorded.
struct Zonotope {
  Eigen::Vector4d center{0, 0, 0, 0};
  Eigen::Matrix<double, 4, Eigen::Dynamic> generators;
  int dropped_zero_generators = 0;

  int generator_count() const { return static_cast<int>(generators.cols()); }

  // Numerical rank of the generator matrix; < 4 means Omega is degenerate
  // (has empty interior).
  int rank(double tol = 1e-10) const;

  // Support function h(v) = v . center + sum_i |v . g_i|.
  double support(const Eigen::Vector4d& v) const;
};

Zonotope control_set(const WrenchMap& map);

}  // namespace mars
