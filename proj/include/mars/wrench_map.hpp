#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mars/assembly.hpp"
#include "mars/rigid_body.hpp"

namespace mars {

// Linear map from per-rotor thrusts to the body wrench
// [F, M_x, M_y, M_z]^T about the assembly center of mass. Column j is
//   eta_j * [1, r_y, -r_x, sigma_j * c_tau]^T
// where r is the rotor position relative to the CoM after the unit's yaw
// rotation. Dead rotors contribute all-zero columns but keep their slot so
// column index j maps stably to (unit, rotor).
struct WrenchMap {
  Eigen::Matrix<double, 4, Eigen::Dynamic> columns;
  Eigen::VectorXd thrust_max;      // per rotor upper bound (same for all)
  std::vector<int> unit_ids;       // column -> owning unit id
  std::vector<int> rotor_index;    // column -> rotor index within unit

  int rotor_count() const { return static_cast<int>(columns.cols()); }

  // Wrench realized by a thrust vector.
  Eigen::Vector4d apply(const Eigen::VectorXd& thrusts) const {
    return columns * thrusts;
  }
};

WrenchMap wrench_map(const Assembly& assembly);
WrenchMap wrench_map(const Assembly& assembly, const RigidBodyModel& body);

// Hover wrench the control set must contain for static feasibility:
// [n m g, 0, 0, 0]^T.
Eigen::Vector4d gravity_wrench(const RigidBodyModel& body);

}  // namespace mars
