#pragma once

#include <Eigen/Dense>

#include "mars/assembly.hpp"

namespace mars {

// Aggregated rigid-body parameters of an assembly about its center of mass.
// Units are point masses at their cell centers for the inertia transport;
// each also contributes its own body inertia. Products of inertia arising
// from the parallel-axis transport are truncated to keep the tensor
// diagonal; `offdiag_truncated` reports whether anything nonzero was
// dropped.
struct RigidBodyModel {
  int unit_count = 0;
  double total_mass = 0.0;             // kg
  Eigen::Vector2d com{0.0, 0.0};       // m, in lattice coordinates
  Eigen::Vector3d inertia{0, 0, 0};    // kg m^2, diagonal [Jxx, Jyy, Jzz]
  bool offdiag_truncated = false;
};

// Failed units retain full mass: a dead unit is dead weight, not a hole.
RigidBodyModel aggregate_rigid_body(const Assembly& assembly);

}  // namespace mars
