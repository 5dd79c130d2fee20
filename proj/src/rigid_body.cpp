#include "mars/rigid_body.hpp"

#include <cmath>

namespace mars {

RigidBodyModel aggregate_rigid_body(const Assembly& assembly) {
  RigidBodyModel body;
  body.unit_count = assembly.unit_count();
  const double m = assembly.geometry.unit_mass;
  const double pitch = assembly.geometry.cell_pitch;
  body.total_mass = m * body.unit_count;

  Eigen::Vector2d com = Eigen::Vector2d::Zero();
  for (const Unit& u : assembly.units)
    com += pitch * u.cell.cast<double>();
  com /= body.unit_count;
  body.com = com;

  // Parallel-axis transport of each unit's body-diagonal inertia to the
  // assembly CoM. All centers share one z-plane, so only Jxy picks up
  // products of inertia; Jxz = Jyz = 0 exactly.
  Eigen::Vector3d inertia = Eigen::Vector3d::Zero();
  double jxy = 0.0;
  for (const Unit& u : assembly.units) {
    Eigen::Vector2d r = pitch * u.cell.cast<double>() - com;
    inertia += assembly.geometry.unit_inertia;
    inertia.x() += m * r.y() * r.y();
    inertia.y() += m * r.x() * r.x();
    inertia.z() += m * r.squaredNorm();
    jxy += -m * r.x() * r.y();
  }
  body.inertia = inertia;
  body.offdiag_truncated = std::abs(jxy) > 1e-12 * inertia.z();
  return body;
}

}  // namespace mars
