#include "mars/wrench_map.hpp"

namespace mars {
namespace {

// Quarter-turn rotation of a planar offset: (x, y) -> (-y, x) per turn.
Eigen::Vector2d rotate_quarters(const Eigen::Vector2d& v, int quarters) {
  switch (quarters & 3) {
    case 1: return {-v.y(), v.x()};
    case 2: return {-v.x(), -v.y()};
    case 3: return {v.y(), -v.x()};
    default: return v;
  }
}

}  // namespace

WrenchMap wrench_map(const Assembly& assembly, const RigidBodyModel& body) {
  WrenchMap map;
  const int n = assembly.rotor_count();
  map.columns.resize(4, n);
  map.thrust_max = Eigen::VectorXd::Constant(n, assembly.geometry.thrust_max);
  map.unit_ids.reserve(n);
  map.rotor_index.reserve(n);

  const double pitch = assembly.geometry.cell_pitch;
  const double c_tau = assembly.geometry.torque_coeff;
  int col = 0;
  for (const Unit& u : assembly.units) {
    Eigen::Vector2d center = pitch * u.cell.cast<double>() - body.com;
    for (int k = 0; k < kRotorsPerUnit; ++k, ++col) {
      Eigen::Vector2d r =
          center + rotate_quarters(assembly.geometry.rotor_offsets[k],
                                   u.yaw_quarter);
      const double eta = u.efficiency[k];
      map.columns.col(col) =
          eta * Eigen::Vector4d(1.0, r.y(), -r.x(),
                                assembly.geometry.spin_signs[k] * c_tau);
      map.unit_ids.push_back(u.id);
      map.rotor_index.push_back(k);
    }
  }
  return map;
}

WrenchMap wrench_map(const Assembly& assembly) {
  return wrench_map(assembly, aggregate_rigid_body(assembly));
}

Eigen::Vector4d gravity_wrench(const RigidBodyModel& body) {
  return {body.total_mass * kGravity, 0.0, 0.0, 0.0};
}

}  // namespace mars
