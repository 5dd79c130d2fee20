#include "mars/linear_model.hpp"

#include "mars/wrench_map.hpp"

namespace mars {

LinearModel linear_model(const RigidBodyModel& body) {
  LinearModel model;
  model.A.setZero();
  model.A.topRightCorner<4, 4>().setIdentity();
  model.B.setZero();
  // Height uses up-positive thrust against down-positive gravity, hence the
  // negated mass; attitude rows are plain inverse inertia.
  Eigen::Vector4d inv_inertia(
      -1.0 / body.total_mass, 1.0 / body.inertia.x(),
      1.0 / body.inertia.y(), 1.0 / body.inertia.z());
  model.B.bottomRows<4>() = inv_inertia.asDiagonal();
  model.gravity = gravity_wrench(body);
  return model;
}

bool rank_condition(const LinearModel& model, double tol) {
  Eigen::Matrix<double, kStateDim, Eigen::Dynamic> ctrb(kStateDim,
                                                        kStateDim * kWrenchDim);
  Eigen::Matrix<double, kStateDim, kWrenchDim> block = model.B;
  for (int k = 0; k < kStateDim; ++k) {
    ctrb.middleCols<kWrenchDim>(k * kWrenchDim) = block;
    block = model.A * block;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ctrb);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return false;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank;
  return rank == kStateDim;
}

}  // namespace mars
