#include "mars/zonotope.hpp"

namespace mars {

int Zonotope::rank(double tol) const {
  if (generators.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(generators);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  return r;
}

double Zonotope::support(const Eigen::Vector4d& v) const {
  double h = v.dot(center);
  for (int i = 0; i < generators.cols(); ++i)
    h += std::abs(v.dot(generators.col(i)));
  return h;
}

Zonotope control_set(const WrenchMap& map) {
  Zonotope z;
  const int n = map.rotor_count();
  z.center.setZero();
  Eigen::Matrix<double, 4, Eigen::Dynamic> gens(4, n);
  int kept = 0;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector4d g = 0.5 * map.thrust_max(i) * map.columns.col(i);
    z.center += g;
    if (g.norm() > 0.0)
      gens.col(kept++) = g;
    else
      ++z.dropped_zero_generators;
  }
  z.generators = gens.leftCols(kept);
  return z;
}

}  // namespace mars
