#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mars/wrench_map.hpp"

namespace mars {

// Deterministic quasi-uniform directions on S^3. The first eight entries
// are +/- the coordinate axes; the remainder follows a super-Fibonacci
// spiral. n must be >= 1.
std::vector<Eigen::Vector4d> sphere_directions(int n);

// Independent upper bound on the distance from an interior point to the
// boundary of the attainable set: for each sampled direction d, the boundary
// crossing t(d) = max { t : point + t d attainable } is bracketed by
// bisection on attainability (projection distance <= kMembershipTol), and
// the minimum outer bracket over all directions is returned. Converges to
// the true boundary distance from above as n_dirs grows. Throws InputError
// if the starting point itself is not attainable.
// The `_serial` variant is the reference; the unsuffixed one parallelizes
// over directions with a deterministic reduction.
double raycast_distance_oracle(const WrenchMap& map,
                               const Eigen::Vector4d& point, int n_dirs);
double raycast_distance_oracle_serial(const WrenchMap& map,
                                      const Eigen::Vector4d& point,
                                      int n_dirs);

}  // namespace mars
