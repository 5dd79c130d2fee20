#pragma once

#include <Eigen/Dense>

#include "mars/assembly.hpp"
#include "mars/box_lsq.hpp"
#include "mars/linear_model.hpp"
#include "mars/wrench_map.hpp"
#include "mars/zonotope.hpp"

namespace mars {

// Distance from a point to the attainable wrench set, computed in thrust
// space: min ||B_f f - point|| over the thrust box. `distance` is zero (up
// to solver tolerance) iff the point is attainable.
struct ProjectionResult {
  Eigen::VectorXd thrusts;
  Eigen::Vector4d nearest;
  double distance = 0.0;
};

ProjectionResult project_onto_set(const WrenchMap& map,
                                  const Eigen::Vector4d& point);

// Distance from an interior point to the zonotope boundary: the minimum of
// h(v) - v.p over all facet normals, enumerated as the null directions of
// every rank-3 generator triple (both orientations, deduplicated on a 1e-9
// grid). Throws InputError if the zonotope is degenerate (rank < 4).
// The `_serial` variant is the reference implementation; the unsuffixed one
// parallelizes the triple scan with OpenMP and reduces deterministically
// (lexicographic (distance, candidate index) minimum), so both return
// bit-identical results for any thread count.
double interior_distance(const Zonotope& z, const Eigen::Vector4d& point);
double interior_distance_serial(const Zonotope& z,
                                const Eigen::Vector4d& point);

// Controllability report of one assembly. Contract:
//   controllable == rank_ok && cm > 0 && !(degenerate && cm == 0)
// cm is the signed distance from the gravity wrench to the boundary of the
// attainable set: positive inside (depth), negative outside (projection
// distance), zero on the boundary within tolerance (|.| <= 1e-8), in which
// case controllable is false.
struct CmReport {
  double cm = 0.0;
  bool controllable = false;
  bool rank_ok = false;
  bool degenerate = false;
};

// `wrench_scale` rescales the four wrench coordinates (thrust, roll, pitch,
// yaw torque) before any distance is measured, so callers can weigh the axes
// against each other; the default leaves the raw units in place. Entries
// must be positive.
CmReport controllability_margin(
    const Assembly& assembly,
    const Eigen::Vector4d& wrench_scale = Eigen::Vector4d::Ones());

// Membership tolerance shared by the margin routines and the ray-cast
// oracle: a projection distance at or below this counts as "inside".
inline constexpr double kMembershipTol = 1e-8;

}  // namespace mars
