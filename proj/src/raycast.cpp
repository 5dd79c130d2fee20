#include "mars/raycast.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>

#include "mars/box_lsq.hpp"
#include "mars/errors.hpp"
#include "mars/margin.hpp"

namespace mars {
namespace {

// Super-Fibonacci spiral constants (irrational winding ratios giving
// low-discrepancy coverage of S^3).
constexpr double kPhi = 1.4142135623730951;   // sqrt(2)
constexpr double kPsi = 1.5337511687552043;

}  // namespace

std::vector<Eigen::Vector4d> sphere_directions(int n) {
  if (n < 1) throw InputError("direction count must be >= 1");
  std::vector<Eigen::Vector4d> dirs;
  dirs.reserve(n);
  for (int axis = 0; axis < 4 && static_cast<int>(dirs.size()) < n; ++axis)
    for (double sign : {1.0, -1.0}) {
      if (static_cast<int>(dirs.size()) >= n) break;
      Eigen::Vector4d d = Eigen::Vector4d::Zero();
      d(axis) = sign;
      dirs.push_back(d);
    }
  const int m = n - static_cast<int>(dirs.size());
  for (int j = 0; j < m; ++j) {
    const double s = j + 0.5;
    const double t = s / m;
    const double d = 2.0 * M_PI * s;
    const double r = std::sqrt(t);
    const double rr = std::sqrt(1.0 - t);
    const double alpha = d / kPhi;
    const double beta = d / kPsi;
    dirs.emplace_back(r * std::sin(alpha), r * std::cos(alpha),
                      rr * std::sin(beta), rr * std::cos(beta));
  }
  return dirs;
}

namespace {

double raycast_impl(const WrenchMap& map, const Eigen::Vector4d& point,
                    int n_dirs, bool parallel) {
  const BoxLsqSolver solver;
  auto inside = [&](const Eigen::Vector4d& q) {
    return solver.solve(map.columns, q, map.thrust_max).distance <=
           kMembershipTol;
  };
  if (!inside(point))
    throw InputError("ray-cast start point is not attainable");

  // Everything attainable lies within this radius of the origin, so a ray
  // parameter beyond it is certainly outside.
  double radius = 1.0 + point.norm();
  for (int i = 0; i < map.rotor_count(); ++i)
    radius += map.thrust_max(i) * map.columns.col(i).norm();

  const std::vector<Eigen::Vector4d> dirs = sphere_directions(n_dirs);

  // Outer bracket of the boundary crossing along one direction: grow until
  // outside, then bisect; the returned hi never drops below the true
  // crossing, so the minimum over directions upper-bounds the true
  // boundary distance.
  auto crossing_upper_bound = [&](const Eigen::Vector4d& d) {
    double lo = 0.0;
    double hi = 1.0;
    while (inside(point + hi * d)) {
      lo = hi;
      hi *= 2.0;
      if (hi > radius) return radius;  // unreachable for a bounded set
    }
    while (hi - lo > 1e-9 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      if (inside(point + mid * d))
        lo = mid;
      else
        hi = mid;
    }
    return hi;
  };

  // Shared best-so-far crossing. Before bracketing a direction, probe the
  // point at that distance: if it is still attainable, convexity puts this
  // direction's crossing beyond the best already found, so the bracket can
  // be skipped without changing the minimum (the probe costs one solve, the
  // bracket dozens). The pruned result is identical for any thread order.
  std::atomic<double> shared_best{std::numeric_limits<double>::infinity()};
  auto note_crossing = [&shared_best](double t) {
    double cur = shared_best.load(std::memory_order_relaxed);
    while (t < cur && !shared_best.compare_exchange_weak(
                          cur, t, std::memory_order_relaxed)) {
    }
  };
  auto already_beaten = [&](const Eigen::Vector4d& d) {
    const double known = shared_best.load(std::memory_order_relaxed);
    return std::isfinite(known) && inside(point + known * d);
  };

  double best = std::numeric_limits<double>::infinity();
  const auto count = static_cast<std::int64_t>(dirs.size());
  if (parallel) {
#pragma omp parallel
    {
      double loc_best = std::numeric_limits<double>::infinity();
#pragma omp for schedule(dynamic, 8) nowait
      for (std::int64_t i = 0; i < count; ++i) {
        if (already_beaten(dirs[i])) continue;
        const double t = crossing_upper_bound(dirs[i]);
        note_crossing(t);
        loc_best = std::min(loc_best, t);
      }
#pragma omp critical(mars_raycast_reduce)
      best = std::min(best, loc_best);
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      if (already_beaten(dirs[i])) continue;
      const double t = crossing_upper_bound(dirs[i]);
      note_crossing(t);
      best = std::min(best, t);
    }
  }
  return best;
}

}  // namespace

double raycast_distance_oracle(const WrenchMap& map,
                               const Eigen::Vector4d& point, int n_dirs) {
  return raycast_impl(map, point, n_dirs, true);
}

double raycast_distance_oracle_serial(const WrenchMap& map,
                                      const Eigen::Vector4d& point,
                                      int n_dirs) {
  return raycast_impl(map, point, n_dirs, false);
}

}  // namespace mars
