#include "mars/margin.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <vector>

#include "mars/errors.hpp"
#include "mars/rigid_body.hpp"

namespace mars {
namespace {

// Vector orthogonal to three 4-vectors via cofactor expansion (the 4-D
// analogue of the cross product). Zero when the three are rank-deficient.
Eigen::Vector4d orthogonal_complement(const Eigen::Vector4d& a,
                                      const Eigen::Vector4d& b,
                                      const Eigen::Vector4d& c) {
  Eigen::Vector4d v;
  Eigen::Matrix3d minor;
  for (int row = 0; row < 4; ++row) {
    int mr = 0;
    for (int r = 0; r < 4; ++r) {
      if (r == row) continue;
      minor(mr, 0) = a(r);
      minor(mr, 1) = b(r);
      minor(mr, 2) = c(r);
      ++mr;
    }
    v(row) = (row % 2 == 0 ? 1.0 : -1.0) * minor.determinant();
  }
  return v;
}

struct NormalKey {
  std::int64_t q[4];
  bool operator==(const NormalKey& o) const {
    return q[0] == o.q[0] && q[1] == o.q[1] && q[2] == o.q[2] && q[3] == o.q[3];
  }
};

struct NormalKeyHash {
  size_t operator()(const NormalKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t v : k.q) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Snap a unit normal to a 1e-9 grid, orienting the first nonzero component
// positive so v and -v collapse to one facet-direction class.
NormalKey key_of(const Eigen::Vector4d& v) {
  Eigen::Vector4d u = v;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(u(i)) > 1e-12) {
      if (u(i) < 0.0) u = -u;
      break;
    }
  }
  NormalKey k;
  for (int i = 0; i < 4; ++i)
    k.q[i] = static_cast<std::int64_t>(std::llround(u(i) * 1e9));
  return k;
}

// All distinct facet-normal directions of the zonotope: normalized
// orthogonal complements of every generator triple of full (3) rank,
// deduplicated in triple order. Deterministic: phase one fills a slot per
// triple (parallelizable, no shared state), phase two dedups serially in
// index order.
std::vector<Eigen::Vector4d> facet_normals(const Zonotope& z) {
  const int m = z.generator_count();
  std::vector<std::int64_t> tri;
  tri.reserve(static_cast<size_t>(m) * (m - 1) * (m - 2) / 6);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        tri.push_back((static_cast<std::int64_t>(i) << 42) |
                      (static_cast<std::int64_t>(j) << 21) | k);

  const auto count = static_cast<std::int64_t>(tri.size());
  std::vector<Eigen::Vector4d> raw(tri.size());
  std::vector<char> valid(tri.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t t = 0; t < count; ++t) {
    const int i = static_cast<int>(tri[t] >> 42);
    const int j = static_cast<int>((tri[t] >> 21) & 0x1fffff);
    const int k = static_cast<int>(tri[t] & 0x1fffff);
    Eigen::Vector4d v = orthogonal_complement(
        z.generators.col(i), z.generators.col(j), z.generators.col(k));
    const double scale = z.generators.col(i).norm() *
                         z.generators.col(j).norm() *
                         z.generators.col(k).norm();
    if (v.norm() > 1e-10 * scale) {
      raw[t] = v / v.norm();
      valid[t] = 1;
    }
  }

  std::vector<Eigen::Vector4d> unique;
  std::unordered_set<NormalKey, NormalKeyHash> seen;
  for (size_t t = 0; t < raw.size(); ++t) {
    if (!valid[t]) continue;
    if (seen.insert(key_of(raw[t])).second) unique.push_back(raw[t]);
  }
  return unique;
}

// Smallest slack h(v) - v.p over both orientations of every facet normal,
// reduced as a lexicographic (value, candidate index) minimum so the result
// is identical for any thread count.
double min_facet_slack(const Zonotope& z, const Eigen::Vector4d& point,
                       const std::vector<Eigen::Vector4d>& normals,
                       bool parallel) {
  const auto count = static_cast<std::int64_t>(normals.size());
  double best = std::numeric_limits<double>::infinity();
  std::int64_t best_idx = -1;

  auto body = [&](std::int64_t c, double& loc_best, std::int64_t& loc_idx) {
    const Eigen::Vector4d v =
        (c % 2 == 0) ? normals[c / 2] : Eigen::Vector4d(-normals[c / 2]);
    const double slack = z.support(v) - v.dot(point);
    if (slack < loc_best || (slack == loc_best && c < loc_idx)) {
      loc_best = slack;
      loc_idx = c;
    }
  };

  if (parallel) {
#pragma omp parallel
    {
      double loc_best = std::numeric_limits<double>::infinity();
      std::int64_t loc_idx = -1;
#pragma omp for schedule(static) nowait
      for (std::int64_t c = 0; c < 2 * count; ++c) body(c, loc_best, loc_idx);
#pragma omp critical(mars_min_facet_slack)
      {
        if (loc_idx >= 0 && (best_idx < 0 || loc_best < best ||
                             (loc_best == best && loc_idx < best_idx))) {
          best = loc_best;
          best_idx = loc_idx;
        }
      }
    }
  } else {
    for (std::int64_t c = 0; c < 2 * count; ++c) body(c, best, best_idx);
  }
  if (best_idx < 0) throw InputError("attainable wrench set has no facets");
  return best;
}

double interior_distance_impl(const Zonotope& z, const Eigen::Vector4d& point,
                              bool parallel) {
  if (z.rank() < 4)
    throw InputError(
        "interior distance undefined: attainable wrench set is degenerate");
  return min_facet_slack(z, point, facet_normals(z), parallel);
}

}  // namespace

double interior_distance(const Zonotope& z, const Eigen::Vector4d& point) {
  return interior_distance_impl(z, point, true);
}

double interior_distance_serial(const Zonotope& z,
                                const Eigen::Vector4d& point) {
  return interior_distance_impl(z, point, false);
}

ProjectionResult project_onto_set(const WrenchMap& map,
                                  const Eigen::Vector4d& point) {
  BoxLsqResult lsq = BoxLsqSolver().solve(map.columns, point, map.thrust_max);
  ProjectionResult out;
  out.thrusts = lsq.x;
  out.nearest = map.columns * lsq.x;
  out.distance = lsq.distance;
  return out;
}

CmReport controllability_margin(const Assembly& assembly,
                                const Eigen::Vector4d& wrench_scale) {
  if (!(wrench_scale.array() > 0.0).all()) {
    throw InputError("wrench scale entries must be positive");
  }
  const RigidBodyModel body = aggregate_rigid_body(assembly);
  WrenchMap map = wrench_map(assembly, body);
  map.columns = wrench_scale.asDiagonal() * map.columns;
  const LinearModel model = linear_model(body);
  const Zonotope z = control_set(map);
  const Eigen::Vector4d g = wrench_scale.asDiagonal() * gravity_wrench(body);

  CmReport report;
  report.rank_ok = rank_condition(model);
  report.degenerate = z.rank() < 4;

  const ProjectionResult proj = project_onto_set(map, g);
  double cm;
  if (proj.distance > kMembershipTol) {
    cm = -proj.distance;
  } else if (report.degenerate) {
    cm = 0.0;  // attainable, but the set has empty interior
  } else {
    cm = interior_distance(z, g);
  }
  if (std::abs(cm) <= kMembershipTol) cm = 0.0;
  report.cm = cm;
  report.controllable = report.rank_ok && cm > 0.0 && !report.degenerate;
  return report;
}

}  // namespace mars
