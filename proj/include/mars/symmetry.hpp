#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mars {

// Symmetries of a rectangular-lattice footprint: the subgroup of
// {identity, mirror-x, mirror-y, rotate-180} (about the footprint center)
// that maps the occupied cell set onto itself. Cell images are exact because
// the center is tracked in doubled coordinates.
class FootprintSymmetry {
 public:
  explicit FootprintSymmetry(const std::vector<Eigen::Vector2i>& cells);

  int group_order() const { return static_cast<int>(ops_.size()); }

  // Images of a cell under every footprint-preserving operation
  // (identity first).
  std::vector<Eigen::Vector2i> orbit(const Eigen::Vector2i& cell) const;

  // Canonical representative of a cell's orbit: the minimum under the
  // (y descending, x ascending) cell ordering used throughout the planner.
  Eigen::Vector2i canonical(const Eigen::Vector2i& cell) const;
  // Canonical representative of an unordered cell-pair orbit.
  std::pair<Eigen::Vector2i, Eigen::Vector2i> canonical_pair(
      const Eigen::Vector2i& a, const Eigen::Vector2i& b) const;

 private:
  Eigen::Vector2i apply_op(int op, const Eigen::Vector2i& c) const;
  std::vector<int> ops_;        // subset of {0:id, 1:mx, 2:my, 3:rot180}
  Eigen::Vector2i center2_{0, 0};  // footprint center, doubled coordinates
};

// Strict weak order used for every deterministic cell tie-break: row-major
// with the top row first (y descending, then x ascending).
inline bool cell_before(const Eigen::Vector2i& a, const Eigen::Vector2i& b) {
  if (a.y() != b.y()) return a.y() > b.y();
  return a.x() < b.x();
}

}  // namespace mars
