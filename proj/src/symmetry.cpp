#include "mars/symmetry.hpp"

#include <algorithm>
#include <set>

#include "mars/errors.hpp"

namespace mars {
namespace {

struct CellLess {
  bool operator()(const Eigen::Vector2i& a, const Eigen::Vector2i& b) const {
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() < b.y();
  }
};

}  // namespace

FootprintSymmetry::FootprintSymmetry(
    const std::vector<Eigen::Vector2i>& cells) {
  if (cells.empty()) throw InputError("footprint must be non-empty");
  Eigen::Vector2i lo = cells.front();
  Eigen::Vector2i hi = cells.front();
  for (const auto& c : cells) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  center2_ = lo + hi;  // doubled coordinates keep half-integer centers exact

  std::set<Eigen::Vector2i, CellLess> cell_set(cells.begin(), cells.end());
  for (int op = 0; op < 4; ++op) {
    bool preserved = true;
    for (const auto& c : cells)
      if (!cell_set.count(apply_op(op, c))) {
        preserved = false;
        break;
      }
    if (preserved) ops_.push_back(op);
  }
}

Eigen::Vector2i FootprintSymmetry::apply_op(int op,
                                            const Eigen::Vector2i& c) const {
  const int mx = center2_.x() - c.x();  // x mirrored about the center
  const int my = center2_.y() - c.y();
  switch (op) {
    case 1: return {mx, c.y()};
    case 2: return {c.x(), my};
    case 3: return {mx, my};
    default: return c;
  }
}

std::vector<Eigen::Vector2i> FootprintSymmetry::orbit(
    const Eigen::Vector2i& cell) const {
  std::vector<Eigen::Vector2i> out;
  out.reserve(ops_.size());
  for (int op : ops_) out.push_back(apply_op(op, cell));
  return out;
}

Eigen::Vector2i FootprintSymmetry::canonical(const Eigen::Vector2i& cell) const {
  Eigen::Vector2i best = cell;
  for (const auto& img : orbit(cell))
    if (cell_before(img, best)) best = img;
  return best;
}

std::pair<Eigen::Vector2i, Eigen::Vector2i> FootprintSymmetry::canonical_pair(
    const Eigen::Vector2i& a, const Eigen::Vector2i& b) const {
  auto ordered = [](Eigen::Vector2i x, Eigen::Vector2i y) {
    if (cell_before(y, x)) std::swap(x, y);
    return std::make_pair(x, y);
  };
  auto pair_before = [](const std::pair<Eigen::Vector2i, Eigen::Vector2i>& p,
                        const std::pair<Eigen::Vector2i, Eigen::Vector2i>& q) {
    if (p.first.x() != q.first.x() || p.first.y() != q.first.y())
      return cell_before(p.first, q.first);
    return cell_before(p.second, q.second);
  };
  auto best = ordered(a, b);
  for (int op : ops_) {
    auto cand = ordered(apply_op(op, a), apply_op(op, b));
    if (pair_before(cand, best)) best = cand;
  }
  return best;
}

}  // namespace mars
