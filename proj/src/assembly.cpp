#include "mars/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "mars/errors.hpp"

namespace mars {
namespace {

struct CellLess {
  bool operator()(const Eigen::Vector2i& a, const Eigen::Vector2i& b) const {
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() < b.y();
  }
};

bool footprint_connected(const std::vector<Unit>& units) {
  if (units.empty()) return true;
  std::set<Eigen::Vector2i, CellLess> cells;
  for (const Unit& u : units) cells.insert(u.cell);
  std::set<Eigen::Vector2i, CellLess> seen;
  std::vector<Eigen::Vector2i> stack{units.front().cell};
  seen.insert(units.front().cell);
  const Eigen::Vector2i dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  while (!stack.empty()) {
    Eigen::Vector2i c = stack.back();
    stack.pop_back();
    for (const auto& d : dirs) {
      Eigen::Vector2i n = c + d;
      if (cells.count(n) && !seen.count(n)) {
        seen.insert(n);
        stack.push_back(n);
      }
    }
  }
  return seen.size() == cells.size();
}

}  // namespace

UnitGeometry::UnitGeometry() {
  // X configuration: rotors on the diagonals at radial distance arm_length.
  const double a = arm_length / std::sqrt(2.0);
  rotor_offsets = {Eigen::Vector2d{a, a}, Eigen::Vector2d{-a, a},
                   Eigen::Vector2d{-a, -a}, Eigen::Vector2d{a, -a}};
}

void UnitGeometry::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      std::ostringstream os;
      os << name << " must be positive, got " << v;
      throw InputError(os.str());
    }
  };
  positive(arm_length, "arm_length");
  positive(cell_pitch, "cell_pitch");
  positive(thrust_max, "thrust_max");
  positive(torque_coeff, "torque_coeff");
  positive(unit_mass, "unit_mass");
  positive(unit_inertia.x(), "unit_inertia[0]");
  positive(unit_inertia.y(), "unit_inertia[1]");
  positive(unit_inertia.z(), "unit_inertia[2]");
  if (arm_length >= cell_pitch)
    throw InputError("arm_length must be smaller than cell_pitch");
  double spin_sum = 0.0;
  for (double s : spin_signs) {
    if (s != 1.0 && s != -1.0)
      throw InputError("spin signs must be +1 or -1");
    spin_sum += s;
  }
  if (spin_sum != 0.0) throw InputError("spin signs must sum to zero");
}

const Unit& Assembly::unit_by_id(int id) const {
  auto it = std::lower_bound(
      units.begin(), units.end(), id,
      [](const Unit& u, int key) { return u.id < key; });
  if (it == units.end() || it->id != id) {
    std::ostringstream os;
    os << "no unit with id " << id;
    throw InputError(os.str());
  }
  return *it;
}

bool Assembly::has_unit(int id) const {
  auto it = std::lower_bound(
      units.begin(), units.end(), id,
      [](const Unit& u, int key) { return u.id < key; });
  return it != units.end() && it->id == id;
}

std::vector<int> Assembly::failed_unit_ids() const {
  std::vector<int> ids;
  for (const Unit& u : units)
    if (u.complete_failure()) ids.push_back(u.id);
  return ids;
}

Assembly build_assembly(const UnitGeometry& geometry, std::vector<Unit> units) {
  geometry.validate();
  if (units.empty()) throw InputError("assembly needs at least one unit");
  std::sort(units.begin(), units.end(),
            [](const Unit& a, const Unit& b) { return a.id < b.id; });
  std::map<Eigen::Vector2i, int, CellLess> cell_owner;
  int prev_id = units.front().id - 1;
  for (const Unit& u : units) {
    if (u.id == prev_id) {
      std::ostringstream os;
      os << "duplicate unit id " << u.id;
      throw InputError(os.str());
    }
    prev_id = u.id;
    auto [it, inserted] = cell_owner.emplace(u.cell, u.id);
    if (!inserted) {
      std::ostringstream os;
      os << "units " << it->second << " and " << u.id << " share cell ("
         << u.cell.x() << ", " << u.cell.y() << ")";
      throw InputError(os.str());
    }
    if (u.yaw_quarter < 0 || u.yaw_quarter > 3)
      throw InputError("yaw must be a quarter-turn count in 0..3");
    for (double e : u.efficiency)
      if (!(e >= 0.0 && e <= 1.0))
        throw InputError("rotor efficiency must lie in [0, 1]");
  }
  if (!footprint_connected(units))
    throw InputError("assembly footprint must be 4-connected");
  return Assembly{geometry, std::move(units)};
}

Assembly apply_fault(const Assembly& assembly, int unit_id,
                     const std::array<double, kRotorsPerUnit>& efficiency) {
  assembly.unit_by_id(unit_id);  // existence check
  for (double e : efficiency)
    if (!(e >= 0.0 && e <= 1.0))
      throw InputError("rotor efficiency must lie in [0, 1]");
  Assembly out = assembly;
  for (Unit& u : out.units)
    if (u.id == unit_id) u.efficiency = efficiency;
  return out;
}

Assembly rotate_unit(const Assembly& assembly, int unit_id, int quarters) {
  assembly.unit_by_id(unit_id);  // existence check
  Assembly out = assembly;
  for (Unit& u : out.units)
    if (u.id == unit_id) u.yaw_quarter = ((u.yaw_quarter + quarters) % 4 + 4) % 4;
  return out;
}

}  // namespace mars
