#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace mars {

inline constexpr double kGravity = 9.81;  // m/s^2
inline constexpr int kRotorsPerUnit = 4;

// Physical description of one modular unit. All units of an assembly share
// the same geometry; per-unit state (cell, yaw, rotor efficiencies) lives in
// Unit. Rotor offsets are expressed in the unit body frame, X configuration:
// rotors on the two diagonals, diagonal rotors share spin direction and the
// four spin signs sum to zero.
struct UnitGeometry {
  double arm_length = 0.1;        // m, rotor distance from unit center
  double cell_pitch = 0.3;        // m, lattice spacing between unit centers
  double thrust_max = 5.0;        // N, per-rotor upper thrust bound
  double torque_coeff = 0.05;     // m, yaw torque per unit thrust
  double unit_mass = 1.0;         // kg
  Eigen::Vector3d unit_inertia{0.01, 0.01, 0.02};  // kg m^2, body-diagonal

  // Rotor offsets in the unit frame and spin signs, index-aligned.
  std::array<Eigen::Vector2d, kRotorsPerUnit> rotor_offsets;
  std::array<double, kRotorsPerUnit> spin_signs{+1.0, -1.0, +1.0, -1.0};

  UnitGeometry();

  // Throws InputError if any physical constant is non-positive or the spin
  // signs do not sum to zero.
  void validate() const;
};

// One unit of the assembly. `yaw_quarter` counts quarter turns (0..3); the
// docking lattice only admits multiples of pi/2. `efficiency` holds the
// per-rotor thrust efficiency eta in [0, 1]; eta = 0 is a dead rotor and a
// unit with all four at zero is a complete failure (it keeps its mass).
struct Unit {
  int id = 0;
  Eigen::Vector2i cell{0, 0};
  int yaw_quarter = 0;
  std::array<double, kRotorsPerUnit> efficiency{1.0, 1.0, 1.0, 1.0};

  bool complete_failure() const {
    for (double e : efficiency)
      if (e > 0.0) return false;
    return true;
  }
  bool intact() const {
    for (double e : efficiency)
      if (e < 1.0) return false;
    return true;
  }
};

// A rigid lattice assembly of units. Invariants (enforced by build_assembly):
// unique ids, unique cells, 4-connected footprint, efficiencies in [0, 1],
// yaw in {0, 1, 2, 3}. Units are kept sorted by id.
struct Assembly {
  UnitGeometry geometry;
  std::vector<Unit> units;

  int unit_count() const { return static_cast<int>(units.size()); }
  int rotor_count() const { return unit_count() * kRotorsPerUnit; }
  const Unit& unit_by_id(int id) const;
  bool has_unit(int id) const;
  std::vector<int> failed_unit_ids() const;  // complete failures only
};

// Validates and normalizes the inputs into an Assembly. Throws InputError on
// duplicate ids or cells, a footprint that is not 4-connected, efficiency
// outside [0, 1], yaw outside {0..3}, or invalid geometry.
Assembly build_assembly(const UnitGeometry& geometry, std::vector<Unit> units);

// Returns a copy with the given unit's rotor efficiencies replaced.
// Throws InputError for an unknown id or a pattern outside [0, 1].
Assembly apply_fault(const Assembly& assembly, int unit_id,
                     const std::array<double, kRotorsPerUnit>& efficiency);

// Returns a copy with the given unit rotated by `quarters` additional
// quarter turns (any integer; stored modulo 4). Throws InputError for an
// unknown id.
Assembly rotate_unit(const Assembly& assembly, int unit_id, int quarters);

}  // namespace mars
