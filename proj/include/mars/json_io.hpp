#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "mars/assembly.hpp"
#include "mars/margin.hpp"
#include "mars/planner.hpp"
#include "mars/regulator.hpp"
#include "mars/simulator.hpp"

namespace mars {

// Runtime parameters bundled for the CLI. Every field mirrors the in-code
// defaults; params/default.json ships the same values.
struct Params {
  UnitGeometry geometry{};
  RegulatorWeights regulator{};
  SimConfig simulation{};
};

// Strict parsers: every unknown key is an InputError, as are wrong types,
// duplicate unit ids, overlapping cells, and out-of-range values.
//
// Assembly document:
//   {
//     "geometry": { ... any UnitGeometry field ... },        // optional
//     "grid": [nx, ny]      // row-major ids 1..nx*ny, top row first
//       or "units": [ {"id", "cell": [x, y], "yaw", "efficiency"} ],
//     "faults": [ {"unit": id, "efficiency": [e0..e3]} ]     // optional
//   }
Assembly parse_assembly(const nlohmann::json& doc,
                        const UnitGeometry& default_geometry = {});
Assembly load_assembly(const std::string& path,
                       const UnitGeometry& default_geometry = {});

// Params document: {"geometry": {...}, "regulator": {...}, "simulation": {...}}
Params parse_params(const nlohmann::json& doc);
Params load_params(const std::string& path);

nlohmann::json to_json(const CmReport& report);
nlohmann::json to_json(const ReconfigPlan& plan);
nlohmann::json to_json(const SimResult& result);

// Canonical serialization used for every file the CLI writes: two-space
// indent, sorted keys, trailing newline. Byte-stable for equal content.
void write_json(std::ostream& out, const nlohmann::json& doc);

}  // namespace mars
