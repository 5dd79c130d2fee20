#include "mars/json_io.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "mars/errors.hpp"

namespace mars {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const char* where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object())
    throw InputError(std::string(where) + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* name : allowed)
      if (key == name) {
        ok = true;
        break;
      }
    if (!ok)
      throw InputError(std::string("unknown key \"") + key + "\" in " + where);
  }
}

double get_double(const json& obj, const char* key, const char* where) {
  const json& v = obj.at(key);
  if (!v.is_number())
    throw InputError(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, const char* where) {
  const json& v = obj.at(key);
  if (!v.is_number_integer())
    throw InputError(std::string(where) + "." + key + " must be an integer");
  return v.get<int>();
}

Eigen::Vector2i get_cell(const json& v, const char* where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer())
    throw InputError(std::string(where) +
                     " must be an [x, y] pair of integers");
  return {v[0].get<int>(), v[1].get<int>()};
}

std::array<double, kRotorsPerUnit> get_efficiency(const json& v,
                                                  const char* where) {
  if (!v.is_array() || v.size() != kRotorsPerUnit)
    throw InputError(std::string(where) +
                     " must list one efficiency per rotor");
  std::array<double, kRotorsPerUnit> out{};
  for (int i = 0; i < kRotorsPerUnit; ++i) {
    if (!v[i].is_number())
      throw InputError(std::string(where) + " entries must be numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

UnitGeometry parse_geometry(const json& obj, const UnitGeometry& defaults) {
  check_keys(obj, "geometry",
             {"arm_length", "cell_pitch", "thrust_max", "torque_coeff",
              "unit_mass", "unit_inertia", "rotor_offsets", "spin_signs"});
  UnitGeometry g = defaults;
  if (obj.contains("arm_length"))
    g.arm_length = get_double(obj, "arm_length", "geometry");
  if (obj.contains("cell_pitch"))
    g.cell_pitch = get_double(obj, "cell_pitch", "geometry");
  if (obj.contains("thrust_max"))
    g.thrust_max = get_double(obj, "thrust_max", "geometry");
  if (obj.contains("torque_coeff"))
    g.torque_coeff = get_double(obj, "torque_coeff", "geometry");
  if (obj.contains("unit_mass"))
    g.unit_mass = get_double(obj, "unit_mass", "geometry");
  if (obj.contains("unit_inertia")) {
    const json& v = obj.at("unit_inertia");
    if (!v.is_array() || v.size() != 3)
      throw InputError("geometry.unit_inertia must be [Jxx, Jyy, Jzz]");
    for (int i = 0; i < 3; ++i) {
      if (!v[i].is_number())
        throw InputError("geometry.unit_inertia entries must be numbers");
      g.unit_inertia(i) = v[i].get<double>();
    }
  }
  if (obj.contains("rotor_offsets")) {
    const json& v = obj.at("rotor_offsets");
    if (!v.is_array() || v.size() != kRotorsPerUnit)
      throw InputError("geometry.rotor_offsets must list one [x, y] per rotor");
    for (int i = 0; i < kRotorsPerUnit; ++i) {
      if (!v[i].is_array() || v[i].size() != 2 || !v[i][0].is_number() ||
          !v[i][1].is_number())
        throw InputError("geometry.rotor_offsets entries must be [x, y]");
      g.rotor_offsets[i] = {v[i][0].get<double>(), v[i][1].get<double>()};
    }
  }
  if (obj.contains("spin_signs")) {
    const json& v = obj.at("spin_signs");
    if (!v.is_array() || v.size() != kRotorsPerUnit)
      throw InputError("geometry.spin_signs must list one sign per rotor");
    for (int i = 0; i < kRotorsPerUnit; ++i) {
      if (!v[i].is_number())
        throw InputError("geometry.spin_signs entries must be numbers");
      g.spin_signs[i] = v[i].get<double>();
    }
  }
  return g;
}

json cell_to_json(const Eigen::Vector2i& c) {
  return json::array({c.x(), c.y()});
}

json finite_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

const char* kind_name(PlanStep::Kind kind) {
  switch (kind) {
    case PlanStep::Kind::Transfer:
      return "transfer";
    case PlanStep::Kind::BlockTransfer:
      return "block_transfer";
    case PlanStep::Kind::DetachToHover:
      return "detach_to_hover";
    case PlanStep::Kind::Reattach:
      return "reattach";
    case PlanStep::Kind::RepositionCore:
      return "reposition_core";
  }
  return "unknown";
}

}  // namespace

Assembly parse_assembly(const json& doc, const UnitGeometry& default_geometry) {
  check_keys(doc, "assembly", {"geometry", "grid", "units", "faults"});
  UnitGeometry geometry = default_geometry;
  if (doc.contains("geometry"))
    geometry = parse_geometry(doc.at("geometry"), default_geometry);

  if (doc.contains("grid") == doc.contains("units"))
    throw InputError("assembly needs exactly one of \"grid\" or \"units\"");

  std::vector<Unit> units;
  if (doc.contains("grid")) {
    const json& v = doc.at("grid");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer())
      throw InputError("assembly.grid must be [nx, ny] integers");
    const int nx = v[0].get<int>();
    const int ny = v[1].get<int>();
    if (nx < 1 || ny < 1)
      throw InputError("assembly.grid dimensions must be >= 1");
    // Row-major ids starting at 1, top row (highest y) first.
    for (int row = 0; row < ny; ++row)
      for (int col = 0; col < nx; ++col) {
        Unit u;
        u.id = row * nx + col + 1;
        u.cell = {col, ny - 1 - row};
        units.push_back(u);
      }
  } else {
    const json& list = doc.at("units");
    if (!list.is_array() || list.empty())
      throw InputError("assembly.units must be a non-empty list");
    for (const json& item : list) {
      check_keys(item, "unit", {"id", "cell", "yaw", "efficiency"});
      Unit u;
      u.id = get_int(item, "id", "unit");
      u.cell = get_cell(item.at("cell"), "unit.cell");
      if (item.contains("yaw")) u.yaw_quarter = get_int(item, "yaw", "unit");
      if (item.contains("efficiency"))
        u.efficiency = get_efficiency(item.at("efficiency"), "unit.efficiency");
      units.push_back(u);
    }
  }

  Assembly assembly = build_assembly(geometry, std::move(units));
  if (doc.contains("faults")) {
    const json& list = doc.at("faults");
    if (!list.is_array())
      throw InputError("assembly.faults must be a list");
    for (const json& item : list) {
      check_keys(item, "fault", {"unit", "efficiency"});
      const int id = get_int(item, "unit", "fault");
      assembly = apply_fault(
          assembly, id, get_efficiency(item.at("efficiency"),
                                       "fault.efficiency"));
    }
  }
  return assembly;
}

Assembly load_assembly(const std::string& path,
                       const UnitGeometry& default_geometry) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_assembly(doc, default_geometry);
}

Params parse_params(const json& doc) {
  check_keys(doc, "params", {"geometry", "regulator", "simulation"});
  Params p;
  if (doc.contains("geometry"))
    p.geometry = parse_geometry(doc.at("geometry"), UnitGeometry{});
  if (doc.contains("regulator")) {
    const json& obj = doc.at("regulator");
    check_keys(obj, "regulator", {"state", "control"});
    if (obj.contains("state"))
      p.regulator.state = get_double(obj, "state", "regulator");
    if (obj.contains("control"))
      p.regulator.control = get_double(obj, "control", "regulator");
  }
  if (doc.contains("simulation")) {
    const json& obj = doc.at("simulation");
    check_keys(obj, "simulation",
               {"dt", "duration", "record_stride", "height_step", "yaw_step",
                "noise_pos", "noise_att", "noise_rate", "seed", "crash_norm",
                "crash_tilt"});
    SimConfig& s = p.simulation;
    if (obj.contains("dt")) s.dt = get_double(obj, "dt", "simulation");
    if (obj.contains("duration"))
      s.duration = get_double(obj, "duration", "simulation");
    if (obj.contains("record_stride"))
      s.record_stride = get_int(obj, "record_stride", "simulation");
    if (obj.contains("height_step"))
      s.height_step = get_double(obj, "height_step", "simulation");
    if (obj.contains("yaw_step"))
      s.yaw_step = get_double(obj, "yaw_step", "simulation");
    if (obj.contains("noise_pos"))
      s.noise_pos = get_double(obj, "noise_pos", "simulation");
    if (obj.contains("noise_att"))
      s.noise_att = get_double(obj, "noise_att", "simulation");
    if (obj.contains("noise_rate"))
      s.noise_rate = get_double(obj, "noise_rate", "simulation");
    if (obj.contains("seed")) {
      const json& v = obj.at("seed");
      if (!v.is_number_unsigned() && !v.is_number_integer())
        throw InputError("simulation.seed must be an integer");
      s.seed = v.get<unsigned long long>();
    }
    if (obj.contains("crash_norm"))
      s.crash_norm = get_double(obj, "crash_norm", "simulation");
    if (obj.contains("crash_tilt"))
      s.crash_tilt = get_double(obj, "crash_tilt", "simulation");
  }
  p.simulation.weights = p.regulator;
  return p;
}

Params load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_params(doc);
}

json to_json(const CmReport& report) {
  return json{{"cm", report.cm},
              {"controllable", report.controllable},
              {"rank_ok", report.rank_ok},
              {"degenerate", report.degenerate}};
}

json to_json(const ReconfigPlan& plan) {
  json steps = json::array();
  for (const PlanStep& s : plan.steps) {
    json from = json::array();
    for (const auto& c : s.from_cells) from.push_back(cell_to_json(c));
    json to = json::array();
    for (const auto& c : s.to_cells) to.push_back(cell_to_json(c));
    json step{{"kind", kind_name(s.kind)},
              {"units", s.unit_ids},
              {"from", from},
              {"to", to},
              {"cm_remainder", finite_or_null(s.cm_remainder)},
              {"cm_moving", finite_or_null(s.cm_moving)},
              {"cm_after", finite_or_null(s.cm_after)}};
    if (s.yaw_quarter_after >= 0) step["yaw_after"] = s.yaw_quarter_after;
    steps.push_back(step);
  }
  json target_cells = json::array();
  for (const auto& c : plan.target_cells)
    target_cells.push_back(cell_to_json(c));
  return json{{"mode", plan.mode},
              {"target",
               json{{"cell", cell_to_json(plan.target.cell)},
                    {"yaw", plan.target.yaw_quarter},
                    {"cm", plan.target.cm}}},
              {"subassembly", plan.subassembly_ids},
              {"target_cells", target_cells},
              {"steps", steps},
              {"initial_cm", plan.initial_cm},
              {"final_cm", plan.final_cm},
              {"min_intermediate_cm", plan.min_intermediate_cm}};
}

json to_json(const SimResult& result) {
  json out{{"crashed", result.crashed},
           {"rmse_height", result.rmse_height},
           {"rmse_attitude", result.rmse_attitude},
           {"max_thrust_saturation", result.max_thrust_saturation},
           {"samples", result.trace.size()}};
  if (result.crashed) out["crash_time"] = result.crash_time;
  return out;
}

void write_json(std::ostream& out, const json& doc) {
  out << doc.dump(2) << '\n';
}

}  // namespace mars
