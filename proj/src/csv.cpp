#include "mars/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace mars {

std::string format_number(double value) {
  // std::to_chars emits the shortest decimal string that parses back to the
  // same double, independent of locale.
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  row(columns);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  CsvWriter csv(out);
  csv.header({"case", "units", "cm", "controllable"});
  for (const SweepRow& r : rows) {
    std::string units;
    for (size_t i = 0; i < r.unit_ids.size(); ++i) {
      if (i) units += '+';
      units += std::to_string(r.unit_ids[i]);
    }
    csv.row({r.label, units, format_number(r.cm),
             r.controllable ? "true" : "false"});
  }
}

void write_plan_trace_csv(std::ostream& out, const ReconfigPlan& plan) {
  CsvWriter csv(out);
  csv.header({"step", "structure", "cm"});
  csv.row({"0", "2", format_number(plan.initial_cm)});
  int index = 0;
  for (const PlanStep& s : plan.steps) {
    ++index;
    const double values[3] = {s.cm_remainder, s.cm_moving, s.cm_after};
    for (int structure = 0; structure < 3; ++structure) {
      if (std::isnan(values[structure])) continue;
      csv.row({std::to_string(index), std::to_string(structure),
               format_number(values[structure])});
    }
  }
}

void write_sim_trace_csv(std::ostream& out, const SimResult& result) {
  CsvWriter csv(out);
  csv.header(
      {"t", "p_z", "phi", "theta", "psi", "v_z", "w_x", "w_y", "w_z"});
  for (const auto& row : result.trace) {
    std::vector<std::string> fields;
    fields.reserve(9);
    for (int i = 0; i < 9; ++i) fields.push_back(format_number(row(i)));
    csv.row(fields);
  }
}

}  // namespace mars
