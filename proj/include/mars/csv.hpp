#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mars/planner.hpp"
#include "mars/simulator.hpp"

namespace mars {

// Shortest round-trip decimal form ('.' separator, no locale); identical
// values always format to identical bytes.
std::string format_number(double value);

// Minimal CSV emitter: comma separator, LF line endings, header row first.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

// Margin sweep rows: case,units,cm,controllable ("units" joins ids with '+').
struct SweepRow {
  std::string label;
  std::vector<int> unit_ids;
  double cm = 0.0;
  bool controllable = false;
};
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// Margin trace of a plan: step,structure,cm. Structure 0 is the remainder
// left behind, 1 the piece in flight or hover, 2 the merged result.
void write_plan_trace_csv(std::ostream& out, const ReconfigPlan& plan);

// Simulation trace: t,p_z,phi,theta,psi,v_z,w_x,w_y,w_z.
void write_sim_trace_csv(std::ostream& out, const SimResult& result);

}  // namespace mars
