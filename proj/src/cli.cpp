#include "mars/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mars/csv.hpp"
#include "mars/errors.hpp"
#include "mars/json_io.hpp"
#include "mars/margin.hpp"
#include "mars/planner.hpp"
#include "mars/simulator.hpp"

namespace mars {
namespace {

// Writes through `sink` to the given file, or to stdout when the path is
// empty. Throws InputError if the file cannot be created.
void with_output(const std::string& path,
                 const std::function<void(std::ostream&)>& sink) {
  if (path.empty()) {
    sink(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot create " + path);
  sink(out);
  if (!out) throw InputError("write to " + path + " failed");
}

int detect_faulty_unit(const Assembly& assembly) {
  int found = -1;
  for (const Unit& u : assembly.units) {
    if (u.intact()) continue;
    if (found >= 0)
      throw PlanningError(
          "several faulty units present; pick one with --faulty");
    found = u.id;
  }
  if (found < 0) throw PlanningError("no faulty unit in the assembly");
  return found;
}

int do_analyze(const Params& params, const std::string& input,
               const std::string& output) {
  const Assembly assembly = load_assembly(input, params.geometry);
  const CmReport report = controllability_margin(assembly);
  with_output(output, [&](std::ostream& out) { write_json(out, to_json(report)); });
  return report.controllable ? 0 : 2;
}

int do_sweep(const Params& params, const std::string& input,
             const std::string& output) {
  const Assembly base = load_assembly(input, params.geometry);
  std::vector<SweepRow> rows;
  const std::array<double, kRotorsPerUnit> dead{0.0, 0.0, 0.0, 0.0};

  const CmReport whole = controllability_margin(base);
  rows.push_back({"intact", {}, whole.cm, whole.controllable});
  for (const Unit& u : base.units) {
    const CmReport r = controllability_margin(apply_fault(base, u.id, dead));
    rows.push_back({"single", {u.id}, r.cm, r.controllable});
  }
  for (size_t i = 0; i < base.units.size(); ++i)
    for (size_t j = i + 1; j < base.units.size(); ++j) {
      const int a = base.units[i].id;
      const int b = base.units[j].id;
      const CmReport r =
          controllability_margin(apply_fault(apply_fault(base, a, dead), b, dead));
      rows.push_back({"pair", {a, b}, r.cm, r.controllable});
    }
  with_output(output, [&](std::ostream& out) { write_sweep_csv(out, rows); });
  return 0;
}

int do_plan(const Params& params, const std::string& input,
            const std::string& mode, int faulty_option,
            const std::string& output, const std::string& trace) {
  const Assembly assembly = load_assembly(input, params.geometry);
  const int faulty =
      faulty_option > 0 ? faulty_option : detect_faulty_unit(assembly);
  ExactCmEvaluator evaluator;
  ReconfigPlan plan;
  if (mode == "full")
    plan = plan_full_sequence(assembly, faulty, evaluator);
  else if (mode == "partial")
    plan = plan_partial_sequence(assembly, faulty, evaluator);
  else if (mode == "baseline")
    plan = plan_baseline_sequence(assembly, faulty, evaluator);
  else
    throw InputError("mode must be full, partial, or baseline");
  with_output(output, [&](std::ostream& out) { write_json(out, to_json(plan)); });
  if (!trace.empty())
    with_output(trace,
                [&](std::ostream& out) { write_plan_trace_csv(out, plan); });
  return 0;
}

int do_simulate(const Params& params, const std::string& input,
                const std::string& believed_path, int repeat,
                unsigned long long seed, bool seed_given,
                const std::string& output, const std::string& trace) {
  if (repeat < 1) throw InputError("--repeat must be >= 1");
  const Assembly plant = load_assembly(input, params.geometry);
  const Assembly believed =
      believed_path.empty() ? plant : load_assembly(believed_path, params.geometry);
  SimConfig config = params.simulation;
  if (seed_given) config.seed = seed;

  std::vector<SimResult> results;
  results.reserve(repeat);
  for (int k = 0; k < repeat; ++k) {
    SimConfig run = config;
    run.seed = config.seed + static_cast<unsigned long long>(k);
    results.push_back(run_tracking(plant, believed, run));
  }

  nlohmann::json doc;
  if (repeat == 1) {
    doc = to_json(results.front());
  } else {
    nlohmann::json runs = nlohmann::json::array();
    double sum_h = 0.0;
    double sum_a = 0.0;
    int crashes = 0;
    for (const SimResult& r : results) {
      runs.push_back(to_json(r));
      sum_h += r.rmse_height;
      sum_a += r.rmse_attitude;
      crashes += r.crashed ? 1 : 0;
    }
    doc = nlohmann::json{{"runs", runs},
                         {"mean_rmse_height", sum_h / repeat},
                         {"mean_rmse_attitude", sum_a / repeat},
                         {"crashed_runs", crashes}};
  }
  with_output(output, [&](std::ostream& out) { write_json(out, doc); });
  if (!trace.empty())
    with_output(trace, [&](std::ostream& out) {
      write_sim_trace_csv(out, results.front());
    });
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "Controllability margins and fault-tolerant self-reconfiguration "
      "planning for modular aerial robot assemblies"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string params_path;
  app.add_option("--params", params_path,
                 "Parameters JSON file (geometry, regulator, simulation)")
      ->envname("MARS_PARAMS");

  std::string in_analyze, out_analyze;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Controllability margin of one assembly");
  analyze->add_option("-i,--input", in_analyze, "Assembly JSON file")
      ->required();
  analyze->add_option("-o,--output", out_analyze,
                      "Report JSON file (default: stdout)");

  std::string in_sweep, out_sweep;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Margin under every single and pairwise complete failure");
  sweep->add_option("-i,--input", in_sweep, "Assembly JSON file")->required();
  sweep->add_option("-o,--output", out_sweep, "CSV file (default: stdout)");

  std::string in_plan, out_plan, trace_plan, mode = "full";
  int faulty = 0;
  CLI::App* plan = app.add_subcommand(
      "plan", "Self-reconfiguration sequence around a faulty unit");
  plan->add_option("-i,--input", in_plan, "Assembly JSON file (with fault)")
      ->required();
  plan->add_option("-o,--output", out_plan, "Plan JSON file (default: stdout)");
  plan->add_option("-m,--mode", mode,
                   "Disassembly strategy: full, partial, or baseline");
  plan->add_option("--faulty", faulty,
                   "Faulty unit id (default: the single faulty unit)");
  plan->add_option("--trace", trace_plan, "Margin trace CSV file");

  std::string in_sim, believed, out_sim, trace_sim;
  int repeat = 1;
  unsigned long long seed = 0;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Closed-loop hover tracking of the (possibly faulted) plant");
  simulate->add_option("-i,--input", in_sim, "Plant assembly JSON file")
      ->required();
  simulate->add_option("--believed", believed,
                       "Assembly JSON the controller is designed for "
                       "(default: same as --input)");
  simulate->add_option("-o,--output", out_sim,
                       "Result JSON file (default: stdout)");
  simulate->add_option("-r,--repeat", repeat,
                       "Number of runs with consecutive seeds");
  CLI::Option* seed_opt =
      simulate->add_option("-s,--seed", seed, "Seed of the first run");
  simulate->add_option("--trace", trace_sim, "State trace CSV (first run)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const Params params =
        params_path.empty() ? Params{} : load_params(params_path);
    if (analyze->parsed()) return do_analyze(params, in_analyze, out_analyze);
    if (sweep->parsed()) return do_sweep(params, in_sweep, out_sweep);
    if (plan->parsed())
      return do_plan(params, in_plan, mode, faulty, out_plan, trace_plan);
    if (simulate->parsed())
      return do_simulate(params, in_sim, believed, repeat, seed,
                         seed_opt->count() > 0, out_sim, trace_sim);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const PlanningError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace mars
