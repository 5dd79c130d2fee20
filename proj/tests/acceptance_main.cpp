// Acceptance gate for the margin library, the reconfiguration planner, and
// the tracking simulator. Each criterion prints one [PASS]/[FAIL] line; the
// exit code is the number of failed criteria. Every tolerance is pinned
// below next to the behavior it guards.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "mars/assembly.hpp"
#include "mars/errors.hpp"
#include "mars/margin.hpp"
#include "mars/planner.hpp"
#include "mars/raycast.hpp"
#include "mars/simulator.hpp"
#include "mars/zonotope.hpp"

namespace {

using namespace mars;
using Clock = std::chrono::steady_clock;

// Strict-sign separation: a margin classified positive/negative must clear
// zero by this much, and strict orderings must be separated by it.
constexpr double kSignMargin = 1e-6;
// Margin invariance under footprint symmetries.
constexpr double kSymmetryTol = 1e-9;
// Interior facet distance vs the ray-cast upper bound at 4096 directions.
constexpr double kInteriorRelGap = 0.02;
// Exterior projection distance vs the independent projected-gradient solve.
constexpr double kProjectionRelTol = 1e-6;
// Two margins are "distinct" when separated by more than this.
constexpr double kDistinctTol = 1e-9;
// Wall-clock budgets (single core).
constexpr double kSweepBudgetSec = 10.0;
constexpr double kOracleBudgetSec = 60.0;
// Largest admissible fitted complexity exponent for the full-sequence
// planner with a constant-cost margin evaluator.
constexpr double kScalingSlopeMax = 4.3;

constexpr std::array<double, 4> kDead{0.0, 0.0, 0.0, 0.0};

double secs(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

Assembly grid(int nx, int ny) {
  std::vector<Unit> units;
  for (int row = 0; row < ny; ++row)
    for (int col = 0; col < nx; ++col) {
      Unit u;
      u.id = row * nx + col + 1;
      u.cell = {col, ny - 1 - row};
      units.push_back(u);
    }
  return build_assembly(UnitGeometry{}, std::move(units));
}

double cm_with_failures(const Assembly& base, std::initializer_list<int> ids) {
  Assembly a = base;
  for (int id : ids) a = apply_fault(a, id, kDead);
  return controllability_margin(a).cm;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// 1. Margin signs across the 3x2 failure classes, full pair sweep timed.

bool margin_sign_classes(std::string& note) {
  const Assembly base = grid(3, 2);
  const std::vector<std::pair<int, int>> positive_pairs = {
      {1, 6}, {3, 4}, {2, 5}, {1, 5}, {3, 5}, {2, 4}, {2, 6}};
  const std::vector<std::pair<int, int>> negative_pairs = {
      {1, 2}, {5, 6}, {2, 3}, {4, 5}, {1, 4}, {3, 6}, {1, 3}, {4, 6}};

  const auto t0 = Clock::now();
  bool ok = cm_with_failures(base, {}) > kSignMargin;
  for (int id = 1; id <= 6; ++id)
    ok = ok && cm_with_failures(base, {id}) > kSignMargin;
  for (auto [i, j] : positive_pairs)
    ok = ok && cm_with_failures(base, {i, j}) > kSignMargin;
  for (auto [i, j] : negative_pairs)
    ok = ok && cm_with_failures(base, {i, j}) < -kSignMargin;
  const double elapsed = secs(t0, Clock::now());

  ok = ok && elapsed < kSweepBudgetSec;
  note = fmt("22 cases in %.2fs", elapsed);
  return ok;
}

// ---------------------------------------------------------------------------
// 2. Margin orderings: intact > center loss > corner loss > 0, and the
//    positive pair classes order strictly above zero while every
//    adjacent-pair loss is negative.

bool margin_orderings(std::string& note) {
  const Assembly base = grid(3, 2);
  const double intact = cm_with_failures(base, {});
  double min_center = 1e300, max_center = -1e300;
  for (int id : {2, 5}) {
    const double c = cm_with_failures(base, {id});
    min_center = std::min(min_center, c);
    max_center = std::max(max_center, c);
  }
  double min_corner = 1e300, max_corner = -1e300;
  for (int id : {1, 3, 4, 6}) {
    const double c = cm_with_failures(base, {id});
    min_corner = std::min(min_corner, c);
    max_corner = std::max(max_corner, c);
  }
  double min_opposite = 1e300;
  for (auto [i, j] : {std::pair{1, 6}, {3, 4}, {2, 5}})
    min_opposite = std::min(min_opposite, cm_with_failures(base, {i, j}));
  double max_diagonal = -1e300, min_diagonal = 1e300;
  for (auto [i, j] : {std::pair{1, 5}, {3, 5}, {2, 4}, {2, 6}}) {
    const double c = cm_with_failures(base, {i, j});
    max_diagonal = std::max(max_diagonal, c);
    min_diagonal = std::min(min_diagonal, c);
  }
  double max_adjacent = -1e300;
  for (auto [i, j] : {std::pair{1, 2}, {2, 3}, {4, 5}, {5, 6}, {1, 4}, {3, 6}})
    max_adjacent = std::max(max_adjacent, cm_with_failures(base, {i, j}));

  const bool ok = intact - max_center >= kSignMargin &&
                  min_center - max_corner >= kSignMargin &&
                  min_corner >= kSignMargin &&
                  min_opposite - max_diagonal >= kSignMargin &&
                  min_diagonal >= kSignMargin &&
                  max_adjacent <= -kSignMargin;
  note = fmt("intact %.3f > center %.3f > corner %.3f", intact, max_center,
             max_corner);
  return ok;
}

// ---------------------------------------------------------------------------
// 3. Single-rotor failures: all survivable, all below intact, and the four
//    rotor positions do not collapse to one value.

bool rotor_failure_margins(std::string& note) {
  const Assembly base = grid(3, 2);
  const double intact = cm_with_failures(base, {});
  std::vector<double> margins;
  bool ok = true;
  for (int rotor = 0; rotor < kRotorsPerUnit; ++rotor) {
    std::array<double, 4> eff{1.0, 1.0, 1.0, 1.0};
    eff[rotor] = 0.0;
    const double c = controllability_margin(apply_fault(base, 1, eff)).cm;
    ok = ok && c > kSignMargin && c < intact - kSignMargin;
    margins.push_back(c);
  }
  std::sort(margins.begin(), margins.end());
  int distinct = 1;
  for (size_t i = 1; i < margins.size(); ++i)
    if (margins[i] - margins[i - 1] > kDistinctTol) ++distinct;
  ok = ok && distinct >= 2;
  note = fmt("4 margins in [%.4f, %.4f], ", margins.front(), margins.back()) +
         std::to_string(distinct) + " distinct";
  return ok;
}

// ---------------------------------------------------------------------------
// 4. Distance computations vs independent oracles on 200 random wrench sets.
//    Interior: the facet-enumeration distance must lower-bound the ray-cast
//    estimate and agree within 2%. Exterior: the active-set projection must
//    match an accelerated projected-gradient solve to 1e-6 relative.

double projected_gradient_distance(
    const Eigen::Matrix<double, 4, Eigen::Dynamic>& A, const Eigen::Vector4d& b,
    const Eigen::VectorXd& upper) {
  const int n = static_cast<int>(A.cols());
  const Eigen::MatrixXd gram = A.transpose() * A;
  const double step = 1.0 / gram.operatorNorm();
  Eigen::VectorXd t = Eigen::VectorXd::Zero(n), y = t, t_prev = t;
  double theta = 1.0;
  for (int it = 0; it < 50000; ++it) {
    const Eigen::VectorXd grad = A.transpose() * (A * y - b);
    t_prev = t;
    t = (y - step * grad).cwiseMax(0.0).cwiseMin(upper);
    const double theta_next =
        0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    y = t + ((theta - 1.0) / theta_next) * (t - t_prev);
    theta = theta_next;
    if (it % 64 == 0 && (t - t_prev).lpNorm<Eigen::Infinity>() < 1e-14) break;
  }
  return (A * t - b).norm();
}

bool set_distance_oracles(std::string& note) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst_gap = 0.0, worst_proj = 0.0;
  bool ok = true;
  const auto t0 = Clock::now();
  for (int trial = 0; trial < 200; ++trial) {
    const int g = 4 + static_cast<int>(u01(rng) * 9);  // 4..12 generators
    WrenchMap map;
    Zonotope z;
    do {
      map.columns.resize(4, g);
      for (int j = 0; j < g; ++j)
        for (int i = 0; i < 4; ++i) map.columns(i, j) = 2.0 * u01(rng) - 1.0;
      map.thrust_max = Eigen::VectorXd::NullaryExpr(
          g, [&](Eigen::Index) { return 0.5 + 1.5 * u01(rng); });
      z = control_set(map);
    } while (z.rank() < 4);

    Eigen::Vector4d p = z.center;
    for (int j = 0; j < z.generator_count(); ++j)
      p += (1.2 * u01(rng) - 0.6) * z.generators.col(j);
    const double facet = interior_distance(z, p);
    const double ray = raycast_distance_oracle(map, p, 4096);
    ok = ok && facet <= ray + 1e-9;
    worst_gap = std::max(worst_gap, (ray - facet) / ray);

    Eigen::Vector4d dir;
    for (int i = 0; i < 4; ++i) dir(i) = 2.0 * u01(rng) - 1.0;
    dir.normalize();
    const Eigen::Vector4d q = (z.support(dir) + 0.1 + 1.9 * u01(rng)) * dir;
    const double proj = project_onto_set(map, q).distance;
    const double ref =
        projected_gradient_distance(map.columns, q, map.thrust_max);
    worst_proj =
        std::max(worst_proj, std::abs(proj - ref) / std::max(1.0, ref));
  }
  const double elapsed = secs(t0, Clock::now());
  ok = ok && worst_gap <= kInteriorRelGap && worst_proj <= kProjectionRelTol &&
       elapsed < kOracleBudgetSec;
  note = fmt("worst gap %.2f%%, worst proj err %.1e, %.1fs", 100.0 * worst_gap,
             worst_proj, elapsed);
  return ok;
}

// ---------------------------------------------------------------------------
// 5. The hover-linearized pair (A, B) is controllable for any valid
//    assembly, whatever its shape, constants, yaws, or fault pattern.

bool rank_of_randomized_assemblies(std::string& note) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int passed = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(u01(rng) * 9);
    std::vector<Eigen::Vector2i> cells{{0, 0}};
    while (static_cast<int>(cells.size()) < n) {
      const Eigen::Vector2i& seed =
          cells[static_cast<size_t>(u01(rng) * cells.size())];
      const int d = static_cast<int>(u01(rng) * 4);
      const Eigen::Vector2i step = d == 0   ? Eigen::Vector2i{1, 0}
                                   : d == 1 ? Eigen::Vector2i{-1, 0}
                                   : d == 2 ? Eigen::Vector2i{0, 1}
                                            : Eigen::Vector2i{0, -1};
      const Eigen::Vector2i cand = seed + step;
      const bool taken =
          std::any_of(cells.begin(), cells.end(), [&](const Eigen::Vector2i& c) {
            return c.x() == cand.x() && c.y() == cand.y();
          });
      if (!taken) cells.push_back(cand);
    }
    UnitGeometry geom;
    geom.arm_length = 0.05 + 0.07 * u01(rng);
    geom.cell_pitch = 0.25 + 0.25 * u01(rng);
    geom.thrust_max = 1.0 + 9.0 * u01(rng);
    geom.torque_coeff = 0.01 + 0.09 * u01(rng);
    geom.unit_mass = 0.3 + 2.7 * u01(rng);
    geom.unit_inertia = Eigen::Vector3d::NullaryExpr(
        3, [&](Eigen::Index) { return 0.005 + 0.045 * u01(rng); });
    std::vector<Unit> units;
    for (int i = 0; i < n; ++i) {
      Unit u;
      u.id = i + 1;
      u.cell = cells[i];
      u.yaw_quarter = static_cast<int>(u01(rng) * 4) % 4;
      for (double& e : u.efficiency) e = (u01(rng) < 0.3) ? 0.0 : u01(rng);
      units.push_back(u);
    }
    const Assembly a = build_assembly(geom, std::move(units));
    if (rank_condition(linear_model(aggregate_rigid_body(a)))) ++passed;
  }
  note = std::to_string(passed) + " of 50 assemblies full-rank";
  return passed == 50;
}

// ---------------------------------------------------------------------------
// 6. Margin invariance under the footprint symmetries. A mirrored assembly
//    is built explicitly: cells mirrored, reflections invert yaw and swap
//    rotor slots across the mirror axis, a half turn advances yaw by two
//    quarters with slots unchanged.

struct FootprintMap {
  std::array<int, 4> slot;  // image slot of each rotor index
  bool reflect = false;     // reflections invert yaw, rotations advance it
  bool flip_x = false;
  bool flip_y = false;
};

Assembly transformed_assembly(const Assembly& base, int nx, int ny,
                              const FootprintMap& f) {
  std::vector<Unit> units;
  for (const Unit& u : base.units) {
    Unit v = u;
    v.cell = {f.flip_x ? nx - 1 - u.cell.x() : u.cell.x(),
              f.flip_y ? ny - 1 - u.cell.y() : u.cell.y()};
    v.yaw_quarter = f.reflect ? (4 - u.yaw_quarter) % 4
                              : (u.yaw_quarter + 2) % 4;
    for (int i = 0; i < kRotorsPerUnit; ++i)
      v.efficiency[f.slot[i]] = u.efficiency[i];
    units.push_back(v);
  }
  return build_assembly(base.geometry, std::move(units));
}

bool margin_symmetry_invariance(std::string& note) {
  const FootprintMap mirror_x{{1, 0, 3, 2}, true, true, false};
  const FootprintMap mirror_y{{3, 2, 1, 0}, true, false, true};
  const FootprintMap half_turn{{0, 1, 2, 3}, false, true, true};
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int nx = 3, ny = (trial % 2) ? 3 : 2;
    Assembly a = grid(nx, ny);
    for (Unit& u : a.units) {
      u.yaw_quarter = static_cast<int>(u01(rng) * 4) % 4;
      for (double& e : u.efficiency) e = (u01(rng) < 0.35) ? 0.0 : u01(rng);
    }
    a = build_assembly(a.geometry, a.units);
    const double c0 = controllability_margin(a).cm;
    for (const FootprintMap& f : {mirror_x, mirror_y, half_turn}) {
      const double c1 =
          controllability_margin(transformed_assembly(a, nx, ny, f)).cm;
      worst = std::max(worst, std::abs(c1 - c0));
    }
  }
  note = fmt("worst |margin drift| %.2e", worst);
  return worst <= kSymmetryTol;
}

// ---------------------------------------------------------------------------
// 7. Planned sequences on a 3x3 with one complete failure: the full and
//    partial modes keep every intermediate structure controllable, the
//    margin-blind baseline does not.

bool staged_plans_stay_controllable(std::string& note) {
  const Assembly faulted = apply_fault(grid(3, 3), 8, kDead);
  ExactCmEvaluator evaluator;
  const ReconfigPlan full = plan_full_sequence(faulted, 8, evaluator);
  const ReconfigPlan partial = plan_partial_sequence(faulted, 8, evaluator);
  const ReconfigPlan baseline = plan_baseline_sequence(faulted, 8, evaluator);
  const bool ok = full.min_intermediate_cm > kSignMargin &&
                  partial.min_intermediate_cm > kSignMargin &&
                  baseline.min_intermediate_cm < -kSignMargin;
  note = fmt("min margins: full %.3f, partial %.3f, baseline %.3f",
             full.min_intermediate_cm, partial.min_intermediate_cm,
             baseline.min_intermediate_cm);
  return ok;
}

// ---------------------------------------------------------------------------
// 8. Flight counts on the same instance: the block-transfer mode needs 2,
//    the one-unit-at-a-time mode 6, the tear-down-and-rebuild baseline 11.

bool plan_step_counts(std::string& note) {
  const Assembly faulted = apply_fault(grid(3, 3), 8, kDead);
  ExactCmEvaluator evaluator;
  const size_t n_partial = plan_partial_sequence(faulted, 8, evaluator).steps.size();
  const size_t n_full = plan_full_sequence(faulted, 8, evaluator).steps.size();
  const size_t n_baseline =
      plan_baseline_sequence(faulted, 8, evaluator).steps.size();
  note = "partial " + std::to_string(n_partial) + ", full " +
         std::to_string(n_full) + ", baseline " + std::to_string(n_baseline);
  return n_partial == 2 && n_full == 6 && n_baseline == 11;
}

// ---------------------------------------------------------------------------
// 9. A dead corner unit on the 3x2 is always re-targeted to a center-column
//    cell, and the full sequence adopts the same target.

bool corner_failure_targets_center(std::string& note) {
  bool ok = true;
  for (int corner : {1, 3, 4, 6}) {
    const Assembly faulted = apply_fault(grid(3, 2), corner, kDead);
    ExactCmEvaluator evaluator;
    const Placement p = find_optimal_reconfiguration(faulted, corner, evaluator);
    ok = ok && p.cell.x() == 1;  // center column of the 3x2 footprint
  }
  const Assembly faulted = apply_fault(grid(3, 2), 3, kDead);
  ExactCmEvaluator evaluator;
  const ReconfigPlan plan = plan_full_sequence(faulted, 3, evaluator);
  ok = ok && plan.target.cell.x() == 1;
  note = fmt("unit 3 target (%g, %g)", plan.target.cell.x(),
             plan.target.cell.y());
  return ok;
}

// ---------------------------------------------------------------------------
// 10. Closed-loop tracking over 10 seeded runs per scenario: a healthy
//     assembly tracks at least as well as the reconfigured one, which beats
//     flying faulted with a fault-aware controller, and a fault-unaware
//     controller on the faulted assembly crashes (or degrades by an order
//     of magnitude).

Assembly apply_plan_steps(const Assembly& start, const ReconfigPlan& plan) {
  std::vector<Unit> units = start.units;
  auto unit_ref = [&units](int id) -> Unit& {
    for (Unit& u : units)
      if (u.id == id) return u;
    throw PlanningError("plan references an unknown unit");
  };
  for (const PlanStep& step : plan.steps) {
    if (step.kind != PlanStep::Kind::Transfer &&
        step.kind != PlanStep::Kind::BlockTransfer)
      continue;
    for (size_t i = 0; i < step.unit_ids.size(); ++i)
      unit_ref(step.unit_ids[i]).cell = step.to_cells[i];
    if (step.yaw_quarter_after >= 0 && step.unit_ids.size() == 1)
      unit_ref(step.unit_ids[0]).yaw_quarter = step.yaw_quarter_after;
  }
  return build_assembly(start.geometry, std::move(units));
}

bool tracking_error_ordering(std::string& note) {
  const Assembly normal = grid(3, 2);
  const Assembly faulted = apply_fault(normal, 3, kDead);
  ExactCmEvaluator evaluator;
  const ReconfigPlan plan = plan_full_sequence(faulted, 3, evaluator);
  const Assembly reconfigured = apply_plan_steps(faulted, plan);

  struct Scenario {
    const Assembly* plant;
    const Assembly* believed;
    double aggregate = 0.0;
    int crashes = 0;
  };
  Scenario scenarios[4] = {{&normal, &normal},
                           {&reconfigured, &reconfigured},
                           {&faulted, &faulted},
                           {&faulted, &normal}};
  SimConfig config;  // shipped defaults
  for (Scenario& s : scenarios) {
    double sum = 0.0;
    for (unsigned long long seed = 1; seed <= 10; ++seed) {
      config.seed = seed;
      const SimResult r = run_tracking(*s.plant, *s.believed, config);
      sum += r.rmse_height + r.rmse_attitude;
      if (r.crashed) ++s.crashes;
    }
    s.aggregate = sum / 10.0;
  }
  const auto& [nom, rec, ftc, blind] = scenarios;
  const bool ok = nom.crashes == 0 && rec.crashes == 0 && ftc.crashes == 0 &&
                  nom.aggregate <= rec.aggregate &&
                  rec.aggregate < ftc.aggregate &&
                  ftc.aggregate < blind.aggregate &&
                  (blind.crashes == 10 || blind.aggregate >= 10.0 * rec.aggregate);
  note = fmt("errors %.4f <= %.4f < %.4f", nom.aggregate, rec.aggregate,
             ftc.aggregate) +
         fmt(" < %.4f (%g/10 crashed)", blind.aggregate, blind.crashes);
  return ok;
}

// ---------------------------------------------------------------------------
// 11. Full-sequence planning cost with a constant-cost margin evaluator
//     scales polynomially in the unit count: fitted log-log slope <= 4.3
//     across k x k grids, k = 2..6.

bool planner_scaling_exponent(std::string& note) {
  std::vector<double> log_n, log_t;
  for (int k = 2; k <= 6; ++k) {
    Assembly a = grid(k, k);
    const int faulty = (k - 1) * k + 2;  // the unit at cell (1, 0)
    a = apply_fault(a, faulty, kDead);
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      int iters = 0;
      const auto t0 = Clock::now();
      double elapsed = 0.0;
      do {
        UnitCostCmEvaluator evaluator;
        const ReconfigPlan plan = plan_full_sequence(a, faulty, evaluator);
        (void)plan;
        ++iters;
        elapsed = secs(t0, Clock::now());
      } while (elapsed < 0.02);
      best = std::min(best, elapsed / iters);
    }
    log_n.push_back(std::log(static_cast<double>(k * k)));
    log_t.push_back(std::log(best));
  }
  const double n = static_cast<double>(log_n.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < log_n.size(); ++i) {
    sx += log_n[i];
    sy += log_t[i];
    sxx += log_n[i] * log_n[i];
    sxy += log_n[i] * log_t[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  note = fmt("fitted exponent %.2f (budget %.1f)", slope, kScalingSlopeMax);
  return slope <= kScalingSlopeMax;
}

struct Criterion {
  const char* name;
  const char* intent;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"margin_sign_classes",
       "3x2 failure classes carry the expected margin signs", margin_sign_classes},
      {"margin_orderings",
       "margins order by failure severity and placement", margin_orderings},
      {"rotor_failure_margins",
       "single-rotor failures stay controllable below intact", rotor_failure_margins},
      {"set_distance_oracles",
       "distances agree with ray-cast and projected-gradient oracles",
       set_distance_oracles},
      {"rank_of_randomized_assemblies",
       "hover model is controllable for random valid assemblies",
       rank_of_randomized_assemblies},
      {"margin_symmetry_invariance",
       "margin is invariant under footprint symmetries", margin_symmetry_invariance},
      {"staged_plans_stay_controllable",
       "planned sequences keep intermediate structures controllable",
       staged_plans_stay_controllable},
      {"plan_step_counts",
       "flight counts: partial 2, full 6, baseline 11", plan_step_counts},
      {"corner_failure_targets_center",
       "dead corner unit is re-targeted to the center column",
       corner_failure_targets_center},
      {"tracking_error_ordering",
       "tracking error orders healthy <= reconfigured < faulted < blind",
       tracking_error_ordering},
      {"planner_scaling_exponent",
       "planner cost grows polynomially with unit count", planner_scaling_exponent},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool passed = false;
    try {
      passed = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!passed) ++failures;
    std::printf("[%s] %s - %s (%s)\n", passed ? "PASS" : "FAIL", c.name,
                c.intent, detail.c_str());
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures;
}
