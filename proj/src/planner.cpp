#include "mars/planner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "mars/errors.hpp"
#include "mars/symmetry.hpp"

namespace mars {
namespace {

using Cell = Eigen::Vector2i;

struct CellLess {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.x() != b.x()) return a.x() < b.x();
    return a.y() < b.y();
  }
};
using CellSet = std::set<Cell, CellLess>;

const Cell kDirs[4] = {Cell{1, 0}, Cell{-1, 0}, Cell{0, 1}, Cell{0, -1}};

std::vector<Cell> canonical_cells(const CellSet& cells) {
  std::vector<Cell> out(cells.begin(), cells.end());
  std::sort(out.begin(), out.end(), cell_before);
  return out;
}

bool same_cell(const Cell& a, const Cell& b) {
  return a.x() == b.x() && a.y() == b.y();
}

bool cells_equal(const CellSet& a, const CellSet& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  for (auto ib = b.begin(); ib != b.end(); ++ia, ++ib)
    if (!same_cell(*ia, *ib)) return false;
  return true;
}

bool set_connected(const CellSet& cells) {
  if (cells.empty()) return true;
  CellSet seen{*cells.begin()};
  std::vector<Cell> stack{*cells.begin()};
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    for (const Cell& d : kDirs) {
      Cell n = c + d;
      if (cells.count(n) && !seen.count(n)) {
        seen.insert(n);
        stack.push_back(n);
      }
    }
  }
  return seen.size() == cells.size();
}

// Cells whose removal disconnects the footprint (cut vertices of the
// 4-adjacency graph), found by one depth-first pass.
CellSet articulation_cells(const CellSet& cells) {
  CellSet cut;
  if (cells.size() < 3) return cut;
  std::map<Cell, int, CellLess> index;
  std::vector<Cell> order(cells.begin(), cells.end());
  for (size_t i = 0; i < order.size(); ++i) index[order[i]] = static_cast<int>(i);
  const int n = static_cast<int>(order.size());
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  // Iterative DFS from vertex 0 with child counting for the root rule.
  struct Frame {
    int v, parent, dir;
  };
  std::vector<Frame> stack{{0, -1, 0}};
  std::vector<int> root_children(1, 0);
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.dir < 4) {
      Cell nc = order[f.v] + kDirs[f.dir++];
      auto it = index.find(nc);
      if (it == index.end() || it->second == f.parent) continue;
      int u = it->second;
      if (disc[u] < 0) {
        disc[u] = low[u] = timer++;
        if (f.v == 0) ++root_children[0];
        stack.push_back({u, f.v, 0});
      } else {
        low[f.v] = std::min(low[f.v], disc[u]);
      }
    } else {
      int v = f.v, p = f.parent;
      stack.pop_back();
      if (p >= 0) {
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= disc[p]) cut.insert(order[p]);
      }
    }
  }
  if (root_children[0] > 1) cut.insert(order[0]);
  return cut;
}

std::int64_t cm_key(double cm) { return std::llround(cm * 1e9); }

bool is_nan(double v) { return std::isnan(v); }

void fold_min(double& acc, double v) {
  if (!is_nan(v) && v < acc) acc = v;
}

}  // namespace

double ExactCmEvaluator::evaluate(const Assembly& base,
                                  std::span<const int> removed_ids,
                                  std::span<const Move> moved_to) {
  ++calls_;
  std::set<int> skip(removed_ids.begin(), removed_ids.end());
  for (const Move& m : moved_to) skip.insert(m.unit_id);
  std::vector<Unit> units;
  units.reserve(base.units.size());
  for (const Unit& u : base.units)
    if (!skip.count(u.id)) units.push_back(u);
  for (const Move& m : moved_to) {
    Unit u = base.unit_by_id(m.unit_id);
    u.cell = m.cell;
    if (m.yaw_quarter >= 0) u.yaw_quarter = m.yaw_quarter;
    units.push_back(u);
  }
  Assembly candidate = build_assembly(base.geometry, std::move(units));
  return controllability_margin(candidate).cm;
}

double UnitCostCmEvaluator::evaluate(const Assembly& base,
                                     std::span<const int> removed_ids,
                                     std::span<const Move> moved_to) {
  ++calls_;
  // Cost must not depend on assembly size: hash only the delta description.
  std::uint64_t h = 1469598103934665603ull ^
                    static_cast<std::uint64_t>(base.units.size());
  auto mix = [&h](std::int64_t v) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) +
         (h >> 2);
  };
  for (int id : removed_ids) mix(id);
  for (const Move& m : moved_to) {
    mix(m.unit_id);
    mix(m.cell.x());
    mix(m.cell.y());
    mix(m.yaw_quarter);
  }
  return 0.5 + static_cast<double>(h % 4096u) / 4096.0;
}

std::vector<Placement> enumerate_candidates(const Assembly& faulted,
                                            int faulty_id,
                                            CmEvaluator& evaluator) {
  const Unit& faulty = faulted.unit_by_id(faulty_id);
  const bool complete = faulty.complete_failure();

  CellSet footprint;
  std::map<Cell, int, CellLess> occupant;
  for (const Unit& u : faulted.units) {
    footprint.insert(u.cell);
    occupant[u.cell] = u.id;
  }

  // A complete failure has no rotor asymmetry, so footprint-symmetric cells
  // are genuinely equivalent; a partial failure breaks mirror symmetry and
  // every cell must be scanned.
  std::vector<Cell> cand_cells;
  if (complete) {
    FootprintSymmetry sym(canonical_cells(footprint));
    CellSet reps;
    bool faulty_orbit_seen = false;
    for (const Cell& c : canonical_cells(footprint)) {
      Cell rep = sym.canonical(c);
      bool in_faulty_orbit = false;
      for (const Cell& img : sym.orbit(c))
        if (img.x() == faulty.cell.x() && img.y() == faulty.cell.y())
          in_faulty_orbit = true;
      if (in_faulty_orbit) {
        if (!faulty_orbit_seen) {
          // Represent the faulty unit's own orbit by its current cell so an
          // already-optimal configuration is reported as a fixed point.
          reps.insert(faulty.cell);
          faulty_orbit_seen = true;
        }
      } else {
        reps.insert(rep);
      }
    }
    cand_cells = canonical_cells(reps);
  } else {
    cand_cells = canonical_cells(footprint);
  }

  std::vector<int> yaws;
  if (complete)
    yaws = {faulty.yaw_quarter};
  else
    yaws = {0, 1, 2, 3};

  std::vector<Placement> out;
  for (const Cell& c : cand_cells) {
    for (int yaw : yaws) {
      std::vector<CmEvaluator::Move> moves;
      moves.push_back({faulty_id, c, yaw});
      if (c.x() != faulty.cell.x() || c.y() != faulty.cell.y()) {
        const int other = occupant.at(c);
        moves.push_back({other, faulty.cell, -1});
      }
      Placement p;
      p.cell = c;
      p.yaw_quarter = yaw;
      p.cm = evaluator.evaluate(faulted, {}, moves);
      out.push_back(p);
    }
  }
  return out;
}

Placement find_optimal_reconfiguration(const Assembly& faulted, int faulty_id,
                                       CmEvaluator& evaluator) {
  const Unit& faulty = faulted.unit_by_id(faulty_id);
  std::vector<Placement> cands = enumerate_candidates(faulted, faulty_id,
                                                      evaluator);
  if (cands.empty()) throw PlanningError("no candidate placements");
  auto manhattan = [&](const Placement& p) {
    return std::abs(p.cell.x() - faulty.cell.x()) +
           std::abs(p.cell.y() - faulty.cell.y());
  };
  // Margin first (1e-9 rounding), then the shortest move for the faulty
  // unit, then canonical cell order, then yaw. Candidates arrive in
  // deterministic order, so "strictly better" keeps the first of true ties.
  auto better = [&](const Placement& a, const Placement& b) {
    if (cm_key(a.cm) != cm_key(b.cm)) return cm_key(a.cm) > cm_key(b.cm);
    if (manhattan(a) != manhattan(b)) return manhattan(a) < manhattan(b);
    if (a.cell.x() != b.cell.x() || a.cell.y() != b.cell.y())
      return cell_before(a.cell, b.cell);
    return a.yaw_quarter < b.yaw_quarter;
  };
  Placement best = cands.front();
  for (size_t i = 1; i < cands.size(); ++i)
    if (better(cands[i], best)) best = cands[i];
  return best;
}

namespace {

// Every 4-connected unit subset containing `root`, each generated exactly
// once, sizes up to `max_size`; deterministic order (ascending ids at every
// branch point).
void enumerate_connected_subsets(
    const std::map<int, std::vector<int>>& adjacency, int root, int max_size,
    const std::function<void(const std::vector<int>&)>& sink) {
  std::vector<int> subset{root};
  std::set<int> in_subset{root};
  std::set<int> banned;
  std::function<void(const std::vector<int>&)> rec =
      [&](const std::vector<int>& frontier) {
        sink(subset);
        if (static_cast<int>(subset.size()) == max_size) return;
        std::vector<int> banned_here;
        for (size_t i = 0; i < frontier.size(); ++i) {
          const int v = frontier[i];
          subset.push_back(v);
          in_subset.insert(v);
          std::set<int> next(frontier.begin() + i + 1, frontier.end());
          for (int w : adjacency.at(v))
            if (!in_subset.count(w) && !banned.count(w)) next.insert(w);
          rec(std::vector<int>(next.begin(), next.end()));
          subset.pop_back();
          in_subset.erase(v);
          banned.insert(v);
          banned_here.push_back(v);
        }
        for (int v : banned_here) banned.erase(v);
      };
  std::vector<int> initial;
  for (int w : adjacency.at(root)) initial.push_back(w);
  std::sort(initial.begin(), initial.end());
  rec(initial);
}

std::map<int, std::vector<int>> unit_adjacency(const Assembly& assembly) {
  std::map<Cell, int, CellLess> occupant;
  for (const Unit& u : assembly.units) occupant[u.cell] = u.id;
  std::map<int, std::vector<int>> adj;
  for (const Unit& u : assembly.units) {
    auto& list = adj[u.id];
    for (const Cell& d : kDirs) {
      auto it = occupant.find(u.cell + d);
      if (it != occupant.end()) list.push_back(it->second);
    }
    std::sort(list.begin(), list.end());
  }
  return adj;
}

std::optional<Subassembly> search_subassembly(const Assembly& faulted,
                                              CmEvaluator& evaluator,
                                              const CellSet* required_within) {
  std::vector<int> faulty_ids;
  for (const Unit& u : faulted.units)
    if (!u.intact()) faulty_ids.push_back(u.id);
  if (faulty_ids.empty()) throw PlanningError("no fault present");
  const int n_units = faulted.unit_count();
  const int m_faults = static_cast<int>(faulty_ids.size());
  std::map<int, Cell, std::less<int>> cell_of;
  for (const Unit& u : faulted.units) cell_of[u.id] = u.cell;
  std::vector<int> all_ids;
  for (const Unit& u : faulted.units) all_ids.push_back(u.id);

  // With a placement constraint, prune at the graph level: only units whose
  // cells already lie inside the allowed region can ever join the subset.
  auto fits = [&](int id) {
    return !required_within || required_within->count(cell_of.at(id));
  };
  for (int f : faulty_ids)
    if (!fits(f)) return std::nullopt;
  auto adjacency = unit_adjacency(faulted);
  if (required_within) {
    std::map<int, std::vector<int>> restricted;
    for (auto& [id, list] : adjacency) {
      if (!fits(id)) continue;
      auto& out = restricted[id];
      for (int w : list)
        if (fits(w)) out.push_back(w);
    }
    adjacency = std::move(restricted);
  }

  // n functional units plus the faulty ones; the search gives up before the
  // retained group would swallow the whole assembly.
  for (int n_functional = 1; n_functional < n_units - m_faults;
       ++n_functional) {
    const int total = n_functional + m_faults;
    std::optional<Subassembly> best;
    enumerate_connected_subsets(
        adjacency, faulty_ids.front(), total,
        [&](const std::vector<int>& subset) {
          if (static_cast<int>(subset.size()) != total) return;
          for (int f : faulty_ids)
            if (std::find(subset.begin(), subset.end(), f) == subset.end())
              return;
          std::vector<int> removed;
          for (int id : all_ids)
            if (std::find(subset.begin(), subset.end(), id) == subset.end())
              removed.push_back(id);
          const double cm = evaluator.evaluate(faulted, removed, {});
          if (cm <= 0.0) return;
          if (!best || cm_key(cm) > cm_key(best->cm)) {
            Subassembly s;
            s.unit_ids = subset;
            std::sort(s.unit_ids.begin(), s.unit_ids.end());
            s.cm = cm;
            best = s;
          }
        });
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

Subassembly min_controllable_subassembly(const Assembly& faulted,
                                         CmEvaluator& evaluator) {
  auto found = search_subassembly(faulted, evaluator, nullptr);
  if (!found)
    throw PlanningError(
        "no controllable subassembly containing the faulty unit exists "
        "below the whole-assembly size");
  return *found;
}

std::vector<Cell> legal_transfer_targets(const std::vector<Cell>& occupied,
                                         const std::vector<Cell>& target) {
  CellSet occ(occupied.begin(), occupied.end());
  std::vector<Cell> out;
  for (const Cell& t : target) {
    if (occ.count(t)) continue;
    bool docks = false;
    for (const Cell& d : kDirs)
      if (occ.count(t + d)) {
        docks = true;
        break;
      }
    if (docks) out.push_back(t);
  }
  std::sort(out.begin(), out.end(), cell_before);
  return out;
}

namespace {

struct PlanContext {
  int faulty_id = 0;
  Placement target;             // analysis frame (original footprint)
  Subassembly sub;              // retained group, never moves
  CellSet target_cells;         // anchored so the faulty unit stays put
  std::vector<int> transfer_ids;  // everything outside the retained group
};

PlanContext make_context(const Assembly& faulted, int faulty_id,
                         CmEvaluator& evaluator) {
  for (const Unit& u : faulted.units)
    if (!u.intact() && u.id != faulty_id)
      throw PlanningError(
          "planning supports exactly one faulty unit; additional fault on "
          "unit " +
          std::to_string(u.id));
  const Unit& faulty = faulted.unit_by_id(faulty_id);
  if (faulty.intact())
    throw PlanningError("unit " + std::to_string(faulty_id) +
                        " has no fault to plan around");

  PlanContext ctx;
  ctx.faulty_id = faulty_id;
  ctx.target = find_optimal_reconfiguration(faulted, faulty_id, evaluator);

  // Anchor the target footprint on the faulty unit: it never flies, so the
  // shape is rebuilt around it until its relative position is the optimal
  // cell.
  const Cell delta = faulty.cell - ctx.target.cell;
  for (const Unit& u : faulted.units) ctx.target_cells.insert(u.cell + delta);

  // The retained group stays where it is, so it must already sit inside the
  // anchored target; choose the best subassembly that does.
  auto fitting = search_subassembly(faulted, evaluator, &ctx.target_cells);
  if (!fitting)
    throw PlanningError(
        "no controllable subassembly containing the faulty unit fits the "
        "target footprint");
  ctx.sub = *fitting;

  const std::set<int> retained(ctx.sub.unit_ids.begin(),
                               ctx.sub.unit_ids.end());
  for (const Unit& u : faulted.units)
    if (!retained.count(u.id)) ctx.transfer_ids.push_back(u.id);
  return ctx;
}

CellSet occupancy(const Assembly& assembly) {
  CellSet cells;
  for (const Unit& u : assembly.units) cells.insert(u.cell);
  return cells;
}

Assembly with_unit_at(const Assembly& assembly, int unit_id, const Cell& cell,
                      int yaw_quarter = -1) {
  Assembly out = assembly;
  for (Unit& u : out.units)
    if (u.id == unit_id) {
      u.cell = cell;
      if (yaw_quarter >= 0) u.yaw_quarter = yaw_quarter;
    }
  return out;
}

std::vector<int> complement_ids(const Assembly& assembly,
                                const std::set<int>& keep) {
  std::vector<int> out;
  for (const Unit& u : assembly.units)
    if (!keep.count(u.id)) out.push_back(u.id);
  return out;
}

// In-place re-orientation of the faulty unit (partial failures only): it
// detaches, rotates, and re-docks on its own cell, which is legal only when
// every one of the three coexisting stages is controllable.
void maybe_reorient_faulty(Assembly& current, const PlanContext& ctx,
                           CmEvaluator& evaluator, ReconfigPlan& plan) {
  const Unit& faulty = current.unit_by_id(ctx.faulty_id);
  if (ctx.target.yaw_quarter == faulty.yaw_quarter) return;

  CellSet rest = occupancy(current);
  rest.erase(faulty.cell);
  if (!set_connected(rest))
    throw PlanningError(
        "re-orienting the faulty unit would split the remaining structure");
  const std::vector<int> removed{ctx.faulty_id};
  const double cm_rem = evaluator.evaluate(current, removed, {});
  const double cm_mov = evaluator.evaluate(
      current, complement_ids(current, {ctx.faulty_id}), {});
  const std::vector<CmEvaluator::Move> re_yaw{
      {ctx.faulty_id, faulty.cell, ctx.target.yaw_quarter}};
  const double cm_aft = evaluator.evaluate(current, {}, re_yaw);
  if (cm_rem <= 0.0 || cm_mov <= 0.0 || cm_aft <= 0.0)
    throw PlanningError(
        "re-orienting the faulty unit is not controllable at every stage");

  PlanStep step;
  step.kind = PlanStep::Kind::Transfer;
  step.unit_ids = {ctx.faulty_id};
  step.from_cells = {faulty.cell};
  step.to_cells = {faulty.cell};
  step.yaw_quarter_after = ctx.target.yaw_quarter;
  step.cm_remainder = cm_rem;
  step.cm_moving = cm_mov;
  step.cm_after = cm_aft;
  plan.steps.push_back(step);
  current = with_unit_at(current, ctx.faulty_id, faulty.cell,
                         ctx.target.yaw_quarter);
}

void finalize_plan(ReconfigPlan& plan, const Assembly& final_assembly,
                   CmEvaluator& evaluator) {
  plan.final_cm = evaluator.evaluate(final_assembly, {}, {});
  double lo = std::min(plan.initial_cm, plan.final_cm);
  for (const PlanStep& s : plan.steps) {
    fold_min(lo, s.cm_remainder);
    fold_min(lo, s.cm_moving);
    fold_min(lo, s.cm_after);
  }
  plan.min_intermediate_cm = lo;
}

}  // namespace

ReconfigPlan plan_full_sequence(const Assembly& faulted, int faulty_id,
                                CmEvaluator& evaluator) {
  PlanContext ctx = make_context(faulted, faulty_id, evaluator);
  ReconfigPlan plan;
  plan.mode = "full";
  plan.target = ctx.target;
  plan.subassembly_ids = ctx.sub.unit_ids;
  plan.target_cells = canonical_cells(ctx.target_cells);
  plan.initial_cm = evaluator.evaluate(faulted, {}, {});

  Assembly current = faulted;
  maybe_reorient_faulty(current, ctx, evaluator, plan);

  std::vector<int> pending = ctx.transfer_ids;
  if (!cells_equal(occupancy(current), ctx.target_cells)) {
    while (!pending.empty()) {
      const CellSet occupied = occupancy(current);
      const CellSet cut = articulation_cells(occupied);

      struct Candidate {
        int id;
        double cm_rem;
      };
      std::vector<Candidate> removable;
      for (int id : pending) {
        const Cell c = current.unit_by_id(id).cell;
        if (cut.count(c)) continue;
        const std::vector<int> removed{id};
        removable.push_back({id, evaluator.evaluate(current, removed, {})});
      }
      if (removable.empty())
        throw PlanningError("structure cannot be disassembled further");
      std::stable_sort(removable.begin(), removable.end(),
                       [](const Candidate& a, const Candidate& b) {
                         if (cm_key(a.cm_rem) != cm_key(b.cm_rem))
                           return cm_key(a.cm_rem) > cm_key(b.cm_rem);
                         return a.id < b.id;
                       });

      bool placed = false;
      for (const Candidate& cand : removable) {
        if (cand.cm_rem <= 0.0) break;
        const Cell from = current.unit_by_id(cand.id).cell;
        CellSet after_detach = occupied;
        after_detach.erase(from);
        const std::vector<Cell> docks = legal_transfer_targets(
            canonical_cells(after_detach), plan.target_cells);
        if (docks.empty()) continue;

        Cell best_dock = docks.front();
        double best_cm = -std::numeric_limits<double>::infinity();
        for (const Cell& t : docks) {
          const std::vector<CmEvaluator::Move> move{{cand.id, t, -1}};
          const double cm = evaluator.evaluate(current, {}, move);
          if (cm_key(cm) > cm_key(best_cm)) {
            best_cm = cm;
            best_dock = t;
          }
        }
        if (best_cm <= 0.0) continue;
        const double cm_mov = evaluator.evaluate(
            current, complement_ids(current, {cand.id}), {});
        if (cm_mov <= 0.0) continue;

        PlanStep step;
        step.kind = PlanStep::Kind::Transfer;
        step.unit_ids = {cand.id};
        step.from_cells = {from};
        step.to_cells = {best_dock};
        step.cm_remainder = cand.cm_rem;
        step.cm_moving = cm_mov;
        step.cm_after = best_cm;
        plan.steps.push_back(step);

        current = with_unit_at(current, cand.id, best_dock);
        pending.erase(std::find(pending.begin(), pending.end(), cand.id));
        placed = true;
        break;
      }
      if (!placed)
        throw PlanningError(
            "no single-unit transfer keeps every structure controllable");
    }
  }
  finalize_plan(plan, current, evaluator);
  return plan;
}

ReconfigPlan plan_partial_sequence(const Assembly& faulted, int faulty_id,
                                   CmEvaluator& evaluator) {
  PlanContext ctx = make_context(faulted, faulty_id, evaluator);
  ReconfigPlan plan;
  plan.mode = "partial";
  plan.target = ctx.target;
  plan.subassembly_ids = ctx.sub.unit_ids;
  plan.target_cells = canonical_cells(ctx.target_cells);
  plan.initial_cm = evaluator.evaluate(faulted, {}, {});

  Assembly current = faulted;
  maybe_reorient_faulty(current, ctx, evaluator, plan);

  std::set<int> pending(ctx.transfer_ids.begin(), ctx.transfer_ids.end());
  if (cells_equal(occupancy(current), ctx.target_cells)) pending.clear();
  if (pending.size() > 12)
    throw PlanningError(
        "partial planning supports at most 12 transferring units");

  while (!pending.empty()) {
    const CellSet occupied = occupancy(current);
    std::map<int, Cell> cell_of;
    for (int id : pending) cell_of[id] = current.unit_by_id(id).cell;

    // Rigid candidate blocks: connected subsets of the still-moving units,
    // collected once per flight, examined largest-first.
    std::map<Cell, int, CellLess> movable_at;
    for (auto& [id, c] : cell_of) movable_at[c] = id;
    std::map<int, std::vector<int>> adj;
    for (auto& [id, c] : cell_of) {
      auto& list = adj[id];
      for (const Cell& d : kDirs) {
        auto it = movable_at.find(c + d);
        if (it != movable_at.end()) list.push_back(it->second);
      }
      std::sort(list.begin(), list.end());
    }
    std::vector<std::vector<std::vector<int>>> by_size(pending.size() + 1);
    std::set<int> done_roots;
    for (int root : pending) {
      // Restrict to ids above earlier roots so each subset appears once.
      std::map<int, std::vector<int>> sub_adj;
      for (auto& [id, list] : adj) {
        if (done_roots.count(id)) continue;
        auto& out = sub_adj[id];
        for (int w : list)
          if (!done_roots.count(w)) out.push_back(w);
      }
      enumerate_connected_subsets(
          sub_adj, root, static_cast<int>(pending.size()),
          [&](const std::vector<int>& subset) {
            by_size[subset.size()].push_back(subset);
          });
      done_roots.insert(root);
    }

    struct Flight {
      std::vector<int> ids;
      Cell shift;
      double cm_rem, cm_mov, cm_aft;
    };
    std::optional<Flight> chosen;
    for (int size = static_cast<int>(pending.size()); size >= 1 && !chosen;
         --size) {
      std::optional<Flight> best;
      for (const std::vector<int>& block : by_size[size]) {
        CellSet block_cells;
        for (int id : block) block_cells.insert(cell_of.at(id));
        CellSet rest = occupied;
        for (const Cell& c : block_cells) rest.erase(c);
        if (!set_connected(rest)) continue;

        std::set<int> block_set(block.begin(), block.end());
        const double cm_rem =
            evaluator.evaluate(current, std::vector<int>(block.begin(),
                                                         block.end()),
                               {});
        if (cm_rem <= 0.0) continue;
        const double cm_mov =
            evaluator.evaluate(current, complement_ids(current, block_set), {});
        if (cm_mov <= 0.0) continue;

        // Destinations: target cells free once the block lifts off.
        CellSet allowed;
        for (const Cell& t : ctx.target_cells)
          if (!rest.count(t)) allowed.insert(t);
        const Cell anchor = canonical_cells(block_cells).front();
        for (const Cell& dest : canonical_cells(allowed)) {
          const Cell shift = dest - anchor;
          bool fits = true;
          bool docks = false;
          for (const Cell& c : block_cells) {
            const Cell moved = c + shift;
            if (!allowed.count(moved)) {
              fits = false;
              break;
            }
            for (const Cell& d : kDirs)
              if (rest.count(moved + d)) docks = true;
          }
          if (!fits || !docks) continue;
          std::vector<CmEvaluator::Move> moves;
          for (int id : block) moves.push_back({id, cell_of.at(id) + shift, -1});
          const double cm_aft = evaluator.evaluate(current, {}, moves);
          if (cm_aft <= 0.0) continue;
          if (!best || cm_key(cm_aft) > cm_key(best->cm_aft))
            best = Flight{block, shift, cm_rem, cm_mov, cm_aft};
        }
      }
      if (best) chosen = best;
    }
    if (!chosen)
      throw PlanningError(
          "no block transfer keeps every structure controllable");

    PlanStep step;
    step.kind = PlanStep::Kind::BlockTransfer;
    step.unit_ids = chosen->ids;
    for (int id : chosen->ids) {
      step.from_cells.push_back(cell_of.at(id));
      step.to_cells.push_back(cell_of.at(id) + chosen->shift);
    }
    step.cm_remainder = chosen->cm_rem;
    step.cm_moving = chosen->cm_mov;
    step.cm_after = chosen->cm_aft;
    plan.steps.push_back(step);

    for (int id : chosen->ids) {
      current = with_unit_at(current, id, cell_of.at(id) + chosen->shift);
      pending.erase(id);
    }
  }
  finalize_plan(plan, current, evaluator);
  return plan;
}

ReconfigPlan plan_baseline_sequence(const Assembly& faulted, int faulty_id,
                                    CmEvaluator& evaluator) {
  for (const Unit& u : faulted.units)
    if (!u.intact() && u.id != faulty_id)
      throw PlanningError(
          "planning supports exactly one faulty unit; additional fault on "
          "unit " +
          std::to_string(u.id));
  const Unit& faulty = faulted.unit_by_id(faulty_id);
  if (faulty.intact())
    throw PlanningError("unit " + std::to_string(faulty_id) +
                        " has no fault to plan around");
  if (faulted.unit_count() < 2)
    throw PlanningError("baseline planning needs at least two units");

  const double nan = std::numeric_limits<double>::quiet_NaN();
  ReconfigPlan plan;
  plan.mode = "baseline";
  plan.target = find_optimal_reconfiguration(faulted, faulty_id, evaluator);
  plan.initial_cm = evaluator.evaluate(faulted, {}, {});

  CellSet footprint;
  std::map<Cell, int, CellLess> occupant;
  for (const Unit& u : faulted.units) {
    footprint.insert(u.cell);
    occupant[u.cell] = u.id;
  }
  plan.target_cells = canonical_cells(footprint);

  // Carrier: the faulty unit plus a same-row neighbor (lowest id), falling
  // back to any neighbor. Everything else pairs up left-to-right within
  // rows; leftovers fly single.
  int partner = -1;
  for (int dx : {-1, 1}) {
    auto it = occupant.find(faulty.cell + Cell{dx, 0});
    if (it != occupant.end() && (partner < 0 || it->second < partner))
      partner = it->second;
  }
  if (partner < 0)
    for (const Cell& d : kDirs) {
      auto it = occupant.find(faulty.cell + d);
      if (it != occupant.end() && (partner < 0 || it->second < partner))
        partner = it->second;
    }
  if (partner < 0) throw PlanningError("faulty unit has no neighbor");
  const std::vector<int> carrier =
      faulty_id < partner ? std::vector<int>{faulty_id, partner}
                          : std::vector<int>{partner, faulty_id};
  plan.subassembly_ids = carrier;

  std::set<int> assigned(carrier.begin(), carrier.end());
  std::vector<std::vector<int>> pieces;
  for (const Cell& c : canonical_cells(footprint)) {
    const int id = occupant.at(c);
    if (assigned.count(id)) continue;
    auto right = occupant.find(c + Cell{1, 0});
    if (right != occupant.end() && !assigned.count(right->second)) {
      pieces.push_back({id, right->second});
      assigned.insert(right->second);
    } else {
      pieces.push_back({id});
    }
    assigned.insert(id);
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return *std::min_element(a.begin(), a.end()) <
                     *std::min_element(b.begin(), b.end());
            });

  std::map<int, Cell> pos;
  for (const Unit& u : faulted.units) pos[u.id] = u.cell;
  int faulty_yaw = faulty.yaw_quarter;
  auto eval_group = [&](const std::vector<int>& ids) {
    std::set<int> keep(ids.begin(), ids.end());
    std::vector<CmEvaluator::Move> moves;
    for (int id : ids) {
      const Cell home = faulted.unit_by_id(id).cell;
      const int yaw = id == faulty_id && faulty_yaw != faulty.yaw_quarter
                          ? faulty_yaw
                          : -1;
      if (!same_cell(pos.at(id), home) || yaw >= 0)
        moves.push_back({id, pos.at(id), yaw});
    }
    return evaluator.evaluate(faulted, complement_ids(faulted, keep), moves);
  };

  std::vector<int> core(carrier);
  std::set<int> core_set(carrier.begin(), carrier.end());
  for (const Unit& u : faulted.units)
    if (!core_set.count(u.id)) {
      core.push_back(u.id);
      core_set.insert(u.id);
    }

  // Phase 1: peel every non-carrier piece off into hover.
  for (const std::vector<int>& piece : pieces) {
    for (int id : piece) {
      core.erase(std::find(core.begin(), core.end(), id));
      core_set.erase(id);
    }
    CellSet core_cells;
    for (int id : core) core_cells.insert(pos.at(id));
    if (!set_connected(core_cells))
      throw PlanningError("baseline detach order splits the core");

    PlanStep step;
    step.kind = PlanStep::Kind::DetachToHover;
    step.unit_ids = piece;
    for (int id : piece) step.from_cells.push_back(pos.at(id));
    step.cm_remainder = eval_group(core);
    step.cm_moving = eval_group(piece);
    step.cm_after = nan;
    plan.steps.push_back(step);
  }

  // Phase 2: the carrier repositions so the faulty unit reaches its cell.
  {
    const Cell shift = plan.target.cell - faulty.cell;
    PlanStep step;
    step.kind = PlanStep::Kind::RepositionCore;
    step.unit_ids = carrier;
    for (int id : carrier) {
      const Cell to = pos.at(id) + shift;
      if (!footprint.count(to))
        throw PlanningError("baseline carrier leaves the footprint");
      step.from_cells.push_back(pos.at(id));
      step.to_cells.push_back(to);
    }
    if (plan.target.yaw_quarter != faulty.yaw_quarter) {
      step.yaw_quarter_after = plan.target.yaw_quarter;
      faulty_yaw = plan.target.yaw_quarter;
    }
    for (size_t i = 0; i < carrier.size(); ++i) pos[carrier[i]] = step.to_cells[i];
    step.cm_remainder = nan;
    step.cm_moving = eval_group(carrier);
    step.cm_after = nan;
    plan.steps.push_back(step);
  }

  // Phase 3: re-dock the hovering pieces in detach order, each at the first
  // translation that fits the free cells and touches the core.
  for (const std::vector<int>& piece : pieces) {
    CellSet core_cells;
    for (int id : core) core_cells.insert(pos.at(id));
    CellSet free;
    for (const Cell& c : footprint)
      if (!core_cells.count(c)) free.insert(c);

    std::vector<Cell> shape;
    for (int id : piece) shape.push_back(pos.at(id));
    std::sort(shape.begin(), shape.end(), cell_before);
    const Cell anchor = shape.front();

    bool placed = false;
    for (const Cell& dest : canonical_cells(free)) {
      const Cell shift = dest - anchor;
      bool fits = true;
      bool docks = false;
      for (const Cell& c : shape) {
        if (!free.count(c + shift)) {
          fits = false;
          break;
        }
        for (const Cell& d : kDirs)
          if (core_cells.count(c + shift + d)) docks = true;
      }
      if (!fits || !docks) continue;

      PlanStep step;
      step.kind = PlanStep::Kind::Reattach;
      step.unit_ids = piece;
      step.cm_remainder = eval_group(core);
      step.cm_moving = eval_group(piece);
      for (int id : piece) {
        step.from_cells.push_back(pos.at(id));
        step.to_cells.push_back(pos.at(id) + shift);
        pos[id] = pos.at(id) + shift;
        core.push_back(id);
        core_set.insert(id);
      }
      step.cm_after = eval_group(core);
      plan.steps.push_back(step);
      placed = true;
      break;
    }
    if (!placed)
      throw PlanningError("baseline reassembly found no docking slot");
  }

  Assembly final_assembly = faulted;
  for (Unit& u : final_assembly.units) u.cell = pos.at(u.id);
  if (plan.target.yaw_quarter != faulty.yaw_quarter)
    final_assembly = rotate_unit(final_assembly, faulty_id,
                                 plan.target.yaw_quarter - faulty.yaw_quarter);
  finalize_plan(plan, final_assembly, evaluator);
  return plan;
}

}  // namespace mars
