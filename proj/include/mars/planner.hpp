#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mars/assembly.hpp"
#include "mars/margin.hpp"

namespace mars {

// Margin evaluations the planner needs, expressed as deltas against a base
// assembly so implementations may avoid materializing each candidate.
// `removed_ids` are unit ids deleted from `base`; each entry of `moved_to`
// re-docks one base unit (fault state preserved) at the given cell, with an
// optional new yaw. An id must appear in at most one of the two lists.
class CmEvaluator {
 public:
  virtual ~CmEvaluator() = default;

  struct Move {
    int unit_id = 0;
    Eigen::Vector2i cell{0, 0};
    int yaw_quarter = -1;  // -1 keeps the unit's current yaw
  };

  virtual double evaluate(const Assembly& base, std::span<const int> removed_ids,
                          std::span<const Move> moved_to) = 0;
  int calls() const { return calls_; }

 protected:
  int calls_ = 0;
};

// Materializes every candidate and runs the full margin computation.
class ExactCmEvaluator final : public CmEvaluator {
 public:
  double evaluate(const Assembly& base, std::span<const int> removed_ids,
                  std::span<const Move> moved_to) override;
};

// Constant-cost deterministic stand-in (always positive, varies with the
// argument hash) used to benchmark the search layer in isolation.
class UnitCostCmEvaluator final : public CmEvaluator {
 public:
  double evaluate(const Assembly& base, std::span<const int> removed_ids,
                  std::span<const Move> moved_to) override;
};

// Candidate placement of the faulty unit inside the footprint.
struct Placement {
  Eigen::Vector2i cell{0, 0};
  int yaw_quarter = 0;
  double cm = 0.0;
};

// Candidate positions for the faulty unit within the current footprint.
// Healthy units are interchangeable, so a placement determines the whole
// configuration. A complete failure is rotationally featureless: cells are
// deduplicated to one representative per footprint-symmetry orbit and yaw
// is kept. A partial failure breaks those symmetries, so every cell is
// scanned and refined over all four yaw orientations.
std::vector<Placement> enumerate_candidates(const Assembly& faulted,
                                            int faulty_id,
                                            CmEvaluator& evaluator);
Placement find_optimal_reconfiguration(const Assembly& faulted, int faulty_id,
                                       CmEvaluator& evaluator);

// Smallest connected unit group containing the faulty unit that is
// controllable on its own; among same-size groups the margin-maximizing one.
// Sizes are searched in ascending order up to unit_count - failed_count - 1
// inclusive; beyond that the search is declared infeasible (PlanningError).
struct Subassembly {
  std::vector<int> unit_ids;  // ascending
  double cm = 0.0;
};
Subassembly min_controllable_subassembly(const Assembly& faulted,
                                         CmEvaluator& evaluator);

struct PlanStep {
  enum class Kind {
    Transfer,        // one unit detaches, flies, docks at a target cell
    BlockTransfer,   // a rigid block detaches and docks as one piece
    DetachToHover,   // baseline only: piece detaches and holds position
    Reattach,        // baseline only: hovering piece docks onto the core
    RepositionCore,  // baseline only: the piece carrying the faulty unit moves
  };
  Kind kind = Kind::Transfer;
  std::vector<int> unit_ids;
  std::vector<Eigen::Vector2i> from_cells;
  std::vector<Eigen::Vector2i> to_cells;
  int yaw_quarter_after = -1;  // >= 0 only for an in-place re-yaw transfer
  double cm_remainder = 0.0;  // structure left behind while the piece is away
  double cm_moving = 0.0;     // the piece in flight / hover
  double cm_after = 0.0;      // merged structure after docking (NaN if none)
};

struct ReconfigPlan {
  std::string mode;  // "full", "partial", or "baseline"
  Placement target;
  std::vector<int> subassembly_ids;           // retained group (never moves)
  std::vector<Eigen::Vector2i> target_cells;  // final occupancy
  std::vector<PlanStep> steps;
  double initial_cm = 0.0;
  double final_cm = 0.0;
  double min_intermediate_cm = 0.0;  // over every remainder/moving/merged value
};

// Target-footprint cells currently free and edge-adjacent to the structure.
// Canonically ordered (top row first).
std::vector<Eigen::Vector2i> legal_transfer_targets(
    const std::vector<Eigen::Vector2i>& occupied,
    const std::vector<Eigen::Vector2i>& target);

// Full sequence: every unit outside the retained subassembly is transferred
// exactly once, greedily (detach the unit whose removal leaves the largest
// margin, dock where the merged margin is largest). Ties break on lowest
// unit id / earliest cell. Throws PlanningError if any remainder, moving
// piece, or merged structure would not be controllable.
ReconfigPlan plan_full_sequence(const Assembly& faulted, int faulty_id,
                                CmEvaluator& evaluator);

// Partial sequence: units outside the retained subassembly move as the
// largest rigid blocks whose shape fits the free target cells, minimizing
// the number of flights.
ReconfigPlan plan_partial_sequence(const Assembly& faulted, int faulty_id,
                                   CmEvaluator& evaluator);

// Margin-blind reference strategy: tear the assembly into row pieces (the
// faulty unit keeps one row neighbor as its carrier), repose the carrier so
// the faulty unit reaches its target cell, then rebuild the original
// footprint around it. Pieces hover concurrently, and margins are recorded
// but never enforced, so intermediate structures may be uncontrollable.
ReconfigPlan plan_baseline_sequence(const Assembly& faulted, int faulty_id,
                                    CmEvaluator& evaluator);

}  // namespace mars
