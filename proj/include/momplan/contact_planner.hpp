/**
 * @file contact_planner.hpp
 * @license BSD-3-Clause
 * @copyright Copyright (c) 2026, Momentum Planner Developers.
 *
 * Mixed-integer contact planning: selects footstep positions, contact
 * orientations through a piecewise-affine sine/cosine model, terrain
 * regions and hand activations jointly with the coarse-grid momentum
 * dynamics.  Implications are realized with per-row big-M constants
 * derived from region bounding boxes and force caps; the mixed-integer
 * program is solved by best-bound branch-and-bound over the convex
 * relaxation, with an exhaustive enumeration oracle for small instances.
 */

#pragma once

#include <map>
#include <string>
#include <vector>

#include "momplan/contact_plan.hpp"
#include "momplan/pwa.hpp"
#include "momplan/qcqp_builder.hpp"
#include "momplan/scenario.hpp"
#include "momplan/trajectory.hpp"

namespace momplan {

/// Binary-variable metadata.  The rank is the branching tie-break order:
/// regions before sine pieces before cosine pieces before hand contacts.
enum class BinaryGroupKind { Region = 0, SinPiece = 1, CosPiece = 2, HandContact = 3 };

struct BinaryInfo {
  Eigen::Index var = -1;
  BinaryGroupKind kind = BinaryGroupKind::Region;
  int phase = -1;
  int choice = -1;  ///< region id / piece index / contact flag
  std::string effector;
};

/// Exactly-one cardinality group over binary variables.
struct BinaryGroup {
  std::vector<Eigen::Index> vars;
  std::string label;
};

/// A foot placement decided by the planner.
struct FootPlacement {
  std::string effector;
  int phase = -1;              ///< phase whose start lands the foot
  Eigen::Index position = -1;  ///< 3 vars
  std::vector<Eigen::Index> region_binaries;  ///< H, aligned with regions
};

/// Per-phase hand decision variables.
struct HandPhaseVars {
  Eigen::Index position = -1;                 ///< 3 vars
  Eigen::Index contact = -1;                  ///< J1
  Eigen::Index release = -1;                  ///< J2
  std::vector<Eigen::Index> region_binaries;  ///< H, aligned with regions
};

struct PlannerLayout {
  int phases = 0;
  int steps_per_phase = 0;
  std::vector<Eigen::Index> theta, sin_var, cos_var;  ///< per phase
  std::vector<std::vector<Eigen::Index>> sin_binaries, cos_binaries;
  std::vector<FootPlacement> placements;
  std::map<std::string, std::vector<HandPhaseVars>> hands;
  VariableLayout momentum;  ///< coarse-grid momentum core
};

struct MiqcqpProblem {
  QcqpProblem problem;  ///< binaries relaxed to [0,1]
  std::vector<BinaryInfo> binaries;
  std::vector<BinaryGroup> exactly_one;
  struct AtMostRow {
    std::vector<Eigen::Index> vars;
    int bound = 0;
    std::string label;
  };
  std::vector<AtMostRow> at_most;
  PlannerLayout layout;
  PwaApprox pwa;
  TimeGrid coarse_grid;

  /// Binaries that belong to a group with more than one choice.
  int freeBinaryCount() const;
};

/// Assembles the contact-planning MIQCQP over `phases` coarse phases.
/// Throws std::invalid_argument on inconsistent scenario data.
MiqcqpProblem buildContactMiqcqp(const Scenario& scenario, int phases);

struct BnbSettings {
  double mip_gap = 1e-6;   ///< proven relative optimality gap
  double int_tol = 1e-6;   ///< integrality tolerance on relaxed binaries
  int max_nodes = 20000;
  int threads = 1;         ///< batch-parallel node solves
  SolveSettings solve;
};

struct BnbResult {
  SolveStatus status = SolveStatus::NumericalError;
  double objective = 0.0;    ///< incumbent objective
  double bound = 0.0;        ///< proven lower bound
  double proven_gap = 0.0;   ///< relative gap at termination
  int nodes = 0;
  Solution solution;         ///< incumbent primal point (binaries integral)
};

/// Best-bound branch-and-bound with most-fractional branching; ties break
/// by group kind (regions, sine, cosine, hands) then lowest index.
/// Deterministic for any thread count.
BnbResult solveBranchAndBound(const MiqcqpProblem& problem,
                              const BnbSettings& settings = {});

/// Exhaustive enumeration over all cardinality-feasible assignments;
/// rejects instances with more than 20 free binaries.
BnbResult enumerateExact(const MiqcqpProblem& problem,
                         const SolveSettings& settings = {});

/// Decodes an integral solution into a fine-grid contact plan.  Throws if
/// any binary is fractional beyond `int_tol`.
ContactPlan decodeContactPlan(const MiqcqpProblem& problem,
                              const Scenario& scenario,
                              const Solution& solution,
                              double int_tol = 1e-6);

/// Coarse-grid trajectory of a planner solution (for reports and the
/// receding-horizon driver).
MomentumTrajectory extractCoarseTrajectory(const MiqcqpProblem& problem,
                                           const Scenario& scenario,
                                           const ContactPlan& coarse_plan,
                                           const Solution& solution);

/// Coarse-grid image of a decoded fine plan: one phase per planner phase
/// (used to re-verify planner solutions against the momentum core).
ContactPlan coarsePlanFromSolution(const MiqcqpProblem& problem,
                                   const Scenario& scenario,
                                   const Solution& solution,
                                   double int_tol = 1e-6);

}  // namespace momplan
