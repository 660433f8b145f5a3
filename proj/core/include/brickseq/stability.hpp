#pragma once

#include <cstddef>
#include <vector>

#include "brickseq/brick.hpp"
#include "brickseq/lp.hpp"

namespace brickseq {

struct PhysicsParams {
  double brick_weight_per_cell = 1.0;
  double clutch_tension_capacity = 10.0;  // T_max per stud contact
  double slack_penalty = 1e6;             // M
  double slack_tolerance = 1e-6;          // epsilon

  /// Throws Error(InvalidArgument) unless every field is finite and strictly positive.
  void validate() const;
};

/// A shared stud cell between a lower and an upper brick. `cell.z` is the upper layer.
struct StudContact {
  int lower = -1;
  int upper = -1;
  Cell3 cell;
  bool operator==(const StudContact&) const = default;
};

struct GroundContact {
  int brick = -1;
  Cell2 cell;
  bool operator==(const GroundContact&) const = default;
};

/// Stud contacts sorted by (upper layer, y, x); ground cells by (brick, footprint order).
std::vector<StudContact> stud_contacts(const BrickAssembly& assembly);
std::vector<GroundContact> ground_contacts(const BrickAssembly& assembly);

/// The elastic equilibrium program written out variable by variable.
///
/// Per contact a free force phi (positive pushes the upper brick up) with the tension
/// row phi + T_max * t >= 0; per ground cell psi >= 0; a shared scale t in [0, 1]; per
/// brick three free slacks (force, moment about x, moment about y) and three matching
/// absolute-value variables a >= |slack|. Objective: M * sum(a) + t.
struct EquilibriumProgram {
  lp::LinearProgram program;
  std::vector<StudContact> contacts;
  std::vector<GroundContact> ground;
  std::vector<int> contact_vars;
  std::vector<int> ground_vars;
  int scale_var = -1;
  std::vector<int> slack_vars;  // 3 per brick: force, moment x, moment y
  std::vector<int> abs_vars;    // same layout
};

EquilibriumProgram assemble_equilibrium_program(const BrickAssembly& assembly,
                                                const PhysicsParams& params = {});

struct StabilityReport {
  std::vector<double> scores;
  std::vector<StudContact> contacts;
  std::vector<double> contact_forces;
  std::vector<GroundContact> ground;
  std::vector<double> ground_forces;
  std::vector<double> brick_slack;  // largest absolute residual of the three equations
  std::vector<bool> grounded;       // component reaches z = 0
  double tension_scale = 0.0;       // t*
  bool feasible = true;
  int iterations = 0;

  double min_score() const;
};

/// Per-brick scores in [0, 1]. Bricks in components that never reach z = 0 score 0
/// without entering the program. Throws Error(SolverFailure) when the solver stops on
/// its iteration budget.
StabilityReport stability_scores(const BrickAssembly& assembly, const PhysicsParams& params = {});

/// Minimum score. Throws Error(EmptyAssembly) for an empty report.
double r_stable(const StabilityReport& report);

}  // namespace brickseq
