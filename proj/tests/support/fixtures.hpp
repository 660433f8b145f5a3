#pragma once

#include <cstdint>
#include <vector>

#include "brickseq/brick.hpp"
#include "brickseq/decode.hpp"
#include "brickseq/geometry.hpp"
#include "brickseq/rng.hpp"
#include "brickseq/stability.hpp"
#include "brickseq/token.hpp"

namespace brickseq::testing {

/// Grows a connected assembly brick by brick: a random existing brick, a random catalog
/// size, a random connector and anchor; placements that leave the workspace or collide
/// are retried. Stops at `bricks` or after too many failed attempts in a row.
BrickAssembly grow_random_assembly(Rng& rng, int bricks, int root_z = 0);

/// Replays a fixed token sequence; once the script runs out it only proposes EOP.
class ScriptedPolicy : public Policy {
 public:
  explicit ScriptedPolicy(TokenSequence script) : script_(std::move(script)) {}
  std::string name() const override { return "scripted"; }
  Brick propose_root(const VoxelGrid& target, Rng& rng) override;
  Action propose(const ProposalContext& context, Rng& rng) override;

 private:
  TokenSequence script_;
};

/// Exhaustive nearest-neighbor Chamfer distance.
double brute_force_chamfer(const PointCloud& p, const PointCloud& q);

/// Grids built cell by cell.
VoxelGrid column_target(int x, int y, int height);
VoxelGrid box_target(int x0, int y0, int z0, int dx, int dy, int dz);

/// Zero/positive classification from the program exactly as written (free slacks with
/// absolute-value rows, free contact forces with explicit tension rows), solved
/// independently of stability_scores. Floating components are zero.
std::vector<bool> classify_by_written_program(const BrickAssembly& assembly, const PhysicsParams& params = {});

/// Hand-derived equilibrium for structures where every brick above the ground rests on
/// exactly one stud. Such a brick is balanced iff the resultant of its own weight and
/// the weight carried by the bricks on top (acting at their contact studs) sits on its
/// supporting stud's center; one point force has no moment capacity, clutch or not. Ground bricks are balanced and floating
/// components are not. Throws std::invalid_argument for other structures.
std::vector<bool> single_stud_oracle(const BrickAssembly& assembly);

}  // namespace brickseq::testing
