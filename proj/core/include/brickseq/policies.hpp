#pragma once

#include <string>

#include "brickseq/decode.hpp"

namespace brickseq {

/// Uniform over every tuple that passes the stage-1 checks, plus EOP as one more action.
/// Roots are uniform over in-bounds placements on the ground layer. Ignores the target
/// and the temperature.
class UniformLegalPolicy : public Policy {
 public:
  std::string name() const override { return "uniform"; }
  Brick propose_root(const VoxelGrid& target, Rng& rng) override;
  Action propose(const ProposalContext& context, Rng& rng) override;
};

/// Scores each placeable tuple by newly covered target cells minus overflow_penalty
/// times cells outside the target; EOP scores 0. Samples from a softmax at the policy
/// temperature, or takes the argmax (EOP first on ties, then smallest (f, h, w, m)) when
/// the temperature is at most 1e-12. The root goes on the lowest (z, y, x) target cell
/// with its best-scoring size. Throws Error(EmptyTarget).
class GreedyGeometryPolicy : public Policy {
 public:
  explicit GreedyGeometryPolicy(double temperature = 0.0, double overflow_penalty = 2.0);

  std::string name() const override { return "greedy"; }
  Brick propose_root(const VoxelGrid& target, Rng& rng) override;
  Action propose(const ProposalContext& context, Rng& rng) override;

  double overflow_penalty() const { return overflow_penalty_; }

 private:
  double overflow_penalty_;
};

/// Placement score used by the greedy policy.
double placement_score(const VoxelGrid& target, const Brick& brick, double overflow_penalty);

}  // namespace brickseq
