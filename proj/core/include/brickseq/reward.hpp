#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "brickseq/brick.hpp"
#include "brickseq/geometry.hpp"
#include "brickseq/stability.hpp"
#include "brickseq/token.hpp"

namespace brickseq {

struct RewardBreakdown {
  double r_iou = 0.0;
  double d_cd = 0.0;
  double r_cd = 0.0;
  double r_geo = 0.0;
  double r_stable = 0.0;
  double r_total = 0.0;
  bool operator==(const RewardBreakdown&) const = default;
};

/// max(1 - 5 d, 0).
double chamfer_reward(double d_cd);

/// Assembles a breakdown from its three measured inputs.
RewardBreakdown compose_reward(double r_iou, double d_cd, double r_stable);

struct RewardOptions {
  std::size_t surface_samples = 8192;
  std::uint64_t seed = 0;
  bool solid_fill = true;
};

/// Voxel IoU against the voxelized target, Chamfer between the normalized target and a
/// surface sample of the candidate's marching-cubes mesh, and the minimum stability
/// score. Throws Error(EmptyAssembly) for an empty candidate.
RewardBreakdown total_reward(const PointCloud& target, const BrickAssembly& candidate,
                             const PhysicsParams& params = {}, const RewardOptions& options = {});

struct ScoredCandidate {
  TokenSequence sequence;
  RewardBreakdown reward;
};

struct PreferencePair {
  std::string condition_id;
  std::size_t winner = 0;  // candidate indices
  std::size_t loser = 0;
  TokenSequence chosen;
  TokenSequence rejected;
  double reward_chosen = 0.0;
  double reward_rejected = 0.0;
  double gap = 0.0;
  bool operator==(const PreferencePair&) const = default;
};

inline constexpr double kDefaultRewardGap = 0.2;
inline constexpr double kDefaultRewardFloor = 1.0;

/// All ordered pairs (i, j) with R_i - R_j >= gap_min and R_i >= floor, in (i, j) order.
/// Comparisons allow 1e-12 of round-off so a gap of exactly gap_min survives.
std::vector<PreferencePair> build_preference_pairs(std::span<const ScoredCandidate> candidates,
                                                   double gap_min = kDefaultRewardGap,
                                                   double floor = kDefaultRewardFloor,
                                                   const std::string& condition_id = "");

struct DpoParams {
  double beta = 1.0;
  double lambda = 1.0;
};

/// log(sigmoid(x)) without overflow.
double log_sigmoid(double x);

/// -gap * log sigmoid(beta * ((w_policy - w_ref) - (l_policy - l_ref))).
/// Throws Error(NonFiniteInput) for non-finite arguments, Error(InvalidArgument) for a
/// negative gap or non-positive beta.
double dpo_loss(double logp_w_policy, double logp_l_policy, double logp_w_ref, double logp_l_ref,
                double gap, double beta = 1.0);

/// Negative sum of per-token log-probabilities. Throws Error(NonFiniteInput) and
/// Error(InvalidArgument) for an empty input.
double sft_loss(std::span<const double> token_logps);

double post_loss(double dpo, double sft, double lambda = 1.0);

}  // namespace brickseq
