#include "brickseq/reward.hpp"

#include <algorithm>
#include <cmath>

#include "brickseq/error.hpp"

namespace brickseq {

double chamfer_reward(double d_cd) { return std::max(1.0 - 5.0 * d_cd, 0.0); }

RewardBreakdown compose_reward(double r_iou, double d_cd, double r_stable) {
  RewardBreakdown r;
  r.r_iou = r_iou;
  r.d_cd = d_cd;
  r.r_cd = chamfer_reward(d_cd);
  r.r_geo = r.r_iou + r.r_cd;
  r.r_stable = r_stable;
  r.r_total = r.r_geo + r.r_stable;
  return r;
}

RewardBreakdown total_reward(const PointCloud& target, const BrickAssembly& candidate,
                             const PhysicsParams& params, const RewardOptions& options) {
  if (candidate.empty()) throw Error(ErrorCode::kEmptyAssembly, "cannot score an empty candidate");
  const VoxelGrid target_grid = voxelize_points(target, options.solid_fill);
  const VoxelGrid candidate_grid = voxelize_assembly(candidate);
  const double r_iou = iou(target_grid, candidate_grid);

  const SurfaceMesh mesh = marching_cubes(candidate_grid);
  const PointCloud sampled = sample_surface(mesh, options.surface_samples, options.seed);
  const double d_cd = chamfer(normalize_cloud(target), normalize_cloud(sampled));

  const StabilityReport report = stability_scores(candidate, params);
  return compose_reward(r_iou, d_cd, r_stable(report));
}

std::vector<PreferencePair> build_preference_pairs(std::span<const ScoredCandidate> candidates,
                                                   double gap_min, double floor,
                                                   const std::string& condition_id) {
  constexpr double kSlack = 1e-12;
  std::vector<PreferencePair> pairs;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double ri = candidates[i].reward.r_total;
    if (ri < floor - kSlack) continue;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
      const double rj = candidates[j].reward.r_total;
      if (i == j || ri - rj < gap_min - kSlack) continue;
      pairs.push_back({condition_id, i, j, candidates[i].sequence, candidates[j].sequence, ri, rj, ri - rj});
    }
  }
  return pairs;
}

double log_sigmoid(double x) { return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x)); }

double dpo_loss(double logp_w_policy, double logp_l_policy, double logp_w_ref, double logp_l_ref,
                double gap, double beta) {
  for (double v : {logp_w_policy, logp_l_policy, logp_w_ref, logp_l_ref, gap, beta}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, "dpo_loss argument is not finite");
  }
  if (gap < 0.0) throw Error(ErrorCode::kInvalidArgument, "reward gap must be nonnegative");
  if (beta <= 0.0) throw Error(ErrorCode::kInvalidArgument, "beta must be positive");
  const double margin = (logp_w_policy - logp_w_ref) - (logp_l_policy - logp_l_ref);
  return -gap * log_sigmoid(beta * margin);
}

double sft_loss(std::span<const double> token_logps) {
  if (token_logps.empty()) throw Error(ErrorCode::kInvalidArgument, "sft_loss needs at least one token");
  double sum = 0.0;
  for (double v : token_logps) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteInput, "token log-probability is not finite");
    sum += v;
  }
  return -sum;
}

double post_loss(double dpo, double sft, double lambda) { return dpo + lambda * sft; }

}  // namespace brickseq
