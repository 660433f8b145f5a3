#include "brickseq/policies.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "brickseq/attachment.hpp"
#include "brickseq/error.hpp"

namespace brickseq {

namespace {

int anchor_total() {
  int n = 0;
  for (BrickSize s : catalog_sizes()) n += s.area();
  return n;
}

}  // namespace

Brick UniformLegalPolicy::propose_root(const VoxelGrid&, Rng& rng) {
  const auto sizes = catalog_sizes();
  const BrickSize s = sizes[static_cast<std::size_t>(rng.below(static_cast<int>(sizes.size())))];
  const int x = rng.below(kWorkspace - s.h + 1);
  const int y = rng.below(kWorkspace - s.w + 1);
  return {s.h, s.w, x, y, 0};
}

Action UniformLegalPolicy::propose(const ProposalContext& ctx, Rng& rng) {
  static const int kAnchors = anchor_total();
  const Brick& parent = ctx.state.assembly()[static_cast<std::size_t>(ctx.state.current_parent())];
  const int f_lo = ctx.state.last_f() + 1;
  const int f_count = std::max(0, connector_count(parent.size()) - f_lo);
  int pick = rng.below(f_count * kAnchors + 1);
  if (pick == f_count * kAnchors) return Action::eop();
  ChildTuple t;
  t.f = f_lo + pick / kAnchors;
  pick %= kAnchors;
  for (BrickSize s : catalog_sizes()) {
    if (pick < s.area()) {
      t.h = s.h;
      t.w = s.w;
      t.m = pick;
      break;
    }
    pick -= s.area();
  }
  return Action::child(t);
}

GreedyGeometryPolicy::GreedyGeometryPolicy(double temperature, double overflow_penalty)
    : overflow_penalty_(overflow_penalty) {
  temperature_ = temperature;
}

double placement_score(const VoxelGrid& target, const Brick& brick, double overflow_penalty) {
  int covered = 0;
  for (Cell2 c : footprint(brick)) covered += target({c.x, c.y, brick.z}) ? 1 : 0;
  return covered - overflow_penalty * (brick.area() - covered);
}

Brick GreedyGeometryPolicy::propose_root(const VoxelGrid& target, Rng&) {
  for (int z = 0; z < kWorkspace; ++z) {
    for (int y = 0; y < kWorkspace; ++y) {
      for (int x = 0; x < kWorkspace; ++x) {
        if (!target({x, y, z})) continue;
        Brick best{1, 1, x, y, z};
        double best_score = placement_score(target, best, overflow_penalty_);
        for (BrickSize s : catalog_sizes()) {
          const Brick b{s.h, s.w, x, y, z};
          if (!in_bounds(b)) continue;
          const double score = placement_score(target, b, overflow_penalty_);
          if (score > best_score) {
            best = b;
            best_score = score;
          }
        }
        return best;
      }
    }
  }
  throw Error(ErrorCode::kEmptyTarget, "greedy policy needs a nonempty target");
}

Action GreedyGeometryPolicy::propose(const ProposalContext& ctx, Rng& rng) {
  const Brick& parent = ctx.state.assembly()[static_cast<std::size_t>(ctx.state.current_parent())];
  struct Candidate {
    ChildTuple tuple;
    double score;
  };
  // Enumeration order is lexicographic in (f, h, w, m), so the first maximum wins ties.
  std::vector<BrickSize> sizes(catalog_sizes().begin(), catalog_sizes().end());
  std::sort(sizes.begin(), sizes.end());
  std::vector<Candidate> candidates;
  for (int f = ctx.state.last_f() + 1; f < connector_count(parent.size()); ++f) {
    for (BrickSize s : sizes) {
      for (int m = 0; m < s.area(); ++m) {
        const ChildTuple t{f, s.h, s.w, m};
        if (std::find(ctx.rejected.begin(), ctx.rejected.end(), t) != ctx.rejected.end()) continue;
        const TupleCheck check = validate_tuple(ctx.state, t);
        if (!check.accepted()) continue;
        candidates.push_back({t, placement_score(ctx.target, check.brick, overflow_penalty_)});
      }
    }
  }

  if (temperature_ <= 1e-12) {
    const Candidate* best = nullptr;
    for (const Candidate& c : candidates) {
      if (c.score > (best ? best->score : 0.0)) best = &c;
    }
    return best ? Action::child(best->tuple) : Action::eop();
  }

  double top = 0.0;  // EOP
  for (const Candidate& c : candidates) top = std::max(top, c.score);
  std::vector<double> weights;
  weights.reserve(candidates.size() + 1);
  double total = std::exp((0.0 - top) / temperature_);
  weights.push_back(total);
  for (const Candidate& c : candidates) {
    const double w = std::exp((c.score - top) / temperature_);
    weights.push_back(w);
    total += w;
  }
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    u -= weights[i];
    if (u < 0.0) return i == 0 ? Action::eop() : Action::child(candidates[i - 1].tuple);
  }
  return candidates.empty() ? Action::eop() : Action::child(candidates.back().tuple);
}

}  // namespace brickseq
