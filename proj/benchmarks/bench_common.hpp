#pragma once

#include "brickseq/decode.hpp"
#include "brickseq/policies.hpp"

namespace bench {

// Uniform-policy assemblies are connected, grounded and legal by construction.
inline brickseq::BrickAssembly random_assembly(int bricks, std::uint64_t seed) {
  brickseq::UniformLegalPolicy policy;
  brickseq::DecodeBudgets budgets;
  budgets.max_bricks = bricks;
  budgets.max_rollbacks = 1;
  return brickseq::generate(policy, brickseq::VoxelGrid{}, budgets, {}, seed).assembly;
}

}  // namespace bench
