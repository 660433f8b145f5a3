#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "brickseq/attachment.hpp"
#include "brickseq/graph.hpp"
#include "brickseq/lp.hpp"

namespace brickseq::testing {

BrickAssembly grow_random_assembly(Rng& rng, int bricks, int root_z) {
  const auto sizes = catalog_sizes();
  BrickAssembly a;
  while (a.empty()) {
    const BrickSize s = sizes[static_cast<std::size_t>(rng.below(static_cast<int>(sizes.size())))];
    a.add({s.h, s.w, rng.below(kWorkspace - s.h + 1), rng.below(kWorkspace - s.w + 1), root_z});
  }
  int misses = 0;
  while (static_cast<int>(a.size()) < bricks && misses < 2000) {
    const Brick& parent = a[static_cast<std::size_t>(rng.below(static_cast<int>(a.size())))];
    const BrickSize s = sizes[static_cast<std::size_t>(rng.below(static_cast<int>(sizes.size())))];
    const int f = rng.below(connector_count(parent.size()));
    const int m = rng.below(s.area());
    if (a.add(decode_attachment(f, m, parent, s))) {
      ++misses;
    } else {
      misses = 0;
    }
  }
  return a;
}

Brick ScriptedPolicy::propose_root(const VoxelGrid&, Rng&) {
  return {script_.at(4).value, script_.at(5).value, script_.at(1).value, script_.at(2).value, script_.at(3).value};
}

Action ScriptedPolicy::propose(const ProposalContext& ctx, Rng&) {
  const std::size_t pos = ctx.state.tokens.size();
  if (pos + 4 > script_.size() || script_[pos].kind != TokenKind::kConnector) return Action::eop();
  return Action::child({script_[pos].value, script_[pos + 1].value, script_[pos + 2].value, script_[pos + 3].value});
}

double brute_force_chamfer(const PointCloud& p, const PointCloud& q) {
  const auto directed = [](const PointCloud& a, const PointCloud& b) {
    double sum = 0.0;
    for (const Vec3& u : a.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const Vec3& v : b.points) best = std::min(best, distance(u, v));
      sum += best;
    }
    return sum / static_cast<double>(a.points.size());
  };
  return directed(p, q) + directed(q, p);
}

VoxelGrid column_target(int x, int y, int height) {
  VoxelGrid g(GridSource::kPoints);
  for (int z = 0; z < height; ++z) g.set({x, y, z});
  return g;
}

VoxelGrid box_target(int x0, int y0, int z0, int dx, int dy, int dz) {
  VoxelGrid g(GridSource::kPoints);
  for (int z = z0; z < z0 + dz; ++z) {
    for (int y = y0; y < y0 + dy; ++y) {
      for (int x = x0; x < x0 + dx; ++x) g.set({x, y, z});
    }
  }
  return g;
}

std::vector<bool> classify_by_written_program(const BrickAssembly& assembly, const PhysicsParams& params) {
  const EquilibriumProgram ep = assemble_equilibrium_program(assembly, params);
  const lp::Solution sol = lp::solve(ep.program);
  if (sol.status != lp::Status::kOptimal) throw std::runtime_error("written program not solved");
  const std::vector<int> label = connected_components(build_attachment_graph(assembly));
  std::vector<bool> grounded_label(assembly.size(), false);
  for (std::size_t i = 0; i < assembly.size(); ++i) {
    if (assembly[i].z == 0) grounded_label[static_cast<std::size_t>(label[i])] = true;
  }
  std::vector<bool> ok(assembly.size());
  for (std::size_t i = 0; i < assembly.size(); ++i) {
    double worst = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      worst = std::max(worst, std::abs(sol.x[static_cast<std::size_t>(ep.slack_vars[3 * i + k])]));
    }
    ok[i] = grounded_label[static_cast<std::size_t>(label[i])] && worst <= params.slack_tolerance;
  }
  return ok;
}

std::vector<bool> single_stud_oracle(const BrickAssembly& assembly) {
  const std::vector<int> label = connected_components(build_attachment_graph(assembly));
  std::vector<bool> grounded_label(assembly.size(), false);
  for (std::size_t i = 0; i < assembly.size(); ++i) {
    if (assembly[i].z == 0) grounded_label[static_cast<std::size_t>(label[i])] = true;
  }
  std::vector<bool> ok(assembly.size());
  for (std::size_t i = 0; i < assembly.size(); ++i) {
    const Brick& b = assembly[i];
    if (!grounded_label[static_cast<std::size_t>(label[i])]) {
      ok[i] = false;
      continue;
    }
    if (b.z == 0) {
      ok[i] = true;
      continue;
    }
    int studs = 0;
    for (Cell2 c : footprint(b)) studs += assembly.owner({c.x, c.y, b.z - 1}) >= 0 ? 1 : 0;
    if (studs != 1) throw std::invalid_argument("oracle covers single-stud supports only");
    // Loads from above act at stud centers of this brick, its own weight at the centroid;
    // the resultant meets the one support point only when the brick is a single cell.
    ok[i] = b.area() == 1;
  }
  return ok;
}

}  // namespace brickseq::testing
