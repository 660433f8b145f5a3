// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "brickseq/attachment.hpp"
#include "brickseq/error.hpp"
#include "brickseq/policies.hpp"
#include "brickseq/reward.hpp"
#include "brickseq/tokenizer.hpp"
#include "fixtures.hpp"

using namespace brickseq;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Random corpus shared by the round-trip and length-law criteria.
std::vector<BrickAssembly> corpus() {
  static std::vector<BrickAssembly> c = [] {
    Rng rng(20240601);
    std::vector<BrickAssembly> out;
    while (out.size() < 1000) {
      BrickAssembly a = testing::grow_random_assembly(rng, 5 + rng.below(146));
      if (a.size() >= 5) out.push_back(std::move(a));
    }
    return out;
  }();
  return c;
}

Outcome codebook_sizes() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t ours = codebook().size();
  const std::size_t flat = baseline_codebook().size();
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return {ours == 65 && flat == 28 && ms < 1.0, fmt("codebook=%zu baseline=%zu in %.3f ms", ours, flat, ms)};
}

Outcome worked_example() {
  const AttachmentCode c = encode_attachment({4, 2, 0, 0, 0}, {2, 1, 1, 0, 1});
  return {c.f == 1 && c.m == 0, fmt("f=%d m=%d", c.f, c.m)};
}

Outcome attachment_bijection() {
  const auto t0 = std::chrono::steady_clock::now();
  long checked = 0, bad = 0;
  for (BrickSize ps : catalog_sizes()) {
    const Brick parent{ps.h, ps.w, 8, 8, 10};
    for (int f = 0; f < connector_count(ps); ++f) {
      for (BrickSize cs : catalog_sizes()) {
        for (int m = 0; m < cs.area(); ++m) {
          const Brick child = decode_attachment(f, m, parent, cs);
          const AttachmentCode code = encode_attachment(parent, child);
          if (!(decode_attachment(code.f, code.m, parent, cs) == child)) ++bad;
          ++checked;
        }
      }
    }
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {bad == 0 && s < 1.0, fmt("%ld combinations, %ld mismatches, %.3f s", checked, bad, s)};
}

Outcome round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (const BrickAssembly& a : corpus()) {
    if (!same_bricks(detokenize(tokenize(a)).assembly.bricks(), a.bricks())) ++bad;
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {bad == 0 && s < 30.0, fmt("%zu assemblies, %d mismatches, %.2f s", corpus().size(), bad, s)};
}

Outcome length_law() {
  int bad = 0;
  std::size_t worst_margin = ~std::size_t{0};
  for (const BrickAssembly& a : corpus()) {
    const TokenSequence s = tokenize(a);
    std::size_t eops = 0;
    for (const Token& t : s) eops += t.kind == TokenKind::kEop ? 1 : 0;
    const std::size_t n = a.size();
    if (s.size() != 4 * n + eops + 3 || s.size() > 5 * n + 2) ++bad;
    if (s.size() <= 5 * n + 2) worst_margin = std::min(worst_margin, 5 * n + 2 - s.size());
  }
  return {bad == 0, fmt("%d violations, smallest slack to 5N+2 = %zu", bad, worst_margin)};
}

Outcome stability_oracles() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Brick> tower;
  for (int z = 0; z < 10; ++z) tower.push_back({1, 1, 3, 3, z});
  const std::vector<BrickAssembly> cases = {
      BrickAssembly(std::vector<Brick>{{2, 4, 0, 0, 0}}),
      BrickAssembly(std::vector<Brick>{{1, 1, 0, 0, 3}}),
      BrickAssembly(std::vector<Brick>{{1, 1, 5, 5, 0}, {1, 1, 5, 5, 1}, {8, 1, 5, 5, 2}}),
      BrickAssembly(tower),
  };
  std::vector<std::vector<double>> scores;
  bool oracle_ok = true;
  for (const BrickAssembly& a : cases) {
    const StabilityReport r = stability_scores(a);
    scores.push_back(r.scores);
    std::vector<bool> got;
    for (double s : r.scores) got.push_back(s > 0.0);
    oracle_ok = oracle_ok && got == testing::single_stud_oracle(a);
  }
  const auto all_one = [](const std::vector<double>& v) {
    for (double s : v) if (s != 1.0) return false;
    return true;
  };
  const bool expected = all_one(scores[0]) && scores[1][0] == 0.0 && scores[2][2] == 0.0 && scores[2][0] > 0.0 &&
                        scores[2][1] > 0.0 && all_one(scores[3]);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {expected && oracle_ok && s < 1.0,
          fmt("single=%g floating=%g cantilever=%g tower_min=%g oracle=%s %.3f s", scores[0][0], scores[1][0],
              scores[2][2], *std::min_element(scores[3].begin(), scores[3].end()), oracle_ok ? "agree" : "differ", s)};
}

Outcome chamfer_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    PointCloud p, q;
    for (int i = 0; i < 200; ++i) {
      p.points.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
      q.points.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
    }
    worst = std::max(worst, std::abs(chamfer(p, q) - testing::brute_force_chamfer(p, q)));
  }
  PointCloud a, b;
  a.points = {{0, 0, 0}};
  b.points = {{1, 0, 0}};
  const double unit = chamfer(a, b);
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-9 && unit == 2.0 && s < 10.0, fmt("max |fast - brute| = %.3g, unit pair = %g, %.2f s", worst, unit, s)};
}

Outcome reward_bounds() {
  Rng rng(8);
  bool in_range = true;
  for (int i = 0; i < 10000; ++i) {
    const RewardBreakdown r = compose_reward(rng.uniform(), rng.uniform() * 2.0, rng.uniform());
    in_range = in_range && r.r_total >= 0.0 && r.r_total <= 3.0;
  }
  // End to end on a few random structures against a fixed cloud.
  PointCloud target;
  for (int i = 0; i < 300; ++i) target.points.push_back({rng.uniform() * 4, rng.uniform() * 2, rng.uniform() * 3});
  for (int i = 0; i < 5; ++i) {
    const RewardBreakdown r = total_reward(target, testing::grow_random_assembly(rng, 15), {}, {1024, 0, true});
    in_range = in_range && r.r_total >= 0.0 && r.r_total <= 3.0;
  }
  bool iou_one = true;
  for (int i = 0; i < 10; ++i) {
    const VoxelGrid g = voxelize_assembly(testing::grow_random_assembly(rng, 20));
    iou_one = iou_one && iou(g, g) == 1.0;
  }
  const double r0 = chamfer_reward(0.0), r02 = chamfer_reward(0.2);
  return {r0 == 1.0 && r02 == 0.0 && in_range && iou_one,
          fmt("r_cd(0)=%g r_cd(0.2)=%g fuzz_in_range=%s iou_self=%s", r0, r02, in_range ? "yes" : "no", iou_one ? "1" : "no")};
}

Outcome preference_filter() {
  const auto pairs_for = [](double a, double b) {
    std::vector<ScoredCandidate> c(2);
    c[0].reward.r_total = a;
    c[1].reward.r_total = b;
    return build_preference_pairs(c);
  };
  const auto p1 = pairs_for(2.5, 2.2);
  const auto p2 = pairs_for(0.9, 0.5);
  const auto p3 = pairs_for(2.0, 1.9);
  const bool ok = p1.size() == 1 && p1[0].winner == 0 && std::abs(p1[0].gap - 0.3) < 1e-12 && p2.empty() && p3.empty();
  return {ok, fmt("{2.5,2.2}->%zu pair(s), {0.9,0.5}->%zu, {2.0,1.9}->%zu", p1.size(), p2.size(), p3.size())};
}

Outcome dpo_identities() {
  Rng rng(10);
  double worst_ref = 0.0, worst_lin = 0.0;
  int monotone_fail = 0;
  for (int i = 0; i < 100; ++i) {
    const double w = -30 * rng.uniform(), l = -30 * rng.uniform();
    const double wr = -30 * rng.uniform(), lr = -30 * rng.uniform();
    const double gap = 3.0 * rng.uniform();
    worst_ref = std::max(worst_ref, std::abs(dpo_loss(w, l, w, l, gap) - gap * std::log(2.0)));
    worst_lin = std::max(worst_lin, std::abs(dpo_loss(w, l, wr, lr, 2.0 * gap) - 2.0 * dpo_loss(w, l, wr, lr, gap)));
    const double g = gap + 0.2;
    const double base = dpo_loss(w, l, wr, lr, g);
    if (!(dpo_loss(w + 1e-4, l, wr, lr, g) < base)) ++monotone_fail;
    if (!(dpo_loss(w, l + 1e-4, wr, lr, g) > base)) ++monotone_fail;
  }
  return {worst_ref <= 1e-12 && worst_lin <= 1e-12 && monotone_fail == 0,
          fmt("max ref error %.3g, max linearity error %.3g, monotonicity failures %d", worst_ref, worst_lin, monotone_fail)};
}

Outcome uniform_validity() {
  const auto t0 = std::chrono::steady_clock::now();
  UniformLegalPolicy policy;
  const DecodeBudgets budgets{16, 2, 40};
  int valid = 0;
  std::size_t bricks = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const GenerateResult r = generate(policy, VoxelGrid{}, budgets, {}, seed);
    bool ok = true;
    try {
      ok = detokenize(r.sequence, DetokenizeMode::kStrict).assembly == r.assembly;
      for (const Brick& b : r.assembly.bricks()) ok = ok && is_valid(b);
      ok = ok && BrickAssembly(r.assembly.bricks()).size() == r.assembly.size();
    } catch (const Error&) {
      ok = false;
    }
    valid += ok ? 1 : 0;
    bricks += r.assembly.size();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {valid == 500 && s < 60.0, fmt("%d/500 valid, mean %.1f bricks, %.1f s", valid, bricks / 500.0, s)};
}

Outcome rollback_replay() {
  Rng rng(12);
  int runs = 0, mismatches = 0, not_shorter = 0;
  std::size_t events = 0;
  while (runs < 100) {
    const TokenSequence script = tokenize(testing::grow_random_assembly(rng, 3 + rng.below(20)));
    const BrickAssembly parsed = detokenize(script).assembly;
    const StabilityReport report = stability_scores(parsed);
    if (report.min_score() > 0.0) continue;
    ++runs;
    const DecodeState back = rollback(script, parsed, report);
    if (!(back == replay(back.tokens))) ++mismatches;
    if (back.tokens.size() >= script.size()) ++not_shorter;

    testing::ScriptedPolicy policy(script);
    const GenerateResult g = generate(policy, VoxelGrid{}, {4, 3, 400}, {}, static_cast<std::uint64_t>(runs));
    for (const RollbackEvent& ev : g.trace.rollback_events) {
      ++events;
      if (ev.to_length >= ev.from_length) ++not_shorter;
    }
  }
  return {mismatches == 0 && not_shorter == 0 && events > 0,
          fmt("%d unstable scripts, %zu rollback events, %d replay mismatches, %d non-shortening", runs, events,
              mismatches, not_shorter)};
}

Outcome greedy_end_to_end() {
  const auto t0 = std::chrono::steady_clock::now();
  GreedyGeometryPolicy greedy;
  const VoxelGrid column = testing::column_target(10, 10, 3);
  const GenerateResult c = generate(greedy, column);
  const double iou_column = iou(voxelize_assembly(c.assembly), column);
  const VoxelGrid slab = testing::box_target(0, 0, 0, 20, 20, 1);
  const GenerateResult s = generate(greedy, slab);
  const double iou_slab = iou(voxelize_assembly(s.assembly), slab);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = iou_column == 1.0 && c.stable && c.trace.rollbacks == 0 && iou_slab >= 0.95 && s.stable &&
                  s.trace.rollbacks == 0 && secs < 5.0;
  return {ok, fmt("column IoU %.3f (%zu bricks, rollbacks %zu), slab IoU %.3f (%zu bricks, rollbacks %zu, stable %s), %.2f s",
                  iou_column, c.assembly.size(), c.trace.rollbacks, iou_slab, s.assembly.size(), s.trace.rollbacks,
                  s.stable ? "yes" : "no", secs)};
}

Outcome marching_cubes_closure() {
  VoxelGrid one;
  one.set({5, 5, 5});
  const SurfaceMesh m1 = marching_cubes(one);
  const bool closed = is_watertight(m1) && euler_characteristic(m1) == 2;
  const SurfaceMesh m8 = marching_cubes(testing::box_target(5, 5, 5, 2, 2, 2));
  const double vol = mesh_volume(m8);
  const bool volume_ok = std::abs(vol - 8.0) <= 1e-6 * 8.0;
  return {closed && volume_ok && is_watertight(m8),
          fmt("single voxel watertight=%s chi=%d; 2x2x2 volume %.12g (target 8)", is_watertight(m1) ? "yes" : "no",
              euler_characteristic(m1), vol)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"codebook size", codebook_sizes},
      {"worked attachment example", worked_example},
      {"attachment bijection", attachment_bijection},
      {"tokenize round trip", round_trip},
      {"sequence length law", length_law},
      {"stability oracles", stability_oracles},
      {"chamfer oracle", chamfer_oracle},
      {"reward bounds and edge values", reward_bounds},
      {"preference filter", preference_filter},
      {"dpo identities", dpo_identities},
      {"constrained generation validity", uniform_validity},
      {"rollback replay equivalence", rollback_replay},
      {"greedy end to end", greedy_end_to_end},
      {"marching cubes closure and volume", marching_cubes_closure},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
