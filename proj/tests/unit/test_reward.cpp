#include <doctest.h>

#include <cmath>
#include <limits>

#include "brickseq/error.hpp"
#include "brickseq/reward.hpp"
#include "fixtures.hpp"

using namespace brickseq;

namespace {

std::vector<ScoredCandidate> with_totals(std::initializer_list<double> totals) {
  std::vector<ScoredCandidate> out;
  int k = 0;
  for (double t : totals) {
    ScoredCandidate c;
    c.sequence = {Token::bos(), Token::coord(k++), Token::eos()};
    c.reward.r_total = t;
    out.push_back(c);
  }
  return out;
}

// Points on the faces of the box [x0, x1] x [y0, y1] x [z0, z1].
PointCloud box_cloud(Rng& rng, std::size_t n, Vec3 lo, Vec3 hi) {
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 p{lo.x + rng.uniform() * (hi.x - lo.x), lo.y + rng.uniform() * (hi.y - lo.y), lo.z + rng.uniform() * (hi.z - lo.z)};
    switch (i % 6) {
      case 0: p.x = lo.x; break;
      case 1: p.x = hi.x; break;
      case 2: p.y = lo.y; break;
      case 3: p.y = hi.y; break;
      case 4: p.z = lo.z; break;
      default: p.z = hi.z; break;
    }
    c.points.push_back(p);
  }
  return c;
}

}  // namespace

TEST_CASE("chamfer reward edges") {
  CHECK(chamfer_reward(0.0) == 1.0);
  CHECK(chamfer_reward(0.2) == 0.0);
  CHECK(chamfer_reward(0.5) == 0.0);
  CHECK(chamfer_reward(0.1) == doctest::Approx(0.5));
}

TEST_CASE("composition") {
  const RewardBreakdown r = compose_reward(0.5, 0.1, 1.0);
  CHECK(r.r_cd == doctest::Approx(0.5));
  CHECK(r.r_geo == doctest::Approx(1.0));
  CHECK(r.r_total == doctest::Approx(2.0));
  CHECK(compose_reward(1.0, 0.0, 1.0).r_total == 3.0);
  CHECK(compose_reward(0.0, 9.0, 0.0).r_total == 0.0);

  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const RewardBreakdown f = compose_reward(rng.uniform(), rng.uniform() * 3.0, rng.uniform());
    CHECK(f.r_total >= 0.0);
    CHECK(f.r_total <= 3.0);
    CHECK(f.r_geo == f.r_iou + f.r_cd);
  }
}

TEST_CASE("preference filter thresholds") {
  {
    const auto c = with_totals({2.5, 2.2});
    const auto pairs = build_preference_pairs(c);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].winner == 0);
    CHECK(pairs[0].loser == 1);
    CHECK(pairs[0].gap == doctest::Approx(0.3));
    CHECK(pairs[0].chosen == c[0].sequence);
    CHECK(pairs[0].rejected == c[1].sequence);
  }
  CHECK(build_preference_pairs(with_totals({0.9, 0.5})).empty());
  CHECK(build_preference_pairs(with_totals({2.0, 1.9})).empty());
  CHECK(build_preference_pairs(with_totals({1.2, 1.0})).size() == 1);
  CHECK(build_preference_pairs(with_totals({1.0, 0.8})).size() == 1);
}

TEST_CASE("preference pairs over six candidates are antisymmetric") {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ScoredCandidate> c(6);
    for (auto& s : c) s.reward.r_total = rng.uniform() * 3.0;
    const auto pairs = build_preference_pairs(c, 0.2, 1.0, "cond");
    for (const auto& p : pairs) {
      CHECK(p.condition_id == "cond");
      CHECK(p.reward_chosen >= 1.0);
      CHECK(p.gap >= 0.2 - 1e-12);
      for (const auto& q : pairs) CHECK_FALSE((q.winner == p.loser && q.loser == p.winner));
    }
    std::size_t expect = 0;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        if (i != j && c[i].reward.r_total >= 1.0 && c[i].reward.r_total - c[j].reward.r_total >= 0.2) ++expect;
    CHECK(pairs.size() == expect);
  }
}

TEST_CASE("dpo identities") {
  CHECK(dpo_loss(-3.0, -4.0, -3.0, -4.0, 0.7) == doctest::Approx(0.7 * std::log(2.0)).epsilon(1e-14));
  CHECK(std::abs(dpo_loss(-3.0, -4.0, -3.0, -4.0, 0.7) - 0.7 * std::log(2.0)) <= 1e-12);
  CHECK(dpo_loss(-1.0, -9.0, -5.0, -2.0, 0.0) == 0.0);
  const double one = dpo_loss(-2.0, -3.0, -2.5, -2.5, 0.4);
  CHECK(std::abs(dpo_loss(-2.0, -3.0, -2.5, -2.5, 0.8) - 2.0 * one) <= 1e-12);
  CHECK(dpo_loss(-1.0, -1.0, -1.0, -1.0, 1.0) > 0.0);

  // Large margins stay finite.
  CHECK(dpo_loss(700.0, -700.0, 0.0, 0.0, 1.0) >= 0.0);
  CHECK(std::isfinite(dpo_loss(-700.0, 700.0, 0.0, 0.0, 1.0)));
  CHECK(dpo_loss(-700.0, 700.0, 0.0, 0.0, 1.0) == doctest::Approx(1400.0));

  CHECK_THROWS_AS(dpo_loss(std::numeric_limits<double>::infinity(), 0, 0, 0, 1), Error);
  CHECK_THROWS_AS(dpo_loss(0, 0, 0, 0, -0.1), Error);
  CHECK_THROWS_AS(dpo_loss(0, 0, 0, 0, 1, 0.0), Error);
}

TEST_CASE("dpo monotonicity") {
  Rng rng(101);
  const double h = 1e-4;
  for (int i = 0; i < 100; ++i) {
    const double w = -20 * rng.uniform(), l = -20 * rng.uniform();
    const double wr = -20 * rng.uniform(), lr = -20 * rng.uniform();
    const double gap = 0.2 + rng.uniform();
    CHECK(dpo_loss(w + h, l, wr, lr, gap) < dpo_loss(w, l, wr, lr, gap));
    CHECK(dpo_loss(w, l + h, wr, lr, gap) > dpo_loss(w, l, wr, lr, gap));
  }
}

TEST_CASE("log sigmoid") {
  CHECK(log_sigmoid(0.0) == doctest::Approx(-std::log(2.0)));
  CHECK(log_sigmoid(800.0) == 0.0);
  CHECK(log_sigmoid(-800.0) == doctest::Approx(-800.0));
}

TEST_CASE("sft and post losses") {
  CHECK(sft_loss(std::vector<double>(12, 0.0)) == 0.0);
  const std::vector<double> uniform(9, -std::log(65.0));
  CHECK(sft_loss(uniform) == doctest::Approx(9 * std::log(65.0)));
  const std::vector<double> mixed = {-0.1, -2.5, -0.003, -7.25};
  CHECK(sft_loss(mixed) == doctest::Approx(0.1 + 2.5 + 0.003 + 7.25));
  CHECK_THROWS_AS(sft_loss(std::vector<double>{}), Error);
  CHECK_THROWS_AS(sft_loss(std::vector<double>{-1.0, std::nan("")}), Error);

  CHECK(post_loss(2.0, 3.0, 0.0) == 2.0);
  CHECK(post_loss(2.0, 3.0, 1.0) == 5.0);
  CHECK(post_loss(1.0, 4.0, 0.5) == 3.0);
}

TEST_CASE("total reward when the candidate grid equals the target grid") {
  // A vertical segment voxelizes to one full-height column; a tower of 1x1 bricks fills it.
  PointCloud target;
  for (int i = 0; i <= 400; ++i) target.points.push_back({0.0, 0.0, i / 400.0});
  const VoxelGrid grid = voxelize_points(target, true);
  REQUIRE(grid.count() == 20);
  std::vector<Brick> bricks;
  for (int z = 0; z < 20; ++z)
    for (int y = 0; y < 20; ++y)
      for (int x = 0; x < 20; ++x)
        if (grid.at(x, y, z)) bricks.push_back({1, 1, x, y, z});
  const BrickAssembly tower(bricks);
  REQUIRE(voxelize_assembly(tower) == grid);
  const RewardBreakdown r = total_reward(target, tower, {}, {2048, 1, true});
  CHECK(r.r_iou == 1.0);
  CHECK(r.r_stable == 1.0);
  CHECK(r.r_total == doctest::Approx(2.0 + r.r_cd));
}

TEST_CASE("unstable candidates lose the stability term") {
  Rng rng(3);
  const BrickAssembly a(std::vector<Brick>{{1, 1, 5, 5, 0}, {8, 1, 5, 5, 1}});
  const RewardBreakdown r = total_reward(box_cloud(rng, 500, {0, 0, 0}, {8, 1, 2}), a, {}, {1024, 0, true});
  CHECK(r.r_stable == 0.0);
  CHECK(r.r_total == r.r_geo);
  CHECK_THROWS_AS(total_reward(box_cloud(rng, 50, {0, 0, 0}, {1, 1, 1}), BrickAssembly{}), Error);
}

TEST_CASE("total reward matches a step-by-step computation") {
  Rng rng(99);
  const BrickAssembly a(std::vector<Brick>{{2, 4, 3, 3, 0}, {2, 2, 3, 3, 1}, {1, 2, 4, 5, 1}});
  const PointCloud target = box_cloud(rng, 200, {-1, -2, 0}, {1, 2, 1});
  const RewardOptions options{2048, 17, true};
  const RewardBreakdown r = total_reward(target, a, {}, options);

  const VoxelGrid tg = voxelize_points(target, true);
  VoxelGrid cg;
  for (const Brick& b : a.bricks())
    for (Cell2 c : footprint(b)) cg.set({c.x, c.y, b.z});
  std::size_t inter = 0, uni = 0;
  for (int z = 0; z < 20; ++z)
    for (int y = 0; y < 20; ++y)
      for (int x = 0; x < 20; ++x) {
        inter += (tg.at(x, y, z) && cg.at(x, y, z)) ? 1 : 0;
        uni += (tg.at(x, y, z) || cg.at(x, y, z)) ? 1 : 0;
      }
  const double r_iou = static_cast<double>(inter) / static_cast<double>(uni);
  const PointCloud sampled = sample_surface(marching_cubes(cg), options.surface_samples, options.seed);
  const double d = testing::brute_force_chamfer(normalize_cloud(target), normalize_cloud(sampled));
  const double r_cd = std::max(0.0, 1.0 - 5.0 * d);
  const double stable = stability_scores(a).min_score();

  CHECK(r.r_iou == doctest::Approx(r_iou).epsilon(1e-12));
  CHECK(std::abs(r.d_cd - d) <= 1e-9);
  CHECK(r.r_cd == doctest::Approx(r_cd).epsilon(1e-9));
  CHECK(r.r_stable == stable);
  CHECK(r.r_total == doctest::Approx(r_iou + r_cd + stable).epsilon(1e-9));
}
