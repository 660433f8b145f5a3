#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "brickseq/error.hpp"
#include "brickseq/io.hpp"
#include "brickseq/ldraw.hpp"
#include "brickseq/policies.hpp"
#include "fixtures.hpp"

using namespace brickseq;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

struct LdrawLine {
  int colour;
  double x, y, z;
  std::array<int, 9> rot;
  std::string part;
};

// Minimal grammar: "0 <anything>" comments and 15-field type-1 lines.
std::vector<LdrawLine> parse_ldraw(const std::string& text) {
  std::vector<LdrawLine> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    REQUIRE_FALSE(line.empty());
    REQUIRE(line.find('\r') == std::string::npos);
    for (char c : line) REQUIRE(static_cast<unsigned char>(c) < 128);
    std::istringstream fields(line);
    int type = -1;
    REQUIRE(static_cast<bool>(fields >> type));
    if (type == 0) continue;
    REQUIRE(type == 1);
    LdrawLine l;
    REQUIRE(static_cast<bool>(fields >> l.colour >> l.x >> l.y >> l.z));
    for (int& r : l.rot) REQUIRE(static_cast<bool>(fields >> r));
    REQUIRE(static_cast<bool>(fields >> l.part));
    std::string extra;
    REQUIRE_FALSE(static_cast<bool>(fields >> extra));
    REQUIRE(l.part.size() > 4);
    REQUIRE(l.part.substr(l.part.size() - 4) == ".dat");
    out.push_back(l);
  }
  REQUIRE(text.back() == '\n');
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("brickseq_test_" + name);
}

}  // namespace

TEST_CASE("assembly json round trip") {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const BrickAssembly a = testing::grow_random_assembly(rng, 30);
    CHECK(assembly_from_json(assembly_to_json(a)) == a);
  }
  CHECK(assembly_to_json(BrickAssembly(std::vector<Brick>{{2, 4, 1, 2, 3}})) ==
        R"({"bricks":[{"h":2,"w":4,"x":1,"y":2,"z":3}]})");
  CHECK(code_of([] { assembly_from_json("{\"bricks\": [{\"h\": 3, \"w\": 3, \"x\": 0, \"y\": 0, \"z\": 0}]}"); }) ==
        ErrorCode::kSizeNotInLibrary);
  CHECK(code_of([] {
          assembly_from_json(R"({"bricks":[{"h":1,"w":1,"x":0,"y":0,"z":0},{"h":1,"w":1,"x":0,"y":0,"z":0}]})");
        }) == ErrorCode::kCollision);
  CHECK(code_of([] { assembly_from_json("{\"bricks\": [ {"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { assembly_from_json("{\"bricks\": [{\"h\": 1}]}"); }) == ErrorCode::kParseError);
}

TEST_CASE("stability report round trip") {
  Rng rng(2);
  const BrickAssembly a = testing::grow_random_assembly(rng, 12);
  const StabilityReport r = stability_scores(a);
  const StabilityReport back = report_from_json(report_to_json(r));
  CHECK(back.scores == r.scores);
  CHECK(back.feasible == r.feasible);
  CHECK(back.contacts == r.contacts);
  CHECK(back.contact_forces == r.contact_forces);
  CHECK(back.ground == r.ground);
  CHECK(back.ground_forces == r.ground_forces);
  CHECK(back.brick_slack == r.brick_slack);
  CHECK(back.grounded == r.grounded);
  CHECK(back.tension_scale == r.tension_scale);
  CHECK(back.iterations == r.iterations);

  const StabilityReport minimal = report_from_json(R"({"scores":[1,0.5],"feasible":true,"min_score":0.5})");
  CHECK(minimal.scores == std::vector<double>{1.0, 0.5});
}

TEST_CASE("reward and pair round trip") {
  const RewardBreakdown r = compose_reward(0.123456789, 0.0712345, 0.75);
  CHECK(reward_from_json(reward_to_json(r)) == r);

  PreferencePair p;
  p.condition_id = "chair-7";
  p.winner = 2;
  p.loser = 5;
  p.chosen = tokenize(BrickAssembly(std::vector<Brick>{{2, 4, 0, 0, 0}, {2, 2, 0, 0, 1}}));
  p.rejected = tokenize(BrickAssembly(std::vector<Brick>{{1, 1, 3, 3, 0}}));
  p.reward_chosen = 2.5;
  p.reward_rejected = 2.2;
  p.gap = 2.5 - 2.2;
  CHECK(pair_from_json(pair_to_json(p)) == p);
}

TEST_CASE("grid json round trip") {
  Rng rng(3);
  VoxelGrid g;
  for (int k = 0; k < 300; ++k) g.set({rng.below(20), rng.below(20), rng.below(20)});
  CHECK(grid_from_json(grid_to_json(g)) == g);
  VoxelGrid one;
  one.set({1, 2, 3});
  CHECK(grid_to_json(one) == R"({"cells":[[1,2,3]],"size":20})");
  CHECK(code_of([] { grid_from_json(R"({"size":20,"cells":[[20,0,0]]})"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { grid_from_json(R"({"size":16,"cells":[]})"); }) == ErrorCode::kParseError);
}

TEST_CASE("point cloud text round trip") {
  Rng rng(4);
  PointCloud c;
  for (int i = 0; i < 100; ++i) c.points.push_back({rng.uniform() - 0.5, rng.uniform() * 1e-7, rng.uniform() * 1e6});
  CHECK(cloud_from_text(cloud_to_text(c)) == c);

  PointCloud n;
  n.points = {{0.1, 0.2, 0.3}, {1, 2, 3}};
  n.normals = {{0, 0, 1}, {1, 0, 0}};
  CHECK(cloud_from_text(cloud_to_text(n)) == n);

  const PointCloud parsed = cloud_from_text("# header\n\n1 2 3\n  4 5 6  \n");
  CHECK(parsed.points == std::vector<Vec3>{{1, 2, 3}, {4, 5, 6}});
  CHECK(code_of([] { cloud_from_text("1 2\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { cloud_from_text("1 2 3\n1 2 3 0 0 1\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { cloud_from_text("1 2 x\n"); }) == ErrorCode::kParseError);
}

TEST_CASE("mesh obj") {
  VoxelGrid g;
  g.set({0, 0, 0});
  const SurfaceMesh m = marching_cubes(g);
  const std::string obj = mesh_to_obj(m);
  std::istringstream in(obj);
  std::string tag;
  int v = 0, f = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    ls >> tag;
    if (tag == "v") ++v;
    if (tag == "f") {
      ++f;
      int a, b, c;
      ls >> a >> b >> c;
      CHECK(a >= 1);
      CHECK(c <= static_cast<int>(m.vertices.size()));
    }
  }
  CHECK(v == 6);
  CHECK(f == 8);
}

TEST_CASE("token and text files") {
  const TokenSequence s = tokenize(BrickAssembly(std::vector<Brick>{{2, 4, 0, 0, 0}, {2, 2, 0, 0, 1}}));
  const auto bin = temp_path("seq.tok");
  const auto txt = temp_path("seq.txt");
  write_binary_file(bin, to_binary(s));
  write_text_file(txt, to_text(s) + "\n");
  CHECK(read_token_file(bin) == s);
  CHECK(read_token_file(txt) == s);
  CHECK(read_binary_file(bin) == to_binary(s));
  std::filesystem::remove(bin);
  std::filesystem::remove(txt);
  CHECK(code_of([] { read_text_file("/nonexistent/brickseq/file"); }) == ErrorCode::kIoError);
}

TEST_CASE("generate result json names every section") {
  GreedyGeometryPolicy greedy;
  const GenerateResult r = generate(greedy, testing::column_target(1, 1, 2));
  const std::string j = generate_result_to_json(r);
  for (const char* key : {"\"assembly\"", "\"sequence\"", "\"stable\"", "\"trace\"", "\"rollbacks\""}) {
    CHECK(j.find(key) != std::string::npos);
  }
}

TEST_CASE("ldraw parts and rotations") {
  CHECK(ldraw_part({1, 1}) == "3005");
  CHECK(ldraw_part({2, 1}) == "3004");
  CHECK(ldraw_part({1, 4}) == "3010");
  CHECK(ldraw_part({6, 1}) == "3009");
  CHECK(ldraw_part({1, 8}) == "3008");
  CHECK(ldraw_part({2, 2}) == "3003");
  CHECK(ldraw_part({4, 2}) == "3001");
  CHECK(ldraw_part({2, 6}) == "2456");
  CHECK_THROWS_AS(ldraw_part({3, 3}), Error);

  CHECK(ldraw_part({2, 4}) == ldraw_part({4, 2}));
  const auto a = ldraw_rotation({4, 2});
  const auto b = ldraw_rotation({2, 4});
  CHECK(a == std::array<int, 9>{1, 0, 0, 0, 1, 0, 0, 0, 1});
  // b = a * R_y(90): rows of a rotation about the vertical axis.
  CHECK(b == std::array<int, 9>{0, 0, 1, 0, 1, 0, -1, 0, 0});
}

TEST_CASE("ldraw export") {
  const std::string one = export_ldraw(BrickAssembly(std::vector<Brick>{{1, 1, 0, 0, 0}}));
  const auto lines = parse_ldraw(one);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].part == "3005.dat");
  CHECK(lines[0].x == 10.0);
  CHECK(lines[0].y == 0.0);
  CHECK(lines[0].z == 10.0);

  const auto up = parse_ldraw(export_ldraw(BrickAssembly(std::vector<Brick>{{2, 4, 2, 0, 3}})));
  CHECK(up[0].x == 60.0);
  CHECK(up[0].y == -72.0);
  CHECK(up[0].z == 40.0);
  CHECK(up[0].part == "3001.dat");

  Rng rng(5);
  const BrickAssembly big = testing::grow_random_assembly(rng, 60);
  CHECK(parse_ldraw(export_ldraw(big)).size() == big.size());
}
