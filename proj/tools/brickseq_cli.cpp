// brickseq command-line front end.
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "brickseq/decode.hpp"
#include "brickseq/error.hpp"
#include "brickseq/external_policy.hpp"
#include "brickseq/geometry.hpp"
#include "brickseq/graph.hpp"
#include "brickseq/io.hpp"
#include "brickseq/ldraw.hpp"
#include "brickseq/policies.hpp"
#include "brickseq/reward.hpp"
#include "brickseq/stability.hpp"
#include "brickseq/token.hpp"
#include "brickseq/tokenizer.hpp"
#include "subprocess_channel.hpp"

namespace fs = std::filesystem;
using namespace brickseq;
using nlohmann::json;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(out_path, text.back() == '\n' ? text : text + '\n');
  }
}

bool is_json(const std::string& path) { return fs::path(path).extension() == ".json"; }

BrickAssembly load_assembly(const std::string& path) { return assembly_from_json(read_text_file(path)); }

VoxelGrid load_target(const std::string& path, bool solid_fill) {
  if (is_json(path)) return grid_from_json(read_text_file(path));
  return voxelize_points(cloud_from_text(read_text_file(path)), solid_fill);
}

struct PhysicsFlags {
  PhysicsParams params;
  void attach(CLI::App* app) {
    app->add_option("--clutch", params.clutch_tension_capacity, "Tension capacity per stud contact")
        ->capture_default_str();
    app->add_option("--weight", params.brick_weight_per_cell, "Weight of one footprint cell")->capture_default_str();
    app->add_option("--slack-eps", params.slack_tolerance, "Residual above which a brick is unbalanced")
        ->capture_default_str();
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Brick structure tokenization, decoding and scoring"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "brickseq 0.1.0");

  std::string input;
  std::string output;

  // tokenize
  bool binary = false;
  auto* tok = app.add_subcommand("tokenize", "Assembly JSON to token sequence");
  tok->add_option("input", input, "Assembly .json")->required();
  tok->add_option("-o,--output", output, "Write tokens here (.tok)");
  tok->add_flag("--binary", binary, "Write the length-prefixed id form (needs -o)");

  // detokenize
  bool lenient = false;
  auto* detok = app.add_subcommand("detokenize", "Token sequence to assembly JSON");
  detok->add_option("input", input, "Token file, text or binary")->required();
  detok->add_option("-o,--output", output, "Write assembly here");
  detok->add_flag("--lenient", lenient, "Return the valid prefix instead of failing");

  auto* round = app.add_subcommand("roundtrip", "Check detokenize(tokenize(A)) == A");
  round->add_option("input", input, "Assembly .json")->required();

  auto* validate = app.add_subcommand("validate", "Check an assembly or token sequence");
  validate->add_option("input", input, "Assembly .json or token file")->required();

  PhysicsFlags stab_flags;
  auto* stab = app.add_subcommand("stability", "Per-brick stability scores");
  stab->add_option("input", input, "Assembly .json")->required();
  stab->add_option("-o,--output", output, "Write the report here");
  stab_flags.attach(stab);

  // score / prefpairs share the candidate list
  std::string target;
  std::vector<std::string> candidates;
  std::size_t samples = 8192;
  std::uint64_t seed = 0;
  bool no_fill = false;
  bool keep_height = false;
  PhysicsFlags score_flags;
  auto* score = app.add_subcommand("score", "Reward breakdown for candidate assemblies");
  score->add_option("target", target, "Target point cloud (.xyz)")->required();
  score->add_option("candidates", candidates, "Candidate assembly .json files")->required();
  score->add_option("--samples", samples, "Surface samples for Chamfer")->capture_default_str();
  score->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  score->add_flag("--no-fill", no_fill, "Do not solidify the target voxels");
  score_flags.attach(score);

  double gap = kDefaultRewardGap;
  double floor = kDefaultRewardFloor;
  std::string condition;
  PhysicsFlags pair_flags;
  auto* pairs = app.add_subcommand("prefpairs", "Preference pairs as JSON lines");
  pairs->add_option("target", target, "Target point cloud (.xyz)")->required();
  pairs->add_option("candidates", candidates, "Candidate assembly .json files")->required();
  pairs->add_option("--gap", gap, "Minimum reward gap")->capture_default_str();
  pairs->add_option("--floor", floor, "Minimum winner reward")->capture_default_str();
  pairs->add_option("--condition", condition, "Condition id stored with each pair");
  pairs->add_option("--samples", samples, "Surface samples for Chamfer")->capture_default_str();
  pairs->add_option("--seed", seed, "Sampling seed")->capture_default_str();
  pairs->add_option("-o,--output", output, "Write the pairs here (.jsonl)");
  pairs->add_flag("--no-fill", no_fill, "Do not solidify the target voxels");
  pair_flags.attach(pairs);

  std::string policy_name = "greedy";
  std::string policy_cmd;
  double temperature = 0.0;
  double overflow = 2.0;
  DecodeBudgets budgets;
  std::string tokens_out;
  PhysicsFlags gen_flags;
  auto* gen = app.add_subcommand("generate", "Constrained generation toward a target");
  gen->add_option("--policy", policy_name, "uniform, greedy or external")
      ->check(CLI::IsMember({"uniform", "greedy", "external"}))
      ->capture_default_str();
  gen->add_option("--policy-cmd", policy_cmd, "Command running the external policy");
  gen->add_option("--target", target, "Point cloud (.xyz) or voxel grid (.json)")->required();
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--temperature", temperature, "Policy temperature")->capture_default_str();
  gen->add_option("--overflow-penalty", overflow, "Greedy penalty per cell outside the target")->capture_default_str();
  gen->add_option("--max-resamples", budgets.max_resamples_per_tuple, "Proposals per slot before forcing EOP")->capture_default_str();
  gen->add_option("--max-rollbacks", budgets.max_rollbacks, "Stability rollbacks before giving up")->capture_default_str();
  gen->add_option("--max-bricks", budgets.max_bricks, "Stop growing at this many bricks")->capture_default_str();
  gen->add_option("-o,--output", output, "Write the assembly JSON here");
  gen->add_option("--tokens", tokens_out, "Write the token sequence here");
  gen->add_flag("--no-fill", no_fill, "Do not solidify a point-cloud target");
  gen->add_flag("--float", keep_height, "Keep the target where voxelization centers it instead of resting it on z = 0");
  gen_flags.attach(gen);

  auto* ldr = app.add_subcommand("export-ldraw", "Assembly JSON to an LDraw model");
  ldr->add_option("input", input, "Assembly .json")->required();
  ldr->add_option("-o,--output", output, "Write the model here (.ldr)");

  std::string obj_out;
  auto* vox = app.add_subcommand("voxelize", "Point cloud or assembly to a voxel grid");
  vox->add_option("input", input, "Point cloud (.xyz) or assembly (.json)")->required();
  vox->add_option("-o,--output", output, "Write the grid here");
  vox->add_option("--obj", obj_out, "Also write the marching-cubes surface as OBJ");
  vox->add_flag("--no-fill", no_fill, "Do not solidify the interior");

  auto* stats = app.add_subcommand("stats", "Sequence length accounting");
  stats->add_option("input", input, "Assembly .json or token file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "UsageError"}, {"detail", e.what()}}.dump() << '\n';
    return 2;
  }

  if (*tok) {
    const TokenSequence s = tokenize(load_assembly(input));
    if (binary) {
      if (output.empty()) throw CLI::ValidationError("--binary", "requires -o");
      write_binary_file(output, to_binary(s));
    } else {
      emit(to_text(s), output);
    }
  } else if (*detok) {
    const TokenSequence s = read_token_file(input);
    const DetokenizeResult r = detokenize(s, lenient ? DetokenizeMode::kLenient : DetokenizeMode::kStrict);
    for (const std::string& w : r.warnings) std::cerr << json{{"warning", w}}.dump() << '\n';
    if (r.error) {
      std::cerr << json{{"error", error_code_name(r.error->code())}, {"detail", r.error->detail()}}.dump() << '\n';
    }
    emit(assembly_to_json(r.assembly), output);
  } else if (*round) {
    const BrickAssembly a = load_assembly(input);
    const TokenSequence s = tokenize(a);
    const BrickAssembly back = detokenize(s).assembly;
    const bool same = same_bricks(a.bricks(), back.bricks());
    std::cout << json{{"result", same ? "identical" : "different"}, {"bricks", a.size()}, {"tokens", s.size()}}.dump()
              << '\n';
    return same ? 0 : 1;
  } else if (*validate) {
    json out;
    if (is_json(input)) {
      const BrickAssembly a = load_assembly(input);
      const AttachmentGraph g = build_attachment_graph(a);
      const std::size_t components = component_count(g);
      // Only connected assemblies have a token sequence.
      if (components > 1) {
        throw Error(ErrorCode::kDisconnectedGraph, std::to_string(components) + " components");
      }
      out = {{"valid", true}, {"bricks", a.size()}, {"components", components}};
    } else {
      const TokenSequence s = read_token_file(input);
      detokenize(s, DetokenizeMode::kStrict);
      const SequenceStats st = sequence_stats(s);
      out = {{"valid", true}, {"bricks", st.bricks}, {"eop", st.eop_tokens}, {"length", st.length}};
    }
    std::cout << out.dump() << '\n';
  } else if (*stab) {
    emit(report_to_json(stability_scores(load_assembly(input), stab_flags.params)), output);
  } else if (*score || *pairs) {
    const PhysicsParams& params = *score ? score_flags.params : pair_flags.params;
    const PointCloud cloud = cloud_from_text(read_text_file(target));
    RewardOptions opts;
    opts.surface_samples = samples;
    opts.seed = seed;
    opts.solid_fill = !no_fill;
    std::vector<ScoredCandidate> scored;
    std::string lines;
    for (const std::string& path : candidates) {
      const BrickAssembly a = load_assembly(path);
      const RewardBreakdown r = total_reward(cloud, a, params, opts);
      scored.push_back({tokenize(a), r});
      json row = json::parse(reward_to_json(r));
      row["candidate"] = path;
      lines += row.dump() + '\n';
    }
    if (*score) {
      std::cout << lines;
    } else {
      std::string out;
      for (const PreferencePair& p : build_preference_pairs(scored, gap, floor, condition)) out += pair_to_json(p) + '\n';
      if (output.empty()) {
        std::cout << out;
      } else {
        write_text_file(output, out);
      }
    }
  } else if (*gen) {
    // Voxelization centers the target vertically; bricks only stand if the target rests on the ground.
    const VoxelGrid loaded = load_target(target, !no_fill);
    const VoxelGrid grid = keep_height ? loaded : drop_to_ground(loaded);
    std::unique_ptr<tools::SubprocessChannel> channel;
    std::unique_ptr<Policy> policy;
    if (policy_name == "uniform") {
      policy = std::make_unique<UniformLegalPolicy>();
    } else if (policy_name == "greedy") {
      policy = std::make_unique<GreedyGeometryPolicy>(temperature, overflow);
    } else {
      if (policy_cmd.empty()) throw CLI::ValidationError("--policy-cmd", "required with --policy external");
      channel = std::make_unique<tools::SubprocessChannel>(policy_cmd);
      policy = std::make_unique<ExternalPolicy>(*channel);
    }
    policy->set_temperature(temperature);
    const GenerateResult r = generate(*policy, grid, budgets, gen_flags.params, seed);
    if (!tokens_out.empty()) write_text_file(tokens_out, to_text(r.sequence) + '\n');
    if (!output.empty()) write_text_file(output, assembly_to_json(r.assembly) + '\n');
    json summary = json::parse(generate_result_to_json(r));
    summary["iou"] = iou(grid, voxelize_assembly(r.assembly));
    std::cout << summary.dump() << '\n';
  } else if (*ldr) {
    emit(export_ldraw(load_assembly(input), fs::path(input).stem().string()), output);
  } else if (*vox) {
    VoxelGrid grid = is_json(input) ? voxelize_assembly(load_assembly(input))
                                    : voxelize_points(cloud_from_text(read_text_file(input)), !no_fill);
    if (!obj_out.empty()) write_text_file(obj_out, mesh_to_obj(marching_cubes(grid)));
    emit(grid_to_json(grid), output);
  } else if (*stats) {
    const TokenSequence s = is_json(input) ? tokenize(load_assembly(input)) : read_token_file(input);
    const SequenceStats st = sequence_stats(s);
    std::cout << json{{"bricks", st.bricks},
                      {"eop", st.eop_tokens},
                      {"length", st.length},
                      {"bound", 5 * st.bricks + 2},
                      {"flat_length", 5 * st.bricks + 2},
                      {"codebook", kCodebookSize},
                      {"flat_codebook", kBaselineCodebookSize}}
                     .dump()
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << json{{"error", error_code_name(e.code())}, {"detail", e.detail()}}.dump() << '\n';
    return 1;
  } catch (const CLI::Error& e) {
    std::cerr << json{{"error", "UsageError"}, {"detail", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"detail", e.what()}}.dump() << '\n';
    return 1;
  }
}
