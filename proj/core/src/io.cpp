#include "brickseq/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "brickseq/error.hpp"

namespace brickseq {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::kParseError, std::string("invalid JSON in ") + what);
  return j;
}

template <typename T>
T get(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::kParseError, std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::kParseError, std::string("field '") + key + "' has the wrong type");
  }
}

json ids_of(std::span<const Token> tokens) {
  json ids = json::array();
  for (const Token& t : tokens) ids.push_back(t.id());
  return ids;
}

TokenSequence tokens_of(const json& ids) {
  if (!ids.is_array()) throw Error(ErrorCode::kParseError, "token list must be an array of ids");
  TokenSequence out;
  for (const json& v : ids) {
    if (!v.is_number_unsigned() || v.get<unsigned>() > 255) {
      throw Error(ErrorCode::kParseError, "token id must be an integer in [0, 255]");
    }
    out.push_back(Token::from_id(static_cast<std::uint8_t>(v.get<unsigned>())));
  }
  return out;
}

json cell_json(Cell3 c) { return {c.x, c.y, c.z}; }

Cell3 cell_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorCode::kParseError, "cell must be [x, y, z]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::string assembly_to_json(const BrickAssembly& assembly) {
  json bricks = json::array();
  for (const Brick& b : assembly.bricks()) {
    bricks.push_back({{"h", b.h}, {"w", b.w}, {"x", b.x}, {"y", b.y}, {"z", b.z}});
  }
  return json{{"bricks", bricks}}.dump();
}

BrickAssembly assembly_from_json(std::string_view text) {
  const json j = parse_json(text, "assembly");
  if (!j.is_object() || !j.contains("bricks") || !j["bricks"].is_array()) {
    throw Error(ErrorCode::kParseError, "assembly JSON needs a \"bricks\" array");
  }
  std::vector<Brick> bricks;
  for (const json& b : j["bricks"]) {
    bricks.push_back({get<int>(b, "h"), get<int>(b, "w"), get<int>(b, "x"), get<int>(b, "y"), get<int>(b, "z")});
  }
  return BrickAssembly(bricks);
}

std::string report_to_json(const StabilityReport& r) {
  json contacts = json::array();
  for (const StudContact& c : r.contacts) {
    contacts.push_back({{"lower", c.lower}, {"upper", c.upper}, {"cell", cell_json(c.cell)}});
  }
  json ground = json::array();
  for (const GroundContact& g : r.ground) ground.push_back({{"brick", g.brick}, {"cell", {g.cell.x, g.cell.y}}});
  std::vector<int> grounded(r.grounded.begin(), r.grounded.end());
  const json j = {{"scores", r.scores},
                  {"feasible", r.feasible},
                  {"min_score", r.min_score()},
                  {"contacts", contacts},
                  {"contact_forces", r.contact_forces},
                  {"ground", ground},
                  {"ground_forces", r.ground_forces},
                  {"brick_slack", r.brick_slack},
                  {"grounded", grounded},
                  {"tension_scale", r.tension_scale},
                  {"iterations", r.iterations}};
  return j.dump();
}

StabilityReport report_from_json(std::string_view text) {
  const json j = parse_json(text, "stability report");
  StabilityReport r;
  r.scores = get<std::vector<double>>(j, "scores");
  r.feasible = get<bool>(j, "feasible");
  if (j.contains("contacts")) {
    for (const json& c : j["contacts"]) r.contacts.push_back({get<int>(c, "lower"), get<int>(c, "upper"), cell_from(c["cell"])});
    for (const json& g : j["ground"]) {
      const auto cell = get<std::vector<int>>(g, "cell");
      if (cell.size() != 2) throw Error(ErrorCode::kParseError, "ground cell must be [x, y]");
      r.ground.push_back({get<int>(g, "brick"), {cell[0], cell[1]}});
    }
    r.contact_forces = get<std::vector<double>>(j, "contact_forces");
    r.ground_forces = get<std::vector<double>>(j, "ground_forces");
    r.brick_slack = get<std::vector<double>>(j, "brick_slack");
    for (int g : get<std::vector<int>>(j, "grounded")) r.grounded.push_back(g != 0);
    r.tension_scale = get<double>(j, "tension_scale");
    r.iterations = get<int>(j, "iterations");
  }
  return r;
}

std::string reward_to_json(const RewardBreakdown& r) {
  return json{{"r_iou", r.r_iou},   {"d_cd", r.d_cd},         {"r_cd", r.r_cd},
              {"r_geo", r.r_geo},   {"r_stable", r.r_stable}, {"r_total", r.r_total}}
      .dump();
}

RewardBreakdown reward_from_json(std::string_view text) {
  const json j = parse_json(text, "reward");
  return {get<double>(j, "r_iou"), get<double>(j, "d_cd"),     get<double>(j, "r_cd"),
          get<double>(j, "r_geo"), get<double>(j, "r_stable"), get<double>(j, "r_total")};
}

std::string pair_to_json(const PreferencePair& p) {
  return json{{"condition", p.condition_id},
              {"winner", p.winner},
              {"loser", p.loser},
              {"chosen", ids_of(p.chosen)},
              {"rejected", ids_of(p.rejected)},
              {"reward_chosen", p.reward_chosen},
              {"reward_rejected", p.reward_rejected},
              {"gap", p.gap}}
      .dump();
}

PreferencePair pair_from_json(std::string_view text) {
  const json j = parse_json(text, "preference pair");
  PreferencePair p;
  p.condition_id = get<std::string>(j, "condition");
  p.winner = get<std::size_t>(j, "winner");
  p.loser = get<std::size_t>(j, "loser");
  p.chosen = tokens_of(j.at("chosen"));
  p.rejected = tokens_of(j.at("rejected"));
  p.reward_chosen = get<double>(j, "reward_chosen");
  p.reward_rejected = get<double>(j, "reward_rejected");
  p.gap = get<double>(j, "gap");
  return p;
}

std::string grid_to_json(const VoxelGrid& grid) {
  json cells = json::array();
  for (int z = 0; z < kWorkspace; ++z) {
    for (int y = 0; y < kWorkspace; ++y) {
      for (int x = 0; x < kWorkspace; ++x) {
        if (grid({x, y, z})) cells.push_back({x, y, z});
      }
    }
  }
  return json{{"size", kWorkspace}, {"cells", cells}}.dump();
}

VoxelGrid grid_from_json(std::string_view text) {
  const json j = parse_json(text, "voxel grid");
  if (get<int>(j, "size") != kWorkspace) throw Error(ErrorCode::kParseError, "voxel grids must be 20^3");
  VoxelGrid grid;
  for (const json& c : j.at("cells")) {
    const Cell3 cell = cell_from(c);
    if (!in_workspace(cell)) throw Error(ErrorCode::kParseError, "voxel cell outside the grid");
    grid.set(cell);
  }
  return grid;
}

std::string generate_result_to_json(const GenerateResult& r) {
  json reasons = json::object();
  for (std::size_t i = 0; i < kRejectReasonCount; ++i) {
    reasons[std::string(reject_reason_name(static_cast<RejectReason>(i)))] = r.trace.rejected_reasons[i];
  }
  json events = json::array();
  for (const RollbackEvent& e : r.trace.rollback_events) {
    events.push_back({{"from_length", e.from_length},
                      {"to_length", e.to_length},
                      {"unstable_brick", e.unstable_brick},
                      {"parent", e.parent}});
  }
  json j = {{"assembly", json::parse(assembly_to_json(r.assembly))},
            {"sequence", to_text(r.sequence)},
            {"ids", ids_of(r.sequence)},
            {"stable", r.stable},
            {"scores", r.report.scores},
            {"min_score", r.report.min_score()},
            {"trace",
             {{"resamples", r.trace.resamples},
              {"rollbacks", r.trace.rollbacks},
              {"forced_eops", r.trace.forced_eops},
              {"rejected_reasons", reasons},
              {"rollback_events", events}}}};
  j["exhausted"] = r.exhausted ? json(*r.exhausted) : json(nullptr);
  return j.dump();
}

std::string cloud_to_text(const PointCloud& cloud) {
  std::string out;
  for (std::size_t i = 0; i < cloud.points.size(); ++i) {
    const Vec3& p = cloud.points[i];
    out += format_double(p.x) + ' ' + format_double(p.y) + ' ' + format_double(p.z);
    if (cloud.has_normals()) {
      const Vec3& n = cloud.normals[i];
      out += ' ' + format_double(n.x) + ' ' + format_double(n.y) + ' ' + format_double(n.z);
    }
    out += '\n';
  }
  return out;
}

PointCloud cloud_from_text(std::string_view text) {
  PointCloud cloud;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  int width = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::vector<double> v;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (true) {
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r' || *p == ',')) ++p;
      if (p >= end) break;
      double d = 0.0;
      const auto [next, ec] = std::from_chars(p, end, d);
      if (ec != std::errc{}) {
        throw Error(ErrorCode::kParseError, "line " + std::to_string(lineno) + ": not a number");
      }
      v.push_back(d);
      p = next;
    }
    if (v.empty()) continue;
    if (v.size() != 3 && v.size() != 6) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(lineno) + ": expected 3 or 6 values");
    }
    if (width >= 0 && static_cast<int>(v.size()) != width) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(lineno) + ": mixed point formats");
    }
    width = static_cast<int>(v.size());
    cloud.points.push_back({v[0], v[1], v[2]});
    if (v.size() == 6) cloud.normals.push_back({v[3], v[4], v[5]});
  }
  return cloud;
}

std::string mesh_to_obj(const SurfaceMesh& mesh) {
  std::string out;
  for (const Vec3& v : mesh.vertices) {
    out += "v " + format_double(v.x) + ' ' + format_double(v.y) + ' ' + format_double(v.z) + '\n';
  }
  for (const auto& t : mesh.triangles) {
    out += "f " + std::to_string(t[0] + 1) + ' ' + std::to_string(t[1] + 1) + ' ' + std::to_string(t[2] + 1) + '\n';
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
  const std::string s = read_text_file(path);
  return {s.begin(), s.end()};
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

void write_binary_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  write_text_file(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

TokenSequence read_token_file(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_binary_file(path);
  if (bytes.size() >= 4) {
    std::uint32_t n = 0;
    for (int i = 0; i < 4; ++i) n |= static_cast<std::uint32_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
    if (bytes.size() == 4 + static_cast<std::size_t>(n)) return parse_binary(bytes);
  }
  return parse_text(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace brickseq
