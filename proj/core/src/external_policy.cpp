#include "brickseq/external_policy.hpp"

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "brickseq/error.hpp"

namespace brickseq {

using nlohmann::json;

void StreamChannel::send(const std::string& line) {
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw Error(ErrorCode::kIoError, "policy channel closed for writing");
}

std::optional<std::string> StreamChannel::receive() {
  std::string line;
  if (!std::getline(in_, line)) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

namespace {

json state_ids(const DecodeState& state) {
  json ids = json::array();
  for (const Token& t : state.tokens) ids.push_back(t.id());
  return ids;
}

int field(const json& reply, const char* key) {
  const auto it = reply.find(key);
  if (it == reply.end() || !it->is_number_integer()) {
    throw Error(ErrorCode::kPolicyError, std::string("reply lacks integer field '") + key + "'");
  }
  return it->get<int>();
}

json parse_reply(const std::string& line) {
  json reply = json::parse(line, nullptr, false);
  if (reply.is_discarded() || !reply.is_object()) {
    throw Error(ErrorCode::kPolicyError, "policy reply is not a JSON object: " + line);
  }
  if (!reply.contains("action") || !reply["action"].is_string()) {
    throw Error(ErrorCode::kPolicyError, "policy reply has no action: " + line);
  }
  return reply;
}

}  // namespace

std::string ExternalPolicy::exchange(const std::string& request) {
  channel_.send(request);
  auto line = channel_.receive();
  if (!line) throw Error(ErrorCode::kPolicyError, "external policy closed its output");
  return *line;
}

Brick ExternalPolicy::propose_root(const VoxelGrid&, Rng&) {
  const json request = {{"state", json::array({Token::bos().id()})},
                        {"parent", nullptr},
                        {"group_f_floor", 0},
                        {"rejected", json::array()},
                        {"temperature", temperature_}};
  const json reply = parse_reply(exchange(request.dump()));
  if (reply["action"] != "root") throw Error(ErrorCode::kPolicyError, "expected a root action");
  return {field(reply, "h"), field(reply, "w"), field(reply, "x"), field(reply, "y"), field(reply, "z")};
}

Action ExternalPolicy::propose(const ProposalContext& ctx, Rng&) {
  const int p = ctx.state.current_parent();
  const Brick& b = ctx.state.assembly()[static_cast<std::size_t>(p)];
  json rejected = json::array();
  for (const ChildTuple& t : ctx.rejected) rejected.push_back({t.f, t.h, t.w, t.m});
  const json request = {{"state", state_ids(ctx.state)},
                        {"parent", {{"index", p}, {"x", b.x}, {"y", b.y}, {"z", b.z}, {"h", b.h}, {"w", b.w}}},
                        {"group_f_floor", ctx.state.last_f() + 1},
                        {"rejected", rejected},
                        {"temperature", temperature_}};
  const json reply = parse_reply(exchange(request.dump()));
  const std::string action = reply["action"];
  if (action == "eop") return Action::eop();
  if (action != "tuple") throw Error(ErrorCode::kPolicyError, "unknown action '" + action + "'");
  return Action::child({field(reply, "f"), field(reply, "h"), field(reply, "w"), field(reply, "m")});
}

}  // namespace brickseq
