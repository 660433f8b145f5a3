#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "brickseq/decode.hpp"

namespace brickseq {

/// Bidirectional line transport to an out-of-process policy.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void send(const std::string& line) = 0;
  /// Next line without its terminator, or nullopt at end of stream.
  virtual std::optional<std::string> receive() = 0;
};

class StreamChannel : public LineChannel {
 public:
  StreamChannel(std::istream& in, std::ostream& out) : in_(in), out_(out) {}
  void send(const std::string& line) override;
  std::optional<std::string> receive() override;

 private:
  std::istream& in_;
  std::ostream& out_;
};

/// Line-delimited JSON policy. Each request is
///   {"state": [ids...], "parent": {"index", "x", "y", "z", "h", "w"} | null,
///    "group_f_floor": int, "rejected": [[f, h, w, m], ...], "temperature": number}
/// and the reply is {"action": "tuple", "f", "h", "w", "m"}, {"action": "eop"}, or for
/// the root request (parent null) {"action": "root", "x", "y", "z", "h", "w"}.
/// Malformed replies throw Error(PolicyError).
class ExternalPolicy : public Policy {
 public:
  explicit ExternalPolicy(LineChannel& channel) : channel_(channel) {}

  std::string name() const override { return "external"; }
  Brick propose_root(const VoxelGrid& target, Rng& rng) override;
  Action propose(const ProposalContext& context, Rng& rng) override;

 private:
  std::string exchange(const std::string& request);
  LineChannel& channel_;
};

}  // namespace brickseq
