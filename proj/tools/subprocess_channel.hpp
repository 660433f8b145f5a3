#pragma once

#include <cstdio>
#include <optional>
#include <string>

#include "brickseq/external_policy.hpp"

namespace brickseq::tools {

/// Runs `command` through /bin/sh and talks to it over its stdin/stdout.
class SubprocessChannel : public LineChannel {
 public:
  explicit SubprocessChannel(const std::string& command);
  ~SubprocessChannel() override;
  SubprocessChannel(const SubprocessChannel&) = delete;
  SubprocessChannel& operator=(const SubprocessChannel&) = delete;

  void send(const std::string& line) override;
  std::optional<std::string> receive() override;

 private:
  int pid_ = -1;
  std::FILE* to_child_ = nullptr;
  std::FILE* from_child_ = nullptr;
};

}  // namespace brickseq::tools
