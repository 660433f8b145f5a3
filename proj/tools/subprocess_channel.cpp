#include "subprocess_channel.hpp"

#include <csignal>
#include <sys/wait.h>
#include <unistd.h>

#include "brickseq/error.hpp"

namespace brickseq::tools {

SubprocessChannel::SubprocessChannel(const std::string& command) {
  int down[2];
  int up[2];
  if (pipe(down) != 0 || pipe(up) != 0) throw Error(ErrorCode::kIoError, "pipe() failed");
  pid_ = fork();
  if (pid_ < 0) throw Error(ErrorCode::kIoError, "fork() failed");
  if (pid_ == 0) {
    dup2(down[0], STDIN_FILENO);
    dup2(up[1], STDOUT_FILENO);
    close(down[0]);
    close(down[1]);
    close(up[0]);
    close(up[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(down[0]);
  close(up[1]);
  // A policy that dies early must surface as an error, not kill us on write.
  std::signal(SIGPIPE, SIG_IGN);
  to_child_ = fdopen(down[1], "w");
  from_child_ = fdopen(up[0], "r");
}

SubprocessChannel::~SubprocessChannel() {
  if (to_child_) std::fclose(to_child_);
  if (from_child_) std::fclose(from_child_);
  if (pid_ > 0) {
    int status = 0;
    waitpid(pid_, &status, 0);
  }
}

void SubprocessChannel::send(const std::string& line) {
  if (std::fputs(line.c_str(), to_child_) < 0 || std::fputc('\n', to_child_) == EOF || std::fflush(to_child_) != 0) {
    throw Error(ErrorCode::kPolicyError, "external policy stopped reading");
  }
}

std::optional<std::string> SubprocessChannel::receive() {
  std::string line;
  int c;
  while ((c = std::fgetc(from_child_)) != EOF && c != '\n') line.push_back(static_cast<char>(c));
  if (c == EOF && line.empty()) return std::nullopt;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace brickseq::tools
