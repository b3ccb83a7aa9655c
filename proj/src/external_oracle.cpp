#include "lhsba/external_oracle.hpp"

#include <cerrno>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstring>
#include <mutex>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "lhsba/error.hpp"
#include "lhsba/protocol.hpp"

namespace lhsba {

namespace {

std::string errno_text(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

void close_fd(int& fd) noexcept {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

ExternalProcess::ExternalProcess(const ExternalSettings& settings, Eigen::Index dim)
    : settings_(settings), dim_(dim) {
  if (settings_.command.empty()) throw OracleFailure("external oracle: empty command");
  if (dim_ < 1) throw DomainError("external oracle: dimension must be positive");

  int in_pipe[2];
  int out_pipe[2];
  if (::pipe2(in_pipe, O_CLOEXEC) != 0) throw OracleFailure(errno_text("pipe"));
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw OracleFailure(errno_text("pipe"));
  }

  static std::once_flag ignore_sigpipe;
  std::call_once(ignore_sigpipe, [] { std::signal(SIGPIPE, SIG_IGN); });

  const char* command = settings_.command.c_str();
  pid_ = ::fork();
  if (pid_ < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    throw OracleFailure(errno_text("fork"));
  }
  if (pid_ == 0) {
    // Own process group, so a kill also reaches whatever the shell spawned.
    ::setpgid(0, 0);
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command, static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];

  try {
    send_line(protocol::format_hello(dim_));
    const std::string reply = read_line();
    if (reply != "OK") throw ProtocolError("external oracle: expected OK after HELLO, got '" + reply + "'");
  } catch (...) {
    shutdown();
    throw;
  }
}

ExternalProcess::~ExternalProcess() { shutdown(); }

void ExternalProcess::send_line(const std::string& line) {
  std::string data = line;
  data.push_back('\n');
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    const ssize_t n = ::write(to_child_, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw OracleFailure(errno_text("external oracle: write"));
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

std::string ExternalProcess::read_line() {
  using clock = std::chrono::steady_clock;
  const auto deadline =
      clock::now() + std::chrono::duration_cast<clock::duration>(std::chrono::duration<double>(settings_.timeout_seconds));
  for (;;) {
    const auto newline = buffer_.find('\n');
    if (newline != std::string::npos) {
      std::string line = buffer_.substr(0, newline);
      buffer_.erase(0, newline + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
    if (remaining <= 0) throw OracleFailure("external oracle: timed out waiting for reply");
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw OracleFailure(errno_text("external oracle: poll"));
    }
    if (ready == 0) continue;
    char chunk[4096];
    const ssize_t n = ::read(from_child_, chunk, sizeof(chunk));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw OracleFailure(errno_text("external oracle: read"));
    }
    if (n == 0) throw OracleFailure("external oracle: process closed its output");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

void ExternalProcess::shutdown() noexcept {
  close_fd(to_child_);
  close_fd(from_child_);
  if (pid_ > 0) {
    // Give the child a moment to exit on EOF, then kill it.
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      ::usleep(2000);
    }
    ::kill(-pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

Decision external_decide(ExternalProcess& process, const Point& x) {
  if (x.size() != process.dim()) throw DomainError("external_decide: dimension mismatch");
  process.send_line(protocol::format_point(x));
  const std::string reply = process.read_line();
  const auto decision = protocol::parse_reply(reply);
  if (!decision) throw ProtocolError("external oracle: malformed reply '" + reply + "'");
  return *decision;
}

}  // namespace lhsba
