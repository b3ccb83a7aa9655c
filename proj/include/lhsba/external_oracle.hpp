#ifndef LHSBA_EXTERNAL_ORACLE_HPP
#define LHSBA_EXTERNAL_ORACLE_HPP

#include <string>
#include <sys/types.h>

#include "lhsba/oracle.hpp"

namespace lhsba {

// Child process speaking the oracle line protocol over its stdin/stdout.
// Requests are serialized; one instance must not be shared between threads.
class ExternalProcess {
 public:
  // Spawns `settings.command` via /bin/sh -c and performs the HELLO
  // handshake. Throws OracleFailure / ProtocolError.
  ExternalProcess(const ExternalSettings& settings, Eigen::Index dim);
  ~ExternalProcess();

  ExternalProcess(const ExternalProcess&) = delete;
  ExternalProcess& operator=(const ExternalProcess&) = delete;

  Eigen::Index dim() const noexcept { return dim_; }

  void send_line(const std::string& line);
  // Reads one '\n'-terminated line (without the newline). Throws
  // OracleFailure on timeout or EOF.
  std::string read_line();

 private:
  void shutdown() noexcept;

  ExternalSettings settings_;
  Eigen::Index dim_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// One request/reply exchange. Throws ProtocolError on a malformed reply.
Decision external_decide(ExternalProcess& process, const Point& x);

class ExternalOracle final : public DecisionOracle {
 public:
  ExternalOracle(const ExternalSettings& settings, Eigen::Index dim)
      : process_(settings, dim) {}

  Eigen::Index dim() const override { return process_.dim(); }
  OracleKind kind() const override { return OracleKind::External; }

 protected:
  Decision evaluate(const Point& x) override { return external_decide(process_, x); }

 private:
  ExternalProcess process_;
};

}  // namespace lhsba

#endif  // LHSBA_EXTERNAL_ORACLE_HPP
