#ifndef LHSBA_ERROR_HPP
#define LHSBA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lhsba {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's documented domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A sample batch contained a zero row and cannot be normalized.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

// Operation not supported by this oracle kind (e.g. true_gradient on an MLP).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// The oracle could not answer: external process died, timed out, etc.
class OracleFailure : public Error {
 public:
  using Error::Error;
};

// The external oracle answered something outside the line protocol.
class ProtocolError : public OracleFailure {
 public:
  using OracleFailure::OracleFailure;
};

// Weights file could not be parsed or violates the model shape invariants.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration is malformed. `key()` names the offending key.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class InitFailed : public Error {
 public:
  using Error::Error;
};

class StepFailed : public Error {
 public:
  using Error::Error;
};

class EstimateDegenerate : public Error {
 public:
  using Error::Error;
};

// Raised by the query gate when the next query would exceed max_queries.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace lhsba

#endif  // LHSBA_ERROR_HPP
