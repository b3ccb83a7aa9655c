#ifndef LHSBA_ORACLE_HPP
#define LHSBA_ORACLE_HPP

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "lhsba/mlp.hpp"
#include "lhsba/point.hpp"

namespace lhsba {

// Hard-label answer of the oracle: +1 adversarial, -1 not adversarial.
enum class Decision : int { Adversarial = 1, NotAdversarial = -1 };

inline int sign_of(Decision d) noexcept { return static_cast<int>(d); }
inline bool is_adversarial(Decision d) noexcept { return d == Decision::Adversarial; }

enum class Phase : std::size_t { Init = 0, BinSearch = 1, Gradient = 2, Step = 3 };
inline constexpr std::size_t kPhaseCount = 4;

std::string_view to_string(Phase phase) noexcept;

enum class AttackMode { Untargeted, Targeted };

std::string_view to_string(AttackMode mode) noexcept;
AttackMode parse_attack_mode(std::string_view text);

enum class OracleKind { Halfspace, Hypersphere, Mlp, External };

std::string_view to_string(OracleKind kind) noexcept;

// Query counter, one slot per phase. Increments are atomic so a ledger can be
// shared by concurrent probe workers.
class QueryLedger {
 public:
  QueryLedger() = default;
  QueryLedger(const QueryLedger&) = delete;
  QueryLedger& operator=(const QueryLedger&) = delete;

  void record(Phase phase) noexcept {
    counts_[static_cast<std::size_t>(phase)].fetch_add(1, std::memory_order_relaxed);
  }
  std::uint64_t count(Phase phase) const noexcept {
    return counts_[static_cast<std::size_t>(phase)].load(std::memory_order_relaxed);
  }
  std::uint64_t total() const noexcept {
    std::uint64_t sum = 0;
    for (const auto& c : counts_) sum += c.load(std::memory_order_relaxed);
    return sum;
  }

 private:
  std::array<std::atomic<std::uint64_t>, kPhaseCount> counts_{};
};

struct ExternalSettings {
  std::string command;  // run through /bin/sh -c
  double timeout_seconds = 10.0;
};

// Everything needed to build a decision oracle around an original x*.
struct OracleSpec {
  OracleKind kind = OracleKind::Hypersphere;
  AttackMode mode = AttackMode::Untargeted;
  Point original;
  std::optional<int> target_class;    // c+, targeted mode
  std::optional<int> original_class;  // c*, MLP; defaults to the model's label of x*

  // Halfspace: +1 iff normal . x + offset > 0
  Eigen::VectorXd normal;
  double offset = 0.0;

  // Hypersphere: +1 iff |x - x*| > radius
  double radius = 0.0;

  std::shared_ptr<const MlpModel> model;

  // External; the dimension is taken from `original`.
  ExternalSettings external;

  Eigen::Index dim() const;
  // Throws DomainError on invariant violations.
  void validate() const;
};

// Sign-only oracle. The only way to evaluate one is `decide`, which charges
// the ledger.
class DecisionOracle {
 public:
  virtual ~DecisionOracle() = default;

  virtual Eigen::Index dim() const = 0;
  virtual OracleKind kind() const = 0;

 protected:
  virtual Decision evaluate(const Point& x) = 0;

  friend Decision decide(DecisionOracle& oracle, const Point& x, QueryLedger& ledger,
                         Phase phase);
};

// One oracle query; increments `ledger` by exactly one under `phase`.
// Throws DomainError on dimension mismatch.
Decision decide(DecisionOracle& oracle, const Point& x, QueryLedger& ledger, Phase phase);

// Validates `spec` and builds the oracle. External oracles spawn their
// process and complete the handshake here.
std::unique_ptr<DecisionOracle> make_oracle(const OracleSpec& spec);

// Unit outward normal of the decision boundary through x. Halfspace and
// Hypersphere only; throws CapabilityError otherwise.
Point true_gradient(const OracleSpec& spec, const Point& x);

}  // namespace lhsba

#endif  // LHSBA_ORACLE_HPP
