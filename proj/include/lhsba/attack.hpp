#ifndef LHSBA_ATTACK_HPP
#define LHSBA_ATTACK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lhsba/oracle.hpp"
#include "lhsba/point.hpp"
#include "lhsba/random.hpp"
#include "lhsba/sampler.hpp"

namespace lhsba {

// Hyperparameters of one attack run. Defaults: M0 = 100, T = 64,
// theta = m^(-3/2), clipping to [0, 1].
struct AttackConfig {
  int initial_samples = 100;  // M0
  int iterations = 64;        // T
  std::optional<double> theta;
  std::optional<std::uint64_t> max_queries;
  SamplerKind sampler = SamplerKind::Lhs;
  AttackMode mode = AttackMode::Untargeted;
  std::uint64_t seed = 0;
  std::optional<Point> init_target_image;
  int max_init_tries = 1000;
  int max_step_retries = 30;
  double clip_low = 0.0;
  double clip_high = 1.0;
  // Spend one init-phase query confirming decide(x*) = -1 before starting.
  bool verify_original = false;

  double theta_for(Eigen::Index dim) const;
  // Throws DomainError on invariant violations.
  void validate() const;
};

// All oracle access of an attack goes through a gate: it forwards to
// `decide`, enforces the query budget before every call, and remembers the
// closest adversarial point seen on the attack path (init, bisection and
// step candidates; gradient probes are excluded).
class QueryGate {
 public:
  QueryGate(DecisionOracle& oracle, QueryLedger& ledger, const Point& original,
            std::optional<std::uint64_t> max_queries = std::nullopt);

  // Throws BudgetExhausted if the budget is already spent.
  Decision ask(const Point& x, Phase phase);

  std::uint64_t used() const noexcept { return ledger_.total(); }
  std::optional<std::uint64_t> max_queries() const noexcept { return max_queries_; }
  const QueryLedger& ledger() const noexcept { return ledger_; }
  Eigen::Index dim() const { return oracle_.dim(); }
  const Point& original() const noexcept { return original_; }

  const std::optional<Point>& best_adversarial() const noexcept { return best_; }
  double best_distortion() const noexcept { return best_distortion_; }

 private:
  DecisionOracle& oracle_;
  QueryLedger& ledger_;
  Point original_;
  std::optional<std::uint64_t> max_queries_;
  std::optional<Point> best_;
  double best_distortion_;
};

// Result of projecting onto the boundary along the segment towards x*.
// `alpha` is the adversarial end of the final bracket in the blend
// alpha * x* + (1 - alpha) * x_adv.
struct BoundaryPoint {
  Point point;
  double alpha = 0.0;
  double alpha_gap = 1.0;
  int steps = 0;
};

struct GradientEstimate {
  Point direction;  // unit norm
  Point raw_mean;   // (1/M) sum_i C(x_t + delta n_i) n_i
  int agree_count = 0;
  int sample_count = 0;
  int draws = 1;  // 2 when the first batch degenerated and was redrawn
};

struct StepResult {
  Point point;
  double epsilon = 0.0;  // step length that was accepted
  int retries = 0;       // number of halvings
};

// Untargeted: uniform draws in the clip box until one is adversarial.
// Targeted: the configured init image, verified with one query.
// Throws InitFailed.
Point initialize_adversarial(QueryGate& gate, const Point& original, const AttackConfig& config,
                             const RandomStream& rng);

// Number of bisection queries for threshold theta: ceil(log2(1 / theta)).
int bin_search_cost(double theta);

// Bisection on alpha in [0, 1]; every blend is clipped before querying.
// Exactly bin_search_cost(theta) queries. Preconditions (x_adv adversarial,
// x* not) are the caller's responsibility and are not re-queried.
BoundaryPoint bin_search(QueryGate& gate, const Point& x_adv, const Point& original, double theta,
                         double clip_low = 0.0, double clip_high = 1.0);

// Sign-weighted mean of probe directions for a given batch of unit vectors.
// Exactly batch.count() queries. Returns raw_mean with an empty direction
// when the mean is numerically zero.
GradientEstimate gradient_from_batch(QueryGate& gate, const Point& x_t, const SampleBatch& unit_batch,
                                     double delta, double clip_low = 0.0, double clip_high = 1.0);

// Draws `sample_count` unit vectors from `rng` and calls gradient_from_batch.
// A numerically zero mean is redrawn once from a fresh substream; a second one
// throws EstimateDegenerate.
GradientEstimate estimate_gradient(QueryGate& gate, const Point& x_t, int sample_count, double delta,
                                   SamplerKind sampler, const RandomStream& rng,
                                   double clip_low = 0.0, double clip_high = 1.0);

// x_t + epsilon * direction, clipped; epsilon is halved on every
// non-adversarial candidate, at most max_step_retries times. Throws StepFailed.
StepResult step_forward(QueryGate& gate, const Point& x_t, const GradientEstimate& grad,
                        double epsilon, const AttackConfig& config);

// M_t = floor(M0 * (t + 1)^(1/5)); t = 0 gives M0.
int schedule_sample_count(int t, int initial_samples);
// |x_prev - x*| / m
double schedule_delta(const Point& x_prev, const Point& original, Eigen::Index dim);
// |x_prev - x*| / sqrt(t), t >= 1
double schedule_epsilon(int t, const Point& x_prev, const Point& original);

enum class AttackStatus { Completed, BudgetExhausted, InitFailed, OracleFailed };

std::string_view to_string(AttackStatus status) noexcept;
std::optional<AttackStatus> parse_attack_status(std::string_view text) noexcept;

// One row per iteration. Row t = 0 is the projected initialization (no
// gradient step, schedule fields zero).
struct TraceRow {
  int t = 0;
  int sample_count = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  std::uint64_t queries = 0;
  double distortion = 0.0;
  int agree_count = 0;
  int step_retries = 0;
  int binsearch_steps = 0;

  bool operator==(const TraceRow&) const = default;
};

struct AttackTrace {
  std::vector<TraceRow> rows;
  AttackStatus status = AttackStatus::Completed;

  bool operator==(const AttackTrace&) const = default;
};

struct AttackResult {
  std::optional<Point> adversarial;
  AttackTrace trace;
  std::uint64_t queries = 0;
  std::string message;  // diagnostic for non-Completed runs

  double distortion(const Point& original) const;
};

// The full loop: init, project, then T rounds of
// {schedules, estimate_gradient, step_forward, bin_search}.
//
// Never throws for InitFailed / OracleFailed / budget exhaustion; those end
// the run with the matching status and the trace recorded so far. On budget
// exhaustion the closest adversarial point found is returned and a final
// partial row carries its distortion and the ledger total.
AttackResult run_attack(DecisionOracle& oracle, const Point& original, const AttackConfig& config,
                        QueryLedger& ledger);
AttackResult run_attack(DecisionOracle& oracle, const Point& original, const AttackConfig& config);

}  // namespace lhsba

#endif  // LHSBA_ATTACK_HPP
