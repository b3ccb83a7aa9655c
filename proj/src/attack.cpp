#include "lhsba/attack.hpp"

#include <cmath>
#include <limits>

#include "lhsba/error.hpp"

namespace lhsba {

double AttackConfig::theta_for(Eigen::Index dim) const {
  if (theta) return *theta;
  return std::pow(static_cast<double>(dim), -1.5);
}

void AttackConfig::validate() const {
  if (initial_samples < 1) throw DomainError("attack: M0 must be >= 1");
  if (iterations < 1) throw DomainError("attack: T must be >= 1");
  if (theta && !(*theta > 0.0 && *theta < 1.0)) throw DomainError("attack: theta must lie in (0, 1)");
  if (!(clip_low < clip_high)) throw DomainError("attack: clip_low must be < clip_high");
  if (max_init_tries < 1) throw DomainError("attack: max_init_tries must be >= 1");
  if (max_step_retries < 0) throw DomainError("attack: max_step_retries must be >= 0");
  if (mode == AttackMode::Targeted && !init_target_image) {
    throw DomainError("attack: targeted mode requires an init target image");
  }
}

QueryGate::QueryGate(DecisionOracle& oracle, QueryLedger& ledger, const Point& original,
                     std::optional<std::uint64_t> max_queries)
    : oracle_(oracle),
      ledger_(ledger),
      original_(original),
      max_queries_(max_queries),
      best_distortion_(std::numeric_limits<double>::infinity()) {}

Decision QueryGate::ask(const Point& x, Phase phase) {
  if (max_queries_ && ledger_.total() >= *max_queries_) throw BudgetExhausted("query budget exhausted");
  const Decision d = decide(oracle_, x, ledger_, phase);
  if (is_adversarial(d) && phase != Phase::Gradient) {
    const double dist = l2_distance(x, original_);
    if (dist < best_distortion_) {
      best_distortion_ = dist;
      best_ = x;
    }
  }
  return d;
}

Point initialize_adversarial(QueryGate& gate, const Point& original, const AttackConfig& config,
                             const RandomStream& rng) {
  if (config.verify_original && is_adversarial(gate.ask(original, Phase::Init))) {
    throw DomainError("initialize_adversarial: the original is already adversarial");
  }
  if (config.mode == AttackMode::Targeted) {
    if (!config.init_target_image) throw InitFailed("targeted attack without an init target image");
    const Point start = clip(*config.init_target_image, config.clip_low, config.clip_high);
    if (!is_adversarial(gate.ask(start, Phase::Init))) throw InitFailed("init target image is not adversarial");
    return start;
  }
  RandomStream stream = rng;
  Point candidate(original.size());
  for (int attempt = 0; attempt < config.max_init_tries; ++attempt) {
    for (Eigen::Index i = 0; i < candidate.size(); ++i) {
      candidate[i] = stream.uniform(config.clip_low, config.clip_high);
    }
    if (is_adversarial(gate.ask(candidate, Phase::Init))) return candidate;
  }
  throw InitFailed("no adversarial uniform draw in " + std::to_string(config.max_init_tries) + " tries");
}

int bin_search_cost(double theta) {
  if (!(theta > 0.0)) throw DomainError("bin_search: theta must be positive");
  int steps = 0;
  for (double width = 1.0; width > theta; width *= 0.5) ++steps;
  return steps;
}

BoundaryPoint bin_search(QueryGate& gate, const Point& x_adv, const Point& original, double theta,
                         double clip_low, double clip_high) {
  if (!(theta > 0.0)) throw DomainError("bin_search: theta must be positive");
  if (x_adv.size() != original.size()) throw DomainError("bin_search: dimension mismatch");
  // alpha = 0 is x_adv (adversarial), alpha = 1 is x* (not adversarial).
  // Dyadic midpoints keep the bracket width an exact power of two.
  double adversarial_alpha = 0.0;
  double benign_alpha = 1.0;
  int steps = 0;
  const auto blend = [&](double alpha) {
    return clip(alpha * original + (1.0 - alpha) * x_adv, clip_low, clip_high);
  };
  while (benign_alpha - adversarial_alpha > theta) {
    const double mid = 0.5 * (adversarial_alpha + benign_alpha);
    ++steps;
    if (is_adversarial(gate.ask(blend(mid), Phase::BinSearch))) {
      adversarial_alpha = mid;
    } else {
      benign_alpha = mid;
    }
  }
  return BoundaryPoint{blend(adversarial_alpha), adversarial_alpha, benign_alpha - adversarial_alpha, steps};
}

GradientEstimate gradient_from_batch(QueryGate& gate, const Point& x_t, const SampleBatch& unit_batch,
                                     double delta, double clip_low, double clip_high) {
  if (!(delta > 0.0)) throw DomainError("estimate_gradient: delta must be positive");
  if (unit_batch.count() < 1) throw DomainError("estimate_gradient: empty batch");
  if (unit_batch.dim() != x_t.size()) throw DomainError("estimate_gradient: batch dimension mismatch");

  GradientEstimate est;
  est.sample_count = static_cast<int>(unit_batch.count());
  est.raw_mean = Point::Zero(x_t.size());
  Point probe(x_t.size());
  // Fixed reduction order (sample index) keeps the sum reproducible.
  for (Eigen::Index i = 0; i < unit_batch.count(); ++i) {
    probe = clip(x_t + delta * unit_batch.rows.row(i).transpose(), clip_low, clip_high);
    const Decision d = gate.ask(probe, Phase::Gradient);
    if (is_adversarial(d)) {
      ++est.agree_count;
      est.raw_mean += unit_batch.rows.row(i).transpose();
    } else {
      est.raw_mean -= unit_batch.rows.row(i).transpose();
    }
  }
  est.raw_mean /= static_cast<double>(unit_batch.count());
  const double norm = est.raw_mean.norm();
  if (norm > 1e-12 && std::isfinite(norm)) est.direction = est.raw_mean / norm;
  return est;
}

GradientEstimate estimate_gradient(QueryGate& gate, const Point& x_t, int sample_count, double delta,
                                   SamplerKind sampler, const RandomStream& rng, double clip_low,
                                   double clip_high) {
  if (sample_count < 1) throw DomainError("estimate_gradient: M must be >= 1");
  if (!(delta > 0.0)) throw DomainError("estimate_gradient: delta must be positive");
  for (int draw = 0; draw < 2; ++draw) {
    const SampleBatch batch = draw_unit_batch(sampler, sample_count, x_t.size(), rng.substream(draw));
    GradientEstimate est = gradient_from_batch(gate, x_t, batch, delta, clip_low, clip_high);
    if (est.direction.size() != 0) {
      est.draws = draw + 1;
      return est;
    }
  }
  throw EstimateDegenerate("estimate_gradient: sign-weighted mean vanished twice");
}

StepResult step_forward(QueryGate& gate, const Point& x_t, const GradientEstimate& grad, double epsilon,
                        const AttackConfig& config) {
  if (!(epsilon > 0.0)) throw DomainError("step_forward: epsilon must be positive");
  if (grad.direction.size() != x_t.size()) throw DomainError("step_forward: direction dimension mismatch");
  StepResult step;
  step.epsilon = epsilon;
  for (;;) {
    Point candidate = clip(x_t + step.epsilon * grad.direction, config.clip_low, config.clip_high);
    if (is_adversarial(gate.ask(candidate, Phase::Step))) {
      step.point = std::move(candidate);
      return step;
    }
    if (step.retries == config.max_step_retries) break;
    ++step.retries;
    step.epsilon *= 0.5;
  }
  throw StepFailed("step_forward: no adversarial candidate after " + std::to_string(config.max_step_retries) +
                   " halvings");
}

int schedule_sample_count(int t, int initial_samples) {
  if (t < 0) throw DomainError("schedule_M: t must be >= 0");
  if (initial_samples < 1) throw DomainError("schedule_M: M0 must be >= 1");
  return static_cast<int>(std::floor(initial_samples * std::pow(static_cast<double>(t + 1), 0.2)));
}

double schedule_delta(const Point& x_prev, const Point& original, Eigen::Index dim) {
  if (dim < 1) throw DomainError("schedule_delta: m must be positive");
  const double dist = l2_distance(x_prev, original);
  if (!(dist > 0.0)) throw DomainError("schedule_delta: iterate coincides with the original");
  return dist / static_cast<double>(dim);
}

double schedule_epsilon(int t, const Point& x_prev, const Point& original) {
  if (t < 1) throw DomainError("schedule_epsilon: t must be >= 1");
  const double dist = l2_distance(x_prev, original);
  if (!(dist > 0.0)) throw DomainError("schedule_epsilon: iterate coincides with the original");
  return dist / std::sqrt(static_cast<double>(t));
}

std::string_view to_string(AttackStatus status) noexcept {
  switch (status) {
    case AttackStatus::Completed: return "Completed";
    case AttackStatus::BudgetExhausted: return "BudgetExhausted";
    case AttackStatus::InitFailed: return "InitFailed";
    case AttackStatus::OracleFailed: return "OracleFailed";
  }
  return "?";
}

std::optional<AttackStatus> parse_attack_status(std::string_view text) noexcept {
  for (auto s : {AttackStatus::Completed, AttackStatus::BudgetExhausted, AttackStatus::InitFailed,
                 AttackStatus::OracleFailed}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

double AttackResult::distortion(const Point& original) const {
  if (!adversarial) return std::numeric_limits<double>::infinity();
  return l2_distance(*adversarial, original);
}

namespace {

// Substream layout under the run seed.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kIterationStreams = 1;  // iteration t uses substream(kIterationStreams + t)

}  // namespace

AttackResult run_attack(DecisionOracle& oracle, const Point& original, const AttackConfig& config,
                        QueryLedger& ledger) {
  config.validate();
  if (original.size() != oracle.dim()) throw DomainError("run_attack: original dimension != oracle dimension");

  const Eigen::Index m = original.size();
  const double theta = config.theta_for(m);
  const RandomStream root(config.seed);
  QueryGate gate(oracle, ledger, original, config.max_queries);

  AttackResult result;
  auto& rows = result.trace.rows;
  std::optional<Point> current;
  TraceRow pending;
  bool in_iteration = false;

  const auto finish = [&](AttackStatus status, std::string message) {
    result.trace.status = status;
    result.message = std::move(message);
    result.queries = ledger.total();
    return result;
  };

  try {
    const Point start = initialize_adversarial(gate, original, config, root.substream(kInitStream));
    current = start;
    const BoundaryPoint projected = bin_search(gate, start, original, theta, config.clip_low, config.clip_high);
    current = projected.point;
    TraceRow row;
    row.queries = ledger.total();
    row.distortion = l2_distance(*current, original);
    row.binsearch_steps = projected.steps;
    rows.push_back(row);

    int consecutive_failures = 0;
    for (int t = 1; t <= config.iterations; ++t) {
      const RandomStream stream = root.substream(kIterationStreams + static_cast<std::uint64_t>(t));
      pending = TraceRow{};
      pending.t = t;
      pending.sample_count = schedule_sample_count(t - 1, config.initial_samples);
      pending.delta = schedule_delta(*current, original, m);
      pending.epsilon = schedule_epsilon(t, *current, original);
      in_iteration = true;

      const GradientEstimate grad = estimate_gradient(gate, *current, pending.sample_count, pending.delta,
                                                      config.sampler, stream, config.clip_low, config.clip_high);
      pending.agree_count = grad.agree_count;

      bool stalled = false;
      try {
        const StepResult step = step_forward(gate, *current, grad, pending.epsilon, config);
        pending.step_retries = step.retries;
        const BoundaryPoint next =
            bin_search(gate, step.point, original, theta, config.clip_low, config.clip_high);
        pending.binsearch_steps = next.steps;
        current = next.point;
        consecutive_failures = 0;
      } catch (const StepFailed&) {
        // Keep x_t; the next iteration draws a fresh batch from its own substream.
        pending.step_retries = config.max_step_retries;
        stalled = ++consecutive_failures == 2;
      }
      pending.queries = ledger.total();
      pending.distortion = l2_distance(*current, original);
      rows.push_back(pending);
      in_iteration = false;
      if (stalled) {
        result.adversarial = current;
        return finish(AttackStatus::Completed, "stopped after two consecutive failed steps");
      }
    }
    result.adversarial = current;
    return finish(AttackStatus::Completed, {});
  } catch (const BudgetExhausted& e) {
    result.adversarial = gate.best_adversarial();
    if (result.adversarial) {
      if (!in_iteration) {
        pending = TraceRow{};
        pending.t = static_cast<int>(rows.size());
      }
      pending.queries = ledger.total();
      pending.distortion = gate.best_distortion();
      rows.push_back(pending);
    }
    return finish(AttackStatus::BudgetExhausted, e.what());
  } catch (const InitFailed& e) {
    return finish(AttackStatus::InitFailed, e.what());
  } catch (const OracleFailure& e) {
    result.adversarial = current;
    return finish(AttackStatus::OracleFailed, e.what());
  } catch (const EstimateDegenerate& e) {
    result.adversarial = current;
    return finish(AttackStatus::Completed, e.what());
  }
}

AttackResult run_attack(DecisionOracle& oracle, const Point& original, const AttackConfig& config) {
  QueryLedger ledger;
  return run_attack(oracle, original, config, ledger);
}

}  // namespace lhsba
