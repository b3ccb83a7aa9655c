#ifndef LHSBA_EXPERIMENT_HPP
#define LHSBA_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lhsba/attack.hpp"
#include "lhsba/config.hpp"

namespace lhsba {

// Desk-scale analogue of one results-table cell.
struct SummaryRow {
  std::string oracle;
  std::string attack;
  SamplerKind sampler = SamplerKind::Lhs;
  std::uint64_t budget = 0;
  Statistic statistic = Statistic::Mean;
  double distortion = 0.0;
  int repetitions = 0;  // runs that reached an adversarial point within budget
  int failures = 0;     // runs that did not
};

struct RunRecord {
  std::size_t oracle_index = 0;
  std::size_t point_index = 0;
  std::size_t attack_index = 0;
  int repetition = 0;
  std::uint64_t seed = 0;
  std::uint64_t ledger_total = 0;
  AttackTrace trace;
  std::string message;
  std::string trace_file;
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  std::vector<SummaryRow> summary;
};

// Smallest distortion among trace rows whose cumulative query count is
// within `budget`; nullopt if none.
std::optional<double> distortion_at_budget(const AttackTrace& trace, std::uint64_t budget);

// Seed of one run. The attack index is deliberately not part of the hash:
// every attack config sees the same seed for a given (oracle, point,
// repetition), which pairs the sampler comparison (same initialization).
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t oracle_index, std::size_t point_index, int repetition);

// Runs every (oracle, point, attack, repetition) combination on a pool of
// config.workers threads, then folds the summary in config order. Individual
// run failures are recorded, never thrown. Writes traces/, runs.csv and
// summary.csv under output_dir when it is set.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::vector<SummaryRow> summarize(const ExperimentConfig& config, const std::vector<RunRecord>& runs);

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path);
void write_runs_csv(const ExperimentConfig& config, const std::vector<RunRecord>& runs,
                    const std::filesystem::path& path);

}  // namespace lhsba

#endif  // LHSBA_EXPERIMENT_HPP
