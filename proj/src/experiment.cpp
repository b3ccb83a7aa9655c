#include "lhsba/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "lhsba/error.hpp"
#include "lhsba/protocol.hpp"
#include "lhsba/random.hpp"
#include "lhsba/trace_csv.hpp"

namespace lhsba {

std::optional<double> distortion_at_budget(const AttackTrace& trace, std::uint64_t budget) {
  std::optional<double> best;
  for (const auto& row : trace.rows) {
    if (row.queries > budget) break;
    if (!best || row.distortion < *best) best = row.distortion;
  }
  return best;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t oracle_index, std::size_t point_index, int repetition) {
  return base_seed ^ hash_indices({oracle_index, point_index, static_cast<std::uint64_t>(repetition)});
}

namespace {

struct Job {
  std::size_t oracle_index;
  std::size_t point_index;
  std::size_t attack_index;
  int repetition;
};

std::string trace_name(const ExperimentConfig& config, const Job& job) {
  return config.oracles[job.oracle_index].name + "__" + config.attacks[job.attack_index].name + "__p" +
         std::to_string(job.point_index) + "__r" + std::to_string(job.repetition) + ".csv";
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();

  ModelCache models;
  std::vector<std::vector<Point>> points;  // per oracle
  for (const auto& oracle : config.oracles) {
    points.push_back(resolve_points(config.points, oracle_dim(oracle, &models)));
    if (points.back().empty()) throw ConfigError("points", "no points resolved");
  }
  // Init images are loaded once; load errors surface as config errors.
  std::vector<std::optional<Point>> init_images;
  for (const auto& attack : config.attacks) {
    init_images.push_back(attack.init_image.empty() ? std::nullopt
                                                    : attack.to_config(0).init_target_image);
  }

  std::vector<Job> jobs;
  for (std::size_t o = 0; o < config.oracles.size(); ++o) {
    for (std::size_t p = 0; p < points[o].size(); ++p) {
      for (std::size_t a = 0; a < config.attacks.size(); ++a) {
        for (int r = 0; r < config.repetitions; ++r) jobs.push_back({o, p, a, r});
      }
    }
  }

  const std::filesystem::path out_dir = config.output_dir;
  const bool write_files = !config.output_dir.empty();
  if (write_files) std::filesystem::create_directories(out_dir / "traces");

  ExperimentResult result;
  result.runs.resize(jobs.size());

  const auto run_job = [&](std::size_t index) {
    const Job& job = jobs[index];
    RunRecord& record = result.runs[index];
    record.oracle_index = job.oracle_index;
    record.point_index = job.point_index;
    record.attack_index = job.attack_index;
    record.repetition = job.repetition;
    record.seed = run_seed(config.base_seed, job.oracle_index, job.point_index, job.repetition);
    const Point& original = points[job.oracle_index][job.point_index];
    try {
      const OracleSpec spec = make_oracle_spec(config.oracles[job.oracle_index], original, &models);
      auto oracle = make_oracle(spec);
      AttackConfig attack;
      {
        const AttackEntry& entry = config.attacks[job.attack_index];
        attack = entry.to_config(record.seed);
        attack.init_target_image = init_images[job.attack_index];
      }
      QueryLedger ledger;
      AttackResult run = run_attack(*oracle, original, attack, ledger);
      record.trace = std::move(run.trace);
      record.message = std::move(run.message);
      record.ledger_total = ledger.total();
    } catch (const OracleFailure& e) {
      record.trace.status = AttackStatus::OracleFailed;
      record.message = e.what();
    } catch (const std::exception& e) {
      record.trace.status = AttackStatus::OracleFailed;
      record.message = std::string("run setup failed: ") + e.what();
    }
    if (write_files && config.write_traces) {
      record.trace_file = (std::filesystem::path("traces") / trace_name(config, job)).string();
      emit_trace_csv(record.trace, out_dir / record.trace_file);
    }
  };

  const int workers = std::min<int>(config.workers, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          try {
            run_job(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  result.summary = summarize(config, result.runs);
  if (write_files) {
    write_summary_csv(result.summary, out_dir / "summary.csv");
    write_runs_csv(config, result.runs, out_dir / "runs.csv");
  }
  return result;
}

std::vector<SummaryRow> summarize(const ExperimentConfig& config, const std::vector<RunRecord>& runs) {
  std::vector<SummaryRow> rows;
  for (std::size_t o = 0; o < config.oracles.size(); ++o) {
    for (std::size_t a = 0; a < config.attacks.size(); ++a) {
      for (const auto budget : config.budgets) {
        std::vector<double> values;
        int failures = 0;
        for (const auto& run : runs) {
          if (run.oracle_index != o || run.attack_index != a) continue;
          if (auto d = distortion_at_budget(run.trace, budget)) {
            values.push_back(*d);
          } else {
            ++failures;
          }
        }
        for (const auto stat : config.statistics) {
          SummaryRow row;
          row.oracle = config.oracles[o].name;
          row.attack = config.attacks[a].name;
          row.sampler = config.attacks[a].sampler;
          row.budget = budget;
          row.statistic = stat;
          row.repetitions = static_cast<int>(values.size());
          row.failures = failures;
          if (values.empty()) {
            row.distortion = std::numeric_limits<double>::quiet_NaN();
          } else if (stat == Statistic::Mean) {
            row.distortion = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
          } else {
            row.distortion = median(values);
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }
  return rows;
}

void write_summary_csv(const std::vector<SummaryRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "oracle,attack,sampler,budget,statistic,distortion,repetitions,failures\n";
  for (const auto& r : rows) {
    out << r.oracle << ',' << r.attack << ',' << to_string(r.sampler) << ',' << r.budget << ','
        << to_string(r.statistic) << ',' << protocol::format_real(r.distortion) << ',' << r.repetitions << ','
        << r.failures << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

void write_runs_csv(const ExperimentConfig& config, const std::vector<RunRecord>& runs,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << "oracle,attack,sampler,point,repetition,seed,status,queries,final_distortion,trace_file\n";
  for (const auto& r : runs) {
    const double final_distortion = r.trace.rows.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                         : r.trace.rows.back().distortion;
    out << config.oracles[r.oracle_index].name << ',' << config.attacks[r.attack_index].name << ','
        << to_string(config.attacks[r.attack_index].sampler) << ',' << r.point_index << ',' << r.repetition << ','
        << r.seed << ',' << to_string(r.trace.status) << ',' << r.ledger_total << ','
        << protocol::format_real(final_distortion) << ',' << r.trace_file << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace lhsba
