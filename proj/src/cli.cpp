#include "lhsba/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lhsba/attack.hpp"
#include "lhsba/config.hpp"
#include "lhsba/error.hpp"
#include "lhsba/experiment.hpp"
#include "lhsba/protocol.hpp"
#include "lhsba/sampler.hpp"
#include "lhsba/trace_csv.hpp"

namespace lhsba {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct PointOptions {
  std::string points_file;
  std::size_t point_index = 0;
  double fill = 0.5;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--points", points_file, "Points file; the original is line --point-index");
    cmd->add_option("--point-index", point_index, "Index into --points")->capture_default_str();
    cmd->add_option("--fill", fill, "Constant original point when no --points file is given")->capture_default_str();
  }

  Point resolve(Eigen::Index dim) const {
    if (points_file.empty()) return Point::Constant(dim, fill);
    const auto points = load_points(points_file);
    if (point_index >= points.size()) throw ConfigError("--point-index", "out of range");
    if (points[point_index].size() != dim) throw ConfigError("--points", "dimension does not match the oracle");
    return points[point_index];
  }
};

struct AttackOptions {
  std::string oracle;
  std::string sampler = "lhs";
  std::string mode = "untargeted";
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  std::string output = "trace.csv";
  std::string output_point;
  int initial_samples = 100;
  int iterations = 64;
  std::optional<double> theta;
  int max_init_tries = 1000;
  int max_step_retries = 30;
  bool verify_original = false;
  std::string init_image;
  PointOptions point;
};

int run_attack_command(const AttackOptions& opt) {
  ModelCache cache;
  const OracleEntry entry = parse_oracle_string(opt.oracle);
  const Point original = opt.point.resolve(oracle_dim(entry, &cache));
  const OracleSpec spec = make_oracle_spec(entry, original, &cache);

  AttackEntry attack;
  attack.name = "cli";
  attack.sampler = parse_sampler_kind(opt.sampler);
  attack.mode = parse_attack_mode(opt.mode);
  attack.initial_samples = opt.initial_samples;
  attack.iterations = opt.iterations;
  attack.theta = opt.theta;
  attack.max_queries = opt.budget;
  attack.max_init_tries = opt.max_init_tries;
  attack.max_step_retries = opt.max_step_retries;
  attack.verify_original = opt.verify_original;
  attack.init_image = opt.init_image;
  const AttackConfig config = attack.to_config(opt.seed);
  config.validate();

  std::unique_ptr<DecisionOracle> oracle;
  try {
    oracle = make_oracle(spec);
  } catch (const OracleFailure& e) {
    std::cerr << "lhsba attack: " << e.what() << '\n';
    return kExitRuntime;
  }
  QueryLedger ledger;
  const AttackResult result = run_attack(*oracle, original, config, ledger);
  emit_trace_csv(result.trace, opt.output);
  if (!opt.output_point.empty() && result.adversarial) save_points({*result.adversarial}, opt.output_point);

  std::cout << "status=" << to_string(result.trace.status) << " queries=" << ledger.total()
            << " distortion=" << protocol::format_real(result.distortion(original)) << '\n';
  if (!result.message.empty()) std::cerr << "lhsba attack: " << result.message << '\n';
  const bool ok = result.trace.status == AttackStatus::Completed ||
                  result.trace.status == AttackStatus::BudgetExhausted;
  return ok ? kExitOk : kExitRuntime;
}

int run_bench_command(const std::string& path, std::optional<int> workers, const std::string& output_dir) {
  ExperimentConfig config = parse_config(path);
  if (workers) config.workers = *workers;
  if (!output_dir.empty()) config.output_dir = output_dir;
  config.validate();
  const ExperimentResult result = run_experiment(config);
  std::cout << "oracle,attack,sampler,budget,statistic,distortion,repetitions,failures\n";
  for (const auto& r : result.summary) {
    std::cout << r.oracle << ',' << r.attack << ',' << to_string(r.sampler) << ',' << r.budget << ','
              << to_string(r.statistic) << ',' << protocol::format_real(r.distortion) << ',' << r.repetitions
              << ',' << r.failures << '\n';
  }
  return kExitOk;
}

int run_sample_command(const std::string& sampler, long count, long dim, std::uint64_t seed, bool normalize,
                       const std::string& output) {
  SampleBatch batch = sample_normal(parse_sampler_kind(sampler), count, dim, RandomStream(seed));
  const bool latin = satisfies_latin_property(batch);
  const double mean_abs = mean_abs_column_mean(batch);
  const bool has_ks = count >= 2;
  const double ks = has_ks ? batch_discrepancy(batch) : 0.0;
  if (normalize) batch = normalize_rows(std::move(batch));

  std::cout << "# sampler=" << to_string(batch.kind) << " M=" << count << " d=" << dim << " seed=" << seed << '\n';
  std::cout << "# latin_property=" << (latin ? "true" : "false") << '\n';
  std::cout << "# mean_abs_column_mean=" << protocol::format_real(mean_abs) << '\n';
  if (has_ks) std::cout << "# ks_discrepancy=" << protocol::format_real(ks) << '\n';

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw Error("cannot write " + output);
    out = &file;
  }
  for (Eigen::Index i = 0; i < batch.count(); ++i) {
    *out << protocol::format_point(batch.rows.row(i).transpose()) << '\n';
  }
  return kExitOk;
}

int run_serve_command(const std::string& oracle_text, const PointOptions& point) {
  ModelCache cache;
  const OracleEntry entry = parse_oracle_string(oracle_text);
  if (entry.kind == OracleKind::External) throw ConfigError("oracle", "oracle-serve needs a built-in oracle");
  const Point original = point.resolve(oracle_dim(entry, &cache));
  auto oracle = make_oracle(make_oracle_spec(entry, original, &cache));
  std::ios::sync_with_stdio(false);
  protocol::serve(*oracle, std::cin, std::cout);
  return kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"LHS boundary attack: decision-based adversarial attack engine"};
  app.require_subcommand(1);

  AttackOptions attack;
  auto* attack_cmd = app.add_subcommand("attack", "Run one attack and write its trace CSV");
  attack_cmd->add_option("--oracle", attack.oracle, "Oracle, e.g. hypersphere:r=0.5,m=20")->required();
  attack_cmd->add_option("--sampler", attack.sampler, "lhs or srs")->capture_default_str();
  attack_cmd->add_option("--mode", attack.mode, "untargeted or targeted")->capture_default_str();
  attack_cmd->add_option("--budget", attack.budget, "Maximum number of oracle queries");
  attack_cmd->add_option("--seed", attack.seed)->capture_default_str();
  attack_cmd->add_option("--output,-o", attack.output, "Trace CSV path")->capture_default_str();
  attack_cmd->add_option("--output-point", attack.output_point, "Write the adversarial point here");
  attack_cmd->add_option("--m0", attack.initial_samples, "Initial sample count M0")->capture_default_str();
  attack_cmd->add_option("--iterations,-T", attack.iterations, "Iteration cap T")->capture_default_str();
  attack_cmd->add_option("--theta", attack.theta, "Bisection threshold (default m^-1.5)");
  attack_cmd->add_option("--max-init-tries", attack.max_init_tries)->capture_default_str();
  attack_cmd->add_option("--max-step-retries", attack.max_step_retries)->capture_default_str();
  attack_cmd->add_flag("--verify-original", attack.verify_original, "Query x* once before attacking");
  attack_cmd->add_option("--init-image", attack.init_image, "Points file holding the targeted start image");
  attack.point.add_to(attack_cmd);

  std::string bench_config;
  std::optional<int> bench_workers;
  std::string bench_output;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment config and write summary CSVs");
  bench_cmd->add_option("config", bench_config, "Experiment config file")->required();
  bench_cmd->add_option("--workers", bench_workers, "Override the worker count");
  bench_cmd->add_option("--output-dir", bench_output, "Override output_dir");

  std::string sample_kind = "lhs";
  long sample_count = 100;
  long sample_dim = 2;
  std::uint64_t sample_seed = 0;
  bool sample_normalize = false;
  std::string sample_output;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a normal sample batch and print diagnostics");
  sample_cmd->add_option("--sampler", sample_kind)->capture_default_str();
  sample_cmd->add_option("-M,--count", sample_count)->capture_default_str();
  sample_cmd->add_option("-d,--dim", sample_dim)->capture_default_str();
  sample_cmd->add_option("--seed", sample_seed)->capture_default_str();
  sample_cmd->add_flag("--normalize", sample_normalize, "Scale rows to unit norm");
  sample_cmd->add_option("--output,-o", sample_output, "Write rows here instead of stdout");

  std::string serve_oracle;
  PointOptions serve_point;
  auto* serve_cmd = app.add_subcommand("oracle-serve", "Answer the external oracle line protocol on stdin/stdout");
  serve_cmd->add_option("oracle", serve_oracle, "Built-in oracle spec")->required();
  serve_point.add_to(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*attack_cmd) return run_attack_command(attack);
    if (*bench_cmd) return run_bench_command(bench_config, bench_workers, bench_output);
    if (*sample_cmd) {
      return run_sample_command(sample_kind, sample_count, sample_dim, sample_seed, sample_normalize, sample_output);
    }
    if (*serve_cmd) return run_serve_command(serve_oracle, serve_point);
  } catch (const ConfigError& e) {
    std::cerr << "lhsba: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const LoadError& e) {
    std::cerr << "lhsba: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "lhsba: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "lhsba: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace lhsba
