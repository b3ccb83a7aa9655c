#ifndef LHSBA_CONFIG_HPP
#define LHSBA_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lhsba/attack.hpp"
#include "lhsba/oracle.hpp"

namespace lhsba {

enum class Statistic { Mean, Median };

std::string_view to_string(Statistic s) noexcept;

// Oracle description independent of any particular original point.
struct OracleEntry {
  std::string name;
  OracleKind kind = OracleKind::Hypersphere;
  AttackMode mode = AttackMode::Untargeted;
  std::optional<int> target_class;
  std::optional<int> original_class;
  std::optional<std::int64_t> dim;  // required unless kind = mlp
  double radius = 0.0;
  std::vector<double> normal;       // halfspace; empty means all ones
  double offset = 0.0;
  std::string model_path;
  std::string command;
  double timeout_seconds = 10.0;

  bool operator==(const OracleEntry&) const = default;
};

struct PointsSource {
  std::vector<std::vector<double>> inline_points;
  std::string file;
  // "fill" or "uniform" generates `count` points of dimension `dim`.
  std::string generate;
  int count = 1;
  std::optional<std::int64_t> dim;
  double fill = 0.5;
  double low = 0.0;
  double high = 1.0;
  std::uint64_t seed = 0;

  bool operator==(const PointsSource&) const = default;
};

struct AttackEntry {
  std::string name;
  SamplerKind sampler = SamplerKind::Lhs;
  AttackMode mode = AttackMode::Untargeted;
  int initial_samples = 100;
  int iterations = 64;
  std::optional<double> theta;
  std::optional<std::uint64_t> max_queries;
  int max_init_tries = 1000;
  int max_step_retries = 30;
  double clip_low = 0.0;
  double clip_high = 1.0;
  bool verify_original = false;
  std::string init_image;  // points file; first point is used

  AttackConfig to_config(std::uint64_t seed) const;

  bool operator==(const AttackEntry&) const = default;
};

struct ExperimentConfig {
  int repetitions = 1;
  std::uint64_t base_seed = 0;
  std::vector<std::uint64_t> budgets{1000, 5000, 20000};
  std::vector<Statistic> statistics{Statistic::Mean, Statistic::Median};
  std::string output_dir;  // empty: keep results in memory only
  int workers = 1;
  bool write_traces = true;

  std::vector<OracleEntry> oracles;
  PointsSource points;
  std::vector<AttackEntry> attacks;

  // Throws ConfigError naming the offending key.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Flat INI-style grammar, documented in docs/config.md. Relative paths inside
// the file are resolved against the file's directory. Throws ConfigError.
ExperimentConfig parse_config(const std::filesystem::path& path);
ExperimentConfig parse_config_text(std::string_view text,
                                   const std::filesystem::path& base_dir = {});
std::string serialize_config(const ExperimentConfig& config);

// Parses the compact CLI oracle form "<kind>:key=value,...", e.g.
// "hypersphere:r=0.5,m=20" or "external:m=20,cmd=<command to end of string>".
OracleEntry parse_oracle_string(std::string_view text);

// Loads the MLP model (cached by path in `cache` when given) and binds the
// entry to an original point.
using ModelCache = std::map<std::string, std::shared_ptr<const MlpModel>>;
OracleSpec make_oracle_spec(const OracleEntry& entry, const Point& original, ModelCache* cache = nullptr);

// Input dimension implied by the entry (loads the model for mlp oracles).
Eigen::Index oracle_dim(const OracleEntry& entry, ModelCache* cache = nullptr);

// Points file: one point per line, floats separated by spaces. Throws LoadError.
std::vector<Point> load_points(const std::filesystem::path& path);
void save_points(const std::vector<Point>& points, const std::filesystem::path& path);

std::vector<Point> resolve_points(const PointsSource& source, Eigen::Index dim);

}  // namespace lhsba

#endif  // LHSBA_CONFIG_HPP
