#include "lhsba/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "lhsba/error.hpp"
#include "lhsba/protocol.hpp"
#include "lhsba/random.hpp"

namespace lhsba {

std::string_view to_string(Statistic s) noexcept { return s == Statistic::Mean ? "mean" : "median"; }

AttackConfig AttackEntry::to_config(std::uint64_t seed) const {
  AttackConfig config;
  config.initial_samples = initial_samples;
  config.iterations = iterations;
  config.theta = theta;
  config.max_queries = max_queries;
  config.sampler = sampler;
  config.mode = mode;
  config.seed = seed;
  config.max_init_tries = max_init_tries;
  config.max_step_retries = max_step_retries;
  config.clip_low = clip_low;
  config.clip_high = clip_high;
  config.verify_original = verify_original;
  if (!init_image.empty()) {
    const auto points = load_points(init_image);
    if (points.empty()) throw LoadError(init_image + ": no points");
    config.init_target_image = points.front();
  }
  return config;
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> items;
  std::string current;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!current.empty()) items.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) items.push_back(std::move(current));
  return items;
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError(key, "invalid number '" + value + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& value) { return parse_number<int>(key, value); }
std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  return parse_number<std::uint64_t>(key, value);
}
std::int64_t parse_i64(const std::string& key, const std::string& value) {
  return parse_number<std::int64_t>(key, value);
}
double parse_real(const std::string& key, const std::string& value) { return parse_number<double>(key, value); }

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ConfigError(key, "expected true or false, got '" + value + "'");
}

std::vector<double> parse_reals(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_real(key, item));
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

OracleKind parse_oracle_kind(const std::string& key, const std::string& value) {
  for (auto k : {OracleKind::Halfspace, OracleKind::Hypersphere, OracleKind::Mlp, OracleKind::External}) {
    if (to_string(k) == value) return k;
  }
  throw ConfigError(key, "unknown oracle kind '" + value + "'");
}

SamplerKind parse_sampler(const std::string& key, const std::string& value) {
  try {
    return parse_sampler_kind(value);
  } catch (const DomainError& e) {
    throw ConfigError(key, e.what());
  }
}

AttackMode parse_mode(const std::string& key, const std::string& value) {
  try {
    return parse_attack_mode(value);
  } catch (const DomainError& e) {
    throw ConfigError(key, e.what());
  }
}

std::string resolve_path(const std::filesystem::path& base_dir, const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return p.lexically_normal().string();
}

// "ones", "e<k>" or an explicit list of reals.
std::vector<double> expand_normal(const std::string& key, const std::string& text, std::optional<std::int64_t> dim) {
  if (text == "ones") return {};
  if (text.size() > 1 && text[0] == 'e' && std::isdigit(static_cast<unsigned char>(text[1]))) {
    const auto axis = parse_i64(key, text.substr(1));
    if (!dim) throw ConfigError(key, "axis normal needs m");
    if (axis < 0 || axis >= *dim) throw ConfigError(key, "axis index out of range");
    std::vector<double> w(static_cast<std::size_t>(*dim), 0.0);
    w[static_cast<std::size_t>(axis)] = 1.0;
    return w;
  }
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ';', ' ');
  return parse_reals(key, spaced);
}

void apply_oracle_key(OracleEntry& o, const std::string& key, const std::string& value,
                      const std::filesystem::path& base_dir, std::string& normal_text) {
  if (key == "kind") o.kind = parse_oracle_kind(key, value);
  else if (key == "mode") o.mode = parse_mode(key, value);
  else if (key == "target_class" || key == "target") o.target_class = parse_int(key, value);
  else if (key == "original_class") o.original_class = parse_int(key, value);
  else if (key == "m") o.dim = parse_i64(key, value);
  else if (key == "radius" || key == "r") o.radius = parse_real(key, value);
  else if (key == "normal" || key == "w") normal_text = value;
  else if (key == "offset" || key == "b") o.offset = parse_real(key, value);
  else if (key == "model" || key == "path") o.model_path = resolve_path(base_dir, value);
  else if (key == "command" || key == "cmd") o.command = value;
  else if (key == "timeout") o.timeout_seconds = parse_real(key, value);
  else throw ConfigError(key, "unknown key in [oracle] section");
}

void finish_oracle(OracleEntry& o, const std::string& normal_text, const std::string& section) {
  if (!normal_text.empty()) o.normal = expand_normal(section + ".normal", normal_text, o.dim);
}

void validate_oracle(const OracleEntry& o) {
  const std::string s = "oracle " + o.name;
  if (o.name.empty()) throw ConfigError(s, "oracle needs a name");
  if (o.mode == AttackMode::Targeted && !o.target_class) throw ConfigError(s + ".target_class", "required when targeted");
  if (o.dim && *o.dim < 1) throw ConfigError(s + ".m", "must be positive");
  switch (o.kind) {
    case OracleKind::Halfspace:
      if (!o.dim) throw ConfigError(s + ".m", "required for halfspace");
      if (!o.normal.empty()) {
        if (static_cast<std::int64_t>(o.normal.size()) != *o.dim) throw ConfigError(s + ".normal", "length != m");
        if (std::all_of(o.normal.begin(), o.normal.end(), [](double v) { return v == 0.0; })) {
          throw ConfigError(s + ".normal", "must be nonzero");
        }
      }
      break;
    case OracleKind::Hypersphere:
      if (!o.dim) throw ConfigError(s + ".m", "required for hypersphere");
      if (!(o.radius > 0.0)) throw ConfigError(s + ".radius", "must be positive");
      break;
    case OracleKind::Mlp:
      if (o.model_path.empty()) throw ConfigError(s + ".model", "required for mlp");
      break;
    case OracleKind::External:
      if (!o.dim) throw ConfigError(s + ".m", "required for external");
      if (o.command.empty()) throw ConfigError(s + ".command", "required for external");
      if (!(o.timeout_seconds > 0.0)) throw ConfigError(s + ".timeout", "must be positive");
      break;
  }
}

void apply_points_key(PointsSource& p, const std::string& key, const std::string& value,
                      const std::filesystem::path& base_dir) {
  if (key == "point") p.inline_points.push_back(parse_reals(key, value));
  else if (key == "file") p.file = resolve_path(base_dir, value);
  else if (key == "generate") {
    if (value != "fill" && value != "uniform") throw ConfigError(key, "expected fill or uniform");
    p.generate = value;
  } else if (key == "count") p.count = parse_int(key, value);
  else if (key == "dim" || key == "m") p.dim = parse_i64(key, value);
  else if (key == "fill") p.fill = parse_real(key, value);
  else if (key == "low") p.low = parse_real(key, value);
  else if (key == "high") p.high = parse_real(key, value);
  else if (key == "seed") p.seed = parse_u64(key, value);
  else throw ConfigError(key, "unknown key in [points] section");
}

void apply_attack_key(AttackEntry& a, const std::string& key, const std::string& value,
                      const std::filesystem::path& base_dir) {
  if (key == "sampler") a.sampler = parse_sampler(key, value);
  else if (key == "mode") a.mode = parse_mode(key, value);
  else if (key == "M0") a.initial_samples = parse_int(key, value);
  else if (key == "T") a.iterations = parse_int(key, value);
  else if (key == "theta") a.theta = parse_real(key, value);
  else if (key == "max_queries") a.max_queries = parse_u64(key, value);
  else if (key == "max_init_tries") a.max_init_tries = parse_int(key, value);
  else if (key == "max_step_retries") a.max_step_retries = parse_int(key, value);
  else if (key == "clip_low") a.clip_low = parse_real(key, value);
  else if (key == "clip_high") a.clip_high = parse_real(key, value);
  else if (key == "verify_original") a.verify_original = parse_bool(key, value);
  else if (key == "init_image") a.init_image = resolve_path(base_dir, value);
  else throw ConfigError(key, "unknown key in [attack] section");
}

void validate_attack(const AttackEntry& a) {
  const std::string s = "attack " + a.name;
  if (a.name.empty()) throw ConfigError(s, "attack needs a name");
  if (a.initial_samples < 1) throw ConfigError(s + ".M0", "must be >= 1");
  if (a.iterations < 1) throw ConfigError(s + ".T", "must be >= 1");
  if (a.theta && !(*a.theta > 0.0 && *a.theta < 1.0)) throw ConfigError(s + ".theta", "must lie in (0, 1)");
  if (a.max_queries && *a.max_queries < 1) throw ConfigError(s + ".max_queries", "must be positive");
  if (a.max_init_tries < 1) throw ConfigError(s + ".max_init_tries", "must be >= 1");
  if (a.max_step_retries < 0) throw ConfigError(s + ".max_step_retries", "must be >= 0");
  if (!(a.clip_low < a.clip_high)) throw ConfigError(s + ".clip_low", "must be < clip_high");
  if (a.mode == AttackMode::Targeted && a.init_image.empty()) {
    throw ConfigError(s + ".init_image", "required when targeted");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw ConfigError("repetitions", "must be >= 1");
  if (workers < 1) throw ConfigError("workers", "must be >= 1");
  if (budgets.empty()) throw ConfigError("budgets", "at least one budget is required");
  for (auto b : budgets) {
    if (b == 0) throw ConfigError("budgets", "budgets must be positive");
  }
  if (statistics.empty()) throw ConfigError("statistics", "at least one statistic is required");
  if (oracles.empty()) throw ConfigError("oracle", "at least one [oracle <name>] section is required");
  if (attacks.empty()) throw ConfigError("attack", "at least one [attack <name>] section is required");
  std::set<std::string> names;
  for (const auto& o : oracles) {
    validate_oracle(o);
    if (!names.insert("o:" + o.name).second) throw ConfigError("oracle " + o.name, "duplicate oracle name");
  }
  for (const auto& a : attacks) {
    validate_attack(a);
    if (!names.insert("a:" + a.name).second) throw ConfigError("attack " + a.name, "duplicate attack name");
  }
  const auto& p = points;
  if (p.inline_points.empty() && p.file.empty() && p.generate.empty()) {
    throw ConfigError("points", "need point, file or generate");
  }
  if (!p.generate.empty() && p.count < 1) throw ConfigError("points.count", "must be >= 1");
  if (p.dim && *p.dim < 1) throw ConfigError("points.dim", "must be positive");
  if (!(p.low < p.high)) throw ConfigError("points.low", "must be < high");
}

ExperimentConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig config;
  enum class Section { None, Experiment, Oracle, Points, Attack } section = Section::None;
  std::set<std::string> seen_keys;
  std::set<std::string> seen_singletons;
  std::string normal_text;
  std::string section_label;

  const auto close_section = [&] {
    if (section == Section::Oracle) finish_oracle(config.oracles.back(), normal_text, section_label);
    normal_text.clear();
    seen_keys.clear();
  };

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    const std::string where = "line " + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where, "unterminated section header");
      close_section();
      const auto words = split_list(line.substr(1, line.size() - 2));
      if (words.empty()) throw ConfigError(where, "empty section header");
      const std::string& kind = words[0];
      const std::string name = words.size() > 1 ? words[1] : std::string();
      if (words.size() > 2) throw ConfigError(where, "section names may not contain spaces");
      if (kind == "experiment" || kind == "points") {
        if (!name.empty()) throw ConfigError(kind, "section takes no name");
        if (!seen_singletons.insert(kind).second) throw ConfigError(kind, "duplicate section");
        section = kind == "experiment" ? Section::Experiment : Section::Points;
      } else if (kind == "oracle") {
        if (name.empty()) throw ConfigError(where, "[oracle <name>] needs a name");
        config.oracles.emplace_back().name = name;
        section = Section::Oracle;
      } else if (kind == "attack") {
        if (name.empty()) throw ConfigError(where, "[attack <name>] needs a name");
        config.attacks.emplace_back().name = name;
        section = Section::Attack;
      } else {
        throw ConfigError(kind, "unknown section");
      }
      section_label = line.substr(1, line.size() - 2);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(where, "missing key");
    if (value.empty()) throw ConfigError(key, "missing value");
    if (key != "point" && !seen_keys.insert(key).second) throw ConfigError(key, "duplicate key");

    switch (section) {
      case Section::None:
        throw ConfigError(key, "key outside of any section");
      case Section::Experiment:
        if (key == "repetitions") config.repetitions = parse_int(key, value);
        else if (key == "base_seed") config.base_seed = parse_u64(key, value);
        else if (key == "budgets") {
          config.budgets.clear();
          for (const auto& item : split_list(value)) config.budgets.push_back(parse_u64(key, item));
        } else if (key == "statistics") {
          config.statistics.clear();
          for (const auto& item : split_list(value)) {
            if (item == "mean") config.statistics.push_back(Statistic::Mean);
            else if (item == "median") config.statistics.push_back(Statistic::Median);
            else throw ConfigError(key, "unknown statistic '" + item + "'");
          }
        } else if (key == "output_dir") config.output_dir = resolve_path(base_dir, value);
        else if (key == "workers") config.workers = parse_int(key, value);
        else if (key == "write_traces") config.write_traces = parse_bool(key, value);
        else throw ConfigError(key, "unknown key in [experiment] section");
        break;
      case Section::Oracle:
        apply_oracle_key(config.oracles.back(), key, value, base_dir, normal_text);
        break;
      case Section::Points:
        apply_points_key(config.points, key, value, base_dir);
        break;
      case Section::Attack:
        apply_attack_key(config.attacks.back(), key, value, base_dir);
        break;
    }
  }
  close_section();
  config.validate();
  return config;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.parent_path());
}

namespace {

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out.push_back(' ');
    out += protocol::format_real(values[i]);
  }
  return out;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  using protocol::format_real;
  std::ostringstream out;
  out << "[experiment]\n";
  out << "repetitions = " << c.repetitions << '\n';
  out << "base_seed = " << c.base_seed << '\n';
  out << "budgets =";
  for (auto b : c.budgets) out << ' ' << b;
  out << "\nstatistics =";
  for (auto s : c.statistics) out << ' ' << to_string(s);
  out << '\n';
  if (!c.output_dir.empty()) out << "output_dir = " << c.output_dir << '\n';
  out << "workers = " << c.workers << '\n';
  out << "write_traces = " << (c.write_traces ? "true" : "false") << '\n';

  for (const auto& o : c.oracles) {
    out << "\n[oracle " << o.name << "]\n";
    out << "kind = " << to_string(o.kind) << '\n';
    out << "mode = " << to_string(o.mode) << '\n';
    if (o.target_class) out << "target_class = " << *o.target_class << '\n';
    if (o.original_class) out << "original_class = " << *o.original_class << '\n';
    if (o.dim) out << "m = " << *o.dim << '\n';
    if (o.kind == OracleKind::Hypersphere) out << "radius = " << format_real(o.radius) << '\n';
    if (o.kind == OracleKind::Halfspace) {
      out << "normal = " << (o.normal.empty() ? std::string("ones") : join_reals(o.normal)) << '\n';
      out << "offset = " << format_real(o.offset) << '\n';
    }
    if (!o.model_path.empty()) out << "model = " << o.model_path << '\n';
    if (!o.command.empty()) out << "command = " << o.command << '\n';
    if (o.kind == OracleKind::External) out << "timeout = " << format_real(o.timeout_seconds) << '\n';
  }

  const auto& p = c.points;
  out << "\n[points]\n";
  for (const auto& pt : p.inline_points) out << "point = " << join_reals(pt) << '\n';
  if (!p.file.empty()) out << "file = " << p.file << '\n';
  if (!p.generate.empty()) out << "generate = " << p.generate << '\n';
  out << "count = " << p.count << '\n';
  if (p.dim) out << "dim = " << *p.dim << '\n';
  out << "fill = " << format_real(p.fill) << '\n';
  out << "low = " << format_real(p.low) << '\n';
  out << "high = " << format_real(p.high) << '\n';
  out << "seed = " << p.seed << '\n';

  for (const auto& a : c.attacks) {
    out << "\n[attack " << a.name << "]\n";
    out << "sampler = " << to_string(a.sampler) << '\n';
    out << "mode = " << to_string(a.mode) << '\n';
    out << "M0 = " << a.initial_samples << '\n';
    out << "T = " << a.iterations << '\n';
    if (a.theta) out << "theta = " << format_real(*a.theta) << '\n';
    if (a.max_queries) out << "max_queries = " << *a.max_queries << '\n';
    out << "max_init_tries = " << a.max_init_tries << '\n';
    out << "max_step_retries = " << a.max_step_retries << '\n';
    out << "clip_low = " << format_real(a.clip_low) << '\n';
    out << "clip_high = " << format_real(a.clip_high) << '\n';
    out << "verify_original = " << (a.verify_original ? "true" : "false") << '\n';
    if (!a.init_image.empty()) out << "init_image = " << a.init_image << '\n';
  }
  return out.str();
}

OracleEntry parse_oracle_string(std::string_view text) {
  const auto colon = text.find(':');
  OracleEntry entry;
  const std::string kind = trim(text.substr(0, colon));
  entry.kind = parse_oracle_kind("oracle", kind);
  entry.name = kind;
  std::string normal_text;
  std::string_view rest = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  std::set<std::string> seen;
  while (!rest.empty()) {
    const auto eq = rest.find('=');
    if (eq == std::string_view::npos) throw ConfigError("oracle", "expected key=value in '" + std::string(rest) + "'");
    const std::string key = trim(rest.substr(0, eq));
    rest.remove_prefix(eq + 1);
    std::string value;
    if (key == "cmd" || key == "command") {
      value = trim(rest);  // the command takes the rest of the string
      rest = {};
    } else {
      const auto comma = rest.find(',');
      value = trim(rest.substr(0, comma));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (!seen.insert(key).second) throw ConfigError(key, "duplicate key");
    if (value.empty()) throw ConfigError(key, "missing value");
    apply_oracle_key(entry, key, value, {}, normal_text);
  }
  finish_oracle(entry, normal_text, "oracle");
  validate_oracle(entry);
  return entry;
}

namespace {

std::shared_ptr<const MlpModel> get_model(const std::string& path, ModelCache* cache) {
  if (cache) {
    auto it = cache->find(path);
    if (it != cache->end()) return it->second;
  }
  auto model = std::make_shared<const MlpModel>(load_mlp(path));
  if (cache) (*cache)[path] = model;
  return model;
}

}  // namespace

Eigen::Index oracle_dim(const OracleEntry& entry, ModelCache* cache) {
  if (entry.kind == OracleKind::Mlp) {
    const auto dim = get_model(entry.model_path, cache)->input_dim();
    if (entry.dim && *entry.dim != dim) throw ConfigError("oracle " + entry.name + ".m", "does not match the model");
    return dim;
  }
  if (!entry.dim) throw ConfigError("oracle " + entry.name + ".m", "missing");
  return static_cast<Eigen::Index>(*entry.dim);
}

OracleSpec make_oracle_spec(const OracleEntry& entry, const Point& original, ModelCache* cache) {
  OracleSpec spec;
  spec.kind = entry.kind;
  spec.mode = entry.mode;
  spec.original = original;
  spec.target_class = entry.target_class;
  spec.original_class = entry.original_class;
  const Eigen::Index m = oracle_dim(entry, cache);
  if (original.size() != m) {
    throw DomainError("oracle " + entry.name + ": point dimension " + std::to_string(original.size()) +
                      " != oracle dimension " + std::to_string(m));
  }
  switch (entry.kind) {
    case OracleKind::Halfspace:
      spec.normal = entry.normal.empty()
                        ? Eigen::VectorXd::Ones(m)
                        : Eigen::Map<const Eigen::VectorXd>(entry.normal.data(), m).eval();
      spec.offset = entry.offset;
      break;
    case OracleKind::Hypersphere:
      spec.radius = entry.radius;
      break;
    case OracleKind::Mlp:
      spec.model = get_model(entry.model_path, cache);
      break;
    case OracleKind::External:
      spec.external.command = entry.command;
      spec.external.timeout_seconds = entry.timeout_seconds;
      break;
  }
  spec.validate();
  return spec;
}

std::vector<Point> load_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open points file " + path.string());
  std::vector<Point> points;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto p = protocol::parse_point(t);
    if (!p || !p->allFinite()) throw LoadError(path.string() + ":" + std::to_string(line_no) + ": malformed point");
    if (!points.empty() && p->size() != points.front().size()) {
      throw LoadError(path.string() + ":" + std::to_string(line_no) + ": inconsistent dimension");
    }
    points.push_back(std::move(*p));
  }
  return points;
}

void save_points(const std::vector<Point>& points, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write points file " + path.string());
  for (const auto& p : points) out << protocol::format_point(p) << '\n';
}

std::vector<Point> resolve_points(const PointsSource& source, Eigen::Index dim) {
  if (source.dim && *source.dim != dim) throw ConfigError("points.dim", "does not match the oracle dimension");
  std::vector<Point> points;
  for (const auto& values : source.inline_points) {
    if (static_cast<Eigen::Index>(values.size()) != dim) throw ConfigError("points.point", "dimension mismatch");
    points.push_back(Eigen::Map<const Point>(values.data(), dim));
  }
  if (!source.file.empty()) {
    for (auto& p : load_points(source.file)) {
      if (p.size() != dim) throw ConfigError("points.file", "dimension mismatch");
      points.push_back(std::move(p));
    }
  }
  if (source.generate == "fill") {
    for (int i = 0; i < source.count; ++i) points.push_back(Point::Constant(dim, source.fill));
  } else if (source.generate == "uniform") {
    RandomStream rng(source.seed);
    for (int i = 0; i < source.count; ++i) {
      Point p(dim);
      for (Eigen::Index j = 0; j < dim; ++j) p[j] = rng.uniform(source.low, source.high);
      points.push_back(std::move(p));
    }
  }
  return points;
}

}  // namespace lhsba
