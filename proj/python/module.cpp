#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "lhsba/attack.hpp"
#include "lhsba/config.hpp"
#include "lhsba/error.hpp"
#include "lhsba/experiment.hpp"
#include "lhsba/mlp.hpp"
#include "lhsba/normal.hpp"
#include "lhsba/oracle.hpp"
#include "lhsba/sampler.hpp"
#include "lhsba/trace_csv.hpp"

namespace py = pybind11;
using namespace lhsba;

namespace {

// An oracle together with the ledger that counts its queries.
struct PyOracle {
  OracleSpec spec;
  std::unique_ptr<DecisionOracle> oracle;
  std::unique_ptr<QueryLedger> ledger = std::make_unique<QueryLedger>();

  explicit PyOracle(OracleSpec s) : spec(std::move(s)), oracle(make_oracle(spec)) {}
};

PyOracle make_halfspace(const Eigen::VectorXd& normal, double offset) {
  OracleSpec spec;
  spec.kind = OracleKind::Halfspace;
  spec.normal = normal;
  spec.offset = offset;
  spec.original = Point::Zero(normal.size());
  return PyOracle(std::move(spec));
}

PyOracle make_hypersphere(const Point& center, double radius) {
  OracleSpec spec;
  spec.kind = OracleKind::Hypersphere;
  spec.radius = radius;
  spec.original = center;
  return PyOracle(std::move(spec));
}

PyOracle make_mlp(const std::filesystem::path& model_path, const Point& original, const std::string& mode,
                  std::optional<int> target_class, std::optional<int> original_class) {
  OracleSpec spec;
  spec.kind = OracleKind::Mlp;
  spec.model = std::make_shared<const MlpModel>(load_mlp(model_path));
  spec.original = original;
  spec.mode = parse_attack_mode(mode);
  spec.target_class = target_class;
  spec.original_class = original_class;
  return PyOracle(std::move(spec));
}

PyOracle make_external(const std::string& command, Eigen::Index dim, double timeout) {
  OracleSpec spec;
  spec.kind = OracleKind::External;
  spec.original = Point::Zero(dim);
  spec.external = ExternalSettings{command, timeout};
  return PyOracle(std::move(spec));
}

AttackConfig make_config(int initial_samples, int iterations, std::optional<double> theta,
                         std::optional<std::uint64_t> max_queries, const std::string& sampler,
                         const std::string& mode, std::uint64_t seed, std::optional<Point> init_target_image,
                         int max_init_tries, int max_step_retries, double clip_low, double clip_high) {
  AttackConfig c;
  c.initial_samples = initial_samples;
  c.iterations = iterations;
  c.theta = theta;
  c.max_queries = max_queries;
  c.sampler = parse_sampler_kind(sampler);
  c.mode = parse_attack_mode(mode);
  c.seed = seed;
  c.init_target_image = std::move(init_target_image);
  c.max_init_tries = max_init_tries;
  c.max_step_retries = max_step_retries;
  c.clip_low = clip_low;
  c.clip_high = clip_high;
  return c;
}

std::string trace_csv(const AttackTrace& trace) {
  std::ostringstream out;
  write_trace_csv(trace, out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(lhsba, m) {
  m.doc() = "Latin hypercube sampling boundary attack";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<LoadError>(m, "LoadError", base);
  py::register_exception<OracleFailure>(m, "OracleFailure", base);

  m.def("normal_cdf", py::vectorize(normal_cdf));
  m.def("inverse_normal_cdf", py::vectorize(inverse_normal_cdf), py::arg("p"));

  py::class_<SampleBatch>(m, "SampleBatch")
      .def_readonly("rows", &SampleBatch::rows)
      .def_readonly("strata", &SampleBatch::strata)
      .def_readonly("seed", &SampleBatch::seed)
      .def_property_readonly("kind", [](const SampleBatch& b) { return std::string(to_string(b.kind)); })
      .def_property_readonly("count", &SampleBatch::count)
      .def_property_readonly("dim", &SampleBatch::dim);

  m.def(
      "sample_normal",
      [](const std::string& kind, Eigen::Index count, Eigen::Index dim, std::uint64_t seed) {
        return sample_normal(parse_sampler_kind(kind), count, dim, RandomStream(seed));
      },
      py::arg("kind"), py::arg("count"), py::arg("dim"), py::arg("seed") = 0);
  m.def(
      "lhs_normal", [](Eigen::Index count, Eigen::Index dim, std::uint64_t seed) {
        return lhs_normal(count, dim, RandomStream(seed));
      },
      py::arg("count"), py::arg("dim"), py::arg("seed") = 0);
  m.def(
      "srs_normal", [](Eigen::Index count, Eigen::Index dim, std::uint64_t seed) {
        return srs_normal(count, dim, RandomStream(seed));
      },
      py::arg("count"), py::arg("dim"), py::arg("seed") = 0);
  m.def("normalize_rows", &normalize_rows);
  m.def("batch_discrepancy", &batch_discrepancy);
  m.def("mean_abs_column_mean", &mean_abs_column_mean);
  m.def("satisfies_latin_property", &satisfies_latin_property);

  m.def("schedule_sample_count", &schedule_sample_count, py::arg("t"), py::arg("initial_samples") = 100);
  m.def("schedule_delta", &schedule_delta, py::arg("x_prev"), py::arg("original"), py::arg("dim"));
  m.def("schedule_epsilon", &schedule_epsilon, py::arg("t"), py::arg("x_prev"), py::arg("original"));
  m.def("bin_search_cost", &bin_search_cost, py::arg("theta"));

  py::class_<PyOracle>(m, "Oracle")
      .def_property_readonly("dim", [](const PyOracle& o) { return o.oracle->dim(); })
      .def_property_readonly("kind", [](const PyOracle& o) { return std::string(to_string(o.oracle->kind())); })
      .def_property_readonly("queries", [](const PyOracle& o) { return o.ledger->total(); })
      .def("decide",
           [](PyOracle& o, const Point& x) { return sign_of(decide(*o.oracle, x, *o.ledger, Phase::Init)); })
      .def("reset_queries", [](PyOracle& o) { o.ledger = std::make_unique<QueryLedger>(); });

  m.def("halfspace", &make_halfspace, py::arg("normal"), py::arg("offset"));
  m.def("hypersphere", &make_hypersphere, py::arg("center"), py::arg("radius"));
  m.def("mlp", &make_mlp, py::arg("model_path"), py::arg("original"), py::arg("mode") = "untargeted",
        py::arg("target_class") = py::none(), py::arg("original_class") = py::none());
  m.def("external", &make_external, py::arg("command"), py::arg("dim"), py::arg("timeout") = 10.0);

  m.def(
      "bin_search",
      [](PyOracle& o, const Point& x_adv, const Point& original, double theta) {
        QueryGate gate(*o.oracle, *o.ledger, original);
        const auto bp = bin_search(gate, x_adv, original, theta);
        return py::make_tuple(bp.point, bp.alpha, bp.steps);
      },
      py::arg("oracle"), py::arg("x_adv"), py::arg("original"), py::arg("theta"));
  m.def(
      "estimate_gradient",
      [](PyOracle& o, const Point& x_t, int sample_count, double delta, const std::string& sampler,
         std::uint64_t seed) {
        QueryGate gate(*o.oracle, *o.ledger, o.spec.original);
        const auto est =
            estimate_gradient(gate, x_t, sample_count, delta, parse_sampler_kind(sampler), RandomStream(seed));
        return py::make_tuple(est.direction, est.raw_mean, est.agree_count);
      },
      py::arg("oracle"), py::arg("x_t"), py::arg("sample_count"), py::arg("delta"), py::arg("sampler") = "lhs",
      py::arg("seed") = 0);

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("t", &TraceRow::t)
      .def_readonly("sample_count", &TraceRow::sample_count)
      .def_readonly("delta", &TraceRow::delta)
      .def_readonly("epsilon", &TraceRow::epsilon)
      .def_readonly("queries", &TraceRow::queries)
      .def_readonly("distortion", &TraceRow::distortion)
      .def_readonly("agree_count", &TraceRow::agree_count)
      .def_readonly("step_retries", &TraceRow::step_retries)
      .def_readonly("binsearch_steps", &TraceRow::binsearch_steps);

  py::class_<AttackResult>(m, "AttackResult")
      .def_readonly("adversarial", &AttackResult::adversarial)
      .def_readonly("queries", &AttackResult::queries)
      .def_readonly("message", &AttackResult::message)
      .def_property_readonly("status", [](const AttackResult& r) { return std::string(to_string(r.trace.status)); })
      .def_property_readonly("trace", [](const AttackResult& r) { return r.trace.rows; })
      .def_property_readonly("trace_csv", [](const AttackResult& r) { return trace_csv(r.trace); })
      .def("distortion", &AttackResult::distortion, py::arg("original"));

  m.def(
      "run_attack",
      [](PyOracle& o, const Point& original, int initial_samples, int iterations, std::optional<double> theta,
         std::optional<std::uint64_t> max_queries, const std::string& sampler, const std::string& mode,
         std::uint64_t seed, std::optional<Point> init_target_image, int max_init_tries, int max_step_retries,
         double clip_low, double clip_high) {
        const AttackConfig config =
            make_config(initial_samples, iterations, theta, max_queries, sampler, mode, seed,
                        std::move(init_target_image), max_init_tries, max_step_retries, clip_low, clip_high);
        py::gil_scoped_release release;
        return run_attack(*o.oracle, original, config, *o.ledger);
      },
      py::arg("oracle"), py::arg("original"), py::kw_only(), py::arg("initial_samples") = 100,
      py::arg("iterations") = 64, py::arg("theta") = py::none(), py::arg("max_queries") = py::none(),
      py::arg("sampler") = "lhs", py::arg("mode") = "untargeted", py::arg("seed") = 0,
      py::arg("init_target_image") = py::none(), py::arg("max_init_tries") = 1000, py::arg("max_step_retries") = 30,
      py::arg("clip_low") = 0.0, py::arg("clip_high") = 1.0);

  m.def(
      "run_experiment",
      [](const std::filesystem::path& config_path, std::optional<std::string> output_dir,
         std::optional<int> workers) {
        ExperimentConfig config = parse_config(config_path);
        if (output_dir) config.output_dir = *output_dir;
        if (workers) config.workers = *workers;
        ExperimentResult result;
        {
          py::gil_scoped_release release;
          result = run_experiment(config);
        }
        py::list rows;
        for (const auto& r : result.summary) {
          py::dict row;
          row["oracle"] = r.oracle;
          row["attack"] = r.attack;
          row["sampler"] = std::string(to_string(r.sampler));
          row["budget"] = r.budget;
          row["statistic"] = std::string(to_string(r.statistic));
          row["distortion"] = r.distortion;
          row["repetitions"] = r.repetitions;
          row["failures"] = r.failures;
          rows.append(row);
        }
        return rows;
      },
      py::arg("config_path"), py::arg("output_dir") = py::none(), py::arg("workers") = py::none());
}
