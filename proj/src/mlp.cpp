#include "lhsba/mlp.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lhsba/error.hpp"
#include "lhsba/protocol.hpp"

namespace lhsba {

std::string_view to_string(Activation activation) noexcept {
  return activation == Activation::Relu ? "relu" : "identity";
}

Eigen::Index MlpModel::input_dim() const {
  return layers.empty() ? 0 : layers.front().weights.cols();
}

void MlpModel::validate() const {
  if (class_count < 2) throw LoadError("mlp: class count must be at least 2");
  if (layers.empty()) throw LoadError("mlp: no layers");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& layer = layers[l];
    if (layer.weights.rows() < 1 || layer.weights.cols() < 1) {
      throw LoadError("mlp: layer " + std::to_string(l) + " has an empty weight matrix");
    }
    if (layer.bias.size() != layer.weights.rows()) {
      throw LoadError("mlp: layer " + std::to_string(l) + " bias length " + std::to_string(layer.bias.size()) +
                      " != rows " + std::to_string(layer.weights.rows()));
    }
    if (l > 0 && layer.weights.cols() != layers[l - 1].weights.rows()) {
      throw LoadError("mlp: layer " + std::to_string(l) + " expects " + std::to_string(layer.weights.cols()) +
                      " inputs but layer " + std::to_string(l - 1) + " produces " +
                      std::to_string(layers[l - 1].weights.rows()));
    }
    if (!layer.weights.allFinite() || !layer.bias.allFinite()) {
      throw LoadError("mlp: layer " + std::to_string(l) + " contains non-finite values");
    }
  }
  if (layers.back().weights.rows() != class_count) {
    throw LoadError("mlp: final layer width " + std::to_string(layers.back().weights.rows()) +
                    " != k=" + std::to_string(class_count));
  }
}

Eigen::VectorXd mlp_forward(const MlpModel& model, const Point& x) {
  if (model.layers.empty() || x.size() != model.input_dim()) {
    throw DomainError("mlp_forward: input has dimension " + std::to_string(x.size()) + ", model expects " +
                      std::to_string(model.input_dim()));
  }
  Eigen::VectorXd h = x;
  for (const auto& layer : model.layers) {
    Eigen::VectorXd next = layer.bias;
    next.noalias() += layer.weights * h;
    if (layer.activation == Activation::Relu) next = next.cwiseMax(0.0);
    h = std::move(next);
  }
  return h;
}

int mlp_predict(const MlpModel& model, const Point& x) {
  const Eigen::VectorXd scores = mlp_forward(model, x);
  Eigen::Index best = 0;
  for (Eigen::Index c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return static_cast<int>(best);
}

namespace {

class LineReader {
 public:
  LineReader(std::istream& in, const std::string& source) : in_(in), source_(source) {}

  // Next non-blank, non-comment line.
  std::string next(const char* expecting) {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return line;
    }
    fail(std::string("unexpected end of file, expecting ") + expecting);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw LoadError(source_ + ":" + std::to_string(number_) + ": " + what);
  }

  bool at_end() {
    std::string line;
    while (in_.peek() != std::char_traits<char>::eof()) {
      const auto pos = in_.tellg();
      std::getline(in_, line);
      const auto first = line.find_first_not_of(" \t\r");
      if (first != std::string::npos && line[first] != '#') {
        in_.seekg(pos);
        return false;
      }
      ++number_;
    }
    return true;
  }

 private:
  std::istream& in_;
  std::string source_;
  int number_ = 0;
};

Eigen::VectorXd parse_row(LineReader& reader, Eigen::Index expected, const char* what) {
  const std::string line = reader.next(what);
  auto values = protocol::parse_point(line);
  if (!values) reader.fail(std::string("malformed ") + what);
  if (values->size() != expected) {
    reader.fail(std::string(what) + " has " + std::to_string(values->size()) + " values, expected " +
                std::to_string(expected));
  }
  return *values;
}

long parse_field(LineReader& reader, const std::string& token, const std::string& key) {
  if (token.rfind(key + "=", 0) != 0) reader.fail("expected field '" + key + "='");
  try {
    std::size_t used = 0;
    const long value = std::stol(token.substr(key.size() + 1), &used);
    if (used != token.size() - key.size() - 1) throw std::invalid_argument(key);
    return value;
  } catch (const std::exception&) {
    reader.fail("field '" + key + "' is not an integer");
  }
}

}  // namespace

MlpModel read_mlp(std::istream& in, const std::string& source) {
  LineReader reader(in, source);
  MlpModel model;
  std::istringstream header(reader.next("header"));
  std::string magic, k_field, layers_field, extra;
  header >> magic >> k_field >> layers_field;
  if (magic != "mlp" || (header >> extra)) reader.fail("expected header 'mlp k=<classes> layers=<L>'");
  const long k = parse_field(reader, k_field, "k");
  const long layer_count = parse_field(reader, layers_field, "layers");
  if (layer_count < 1) reader.fail("layers must be positive");
  model.class_count = static_cast<int>(k);

  for (long l = 0; l < layer_count; ++l) {
    std::istringstream spec(reader.next("layer line"));
    std::string word, activation;
    long rows = 0, cols = 0;
    if (!(spec >> word >> rows >> cols >> activation) || word != "layer" || (spec >> extra)) {
      reader.fail("expected 'layer <rows> <cols> <relu|identity>'");
    }
    if (rows < 1 || cols < 1) reader.fail("layer dimensions must be positive");
    DenseLayer layer;
    if (activation == "relu") {
      layer.activation = Activation::Relu;
    } else if (activation == "identity") {
      layer.activation = Activation::Identity;
    } else {
      reader.fail("unknown activation '" + activation + "'");
    }
    layer.weights.resize(rows, cols);
    for (long r = 0; r < rows; ++r) layer.weights.row(r) = parse_row(reader, cols, "weight row").transpose();
    layer.bias = parse_row(reader, rows, "bias line");
    model.layers.push_back(std::move(layer));
  }
  if (!reader.at_end()) reader.fail("trailing content after last layer");
  try {
    model.validate();
  } catch (const LoadError& e) {
    throw LoadError(source + ": " + e.what());
  }
  return model;
}

MlpModel load_mlp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open weights file " + path.string());
  return read_mlp(in, path.string());
}

void write_mlp(const MlpModel& model, std::ostream& out) {
  out << "mlp k=" << model.class_count << " layers=" << model.layers.size() << '\n';
  for (const auto& layer : model.layers) {
    out << "layer " << layer.weights.rows() << ' ' << layer.weights.cols() << ' ' << to_string(layer.activation)
        << '\n';
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      out << protocol::format_point(layer.weights.row(r).transpose()) << '\n';
    }
    out << protocol::format_point(layer.bias) << '\n';
  }
}

void save_mlp(const MlpModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write weights file " + path.string());
  write_mlp(model, out);
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace lhsba
