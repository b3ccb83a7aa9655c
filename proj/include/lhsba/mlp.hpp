#ifndef LHSBA_MLP_HPP
#define LHSBA_MLP_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "lhsba/point.hpp"

namespace lhsba {

enum class Activation { Relu, Identity };

std::string_view to_string(Activation activation) noexcept;

struct DenseLayer {
  Eigen::MatrixXd weights;  // rows = outputs, cols = inputs
  Eigen::VectorXd bias;
  Activation activation = Activation::Identity;
};

// Fully connected feed-forward classifier. Scores F(x) are the raw outputs of
// the last layer; no softmax is applied (argmax is all a decision needs).
struct MlpModel {
  std::vector<DenseLayer> layers;
  int class_count = 0;

  Eigen::Index input_dim() const;
  // Throws LoadError when layer shapes do not chain or the last width != k.
  void validate() const;
};

Eigen::VectorXd mlp_forward(const MlpModel& model, const Point& x);

// argmax of the scores, ties resolved to the lowest class index.
int mlp_predict(const MlpModel& model, const Point& x);

// Weights file format:
//   mlp k=<classes> layers=<L>
//   layer <rows> <cols> <relu|identity>
//   <rows lines of cols floats>
//   <one line of rows bias floats>
// repeated L times. Blank lines and lines starting with '#' are ignored.
MlpModel load_mlp(const std::filesystem::path& path);
MlpModel read_mlp(std::istream& in, const std::string& source = "<stream>");
void save_mlp(const MlpModel& model, const std::filesystem::path& path);
void write_mlp(const MlpModel& model, std::ostream& out);

}  // namespace lhsba

#endif  // LHSBA_MLP_HPP
