#include "lhsba/oracle.hpp"

#include <string>

#include "lhsba/error.hpp"
#include "lhsba/external_oracle.hpp"

namespace lhsba {

std::string_view to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::Init: return "init";
    case Phase::BinSearch: return "binsearch";
    case Phase::Gradient: return "gradient";
    case Phase::Step: return "step";
  }
  return "?";
}

std::string_view to_string(AttackMode mode) noexcept {
  return mode == AttackMode::Targeted ? "targeted" : "untargeted";
}

AttackMode parse_attack_mode(std::string_view text) {
  if (text == "untargeted") return AttackMode::Untargeted;
  if (text == "targeted") return AttackMode::Targeted;
  throw DomainError("unknown attack mode '" + std::string(text) + "'");
}

std::string_view to_string(OracleKind kind) noexcept {
  switch (kind) {
    case OracleKind::Halfspace: return "halfspace";
    case OracleKind::Hypersphere: return "hypersphere";
    case OracleKind::Mlp: return "mlp";
    case OracleKind::External: return "external";
  }
  return "?";
}

Eigen::Index OracleSpec::dim() const {
  if (kind == OracleKind::Mlp && model) return model->input_dim();
  return original.size();
}

void OracleSpec::validate() const {
  if (original.size() == 0) throw DomainError("oracle: original point is empty");
  if (!original.allFinite()) throw DomainError("oracle: original point has non-finite coordinates");
  if (mode == AttackMode::Targeted && !target_class) throw DomainError("oracle: targeted mode requires target_class");
  switch (kind) {
    case OracleKind::Halfspace:
      if (normal.size() != original.size()) throw DomainError("halfspace: normal dimension != point dimension");
      if (!(normal.norm() > 0.0)) throw DomainError("halfspace: normal must be nonzero");
      break;
    case OracleKind::Hypersphere:
      if (!(radius > 0.0)) throw DomainError("hypersphere: radius must be positive");
      break;
    case OracleKind::Mlp:
      if (!model) throw DomainError("mlp: no model");
      if (model->input_dim() != original.size()) throw DomainError("mlp: model input width != point dimension");
      for (auto c : {target_class, original_class}) {
        if (c && (*c < 0 || *c >= model->class_count)) throw DomainError("mlp: class index out of range");
      }
      break;
    case OracleKind::External:
      if (external.command.empty()) throw DomainError("external: empty command");
      if (!(external.timeout_seconds > 0.0)) throw DomainError("external: timeout must be positive");
      break;
  }
}

namespace {

class HalfspaceOracle final : public DecisionOracle {
 public:
  HalfspaceOracle(Eigen::VectorXd normal, double offset) : normal_(std::move(normal)), offset_(offset) {}
  Eigen::Index dim() const override { return normal_.size(); }
  OracleKind kind() const override { return OracleKind::Halfspace; }

 protected:
  // w.x + b = 0 is the "otherwise" branch: not adversarial.
  Decision evaluate(const Point& x) override {
    return normal_.dot(x) + offset_ > 0.0 ? Decision::Adversarial : Decision::NotAdversarial;
  }

 private:
  Eigen::VectorXd normal_;
  double offset_;
};

class HypersphereOracle final : public DecisionOracle {
 public:
  HypersphereOracle(Point center, double radius) : center_(std::move(center)), radius_(radius) {}
  Eigen::Index dim() const override { return center_.size(); }
  OracleKind kind() const override { return OracleKind::Hypersphere; }

 protected:
  Decision evaluate(const Point& x) override {
    return (x - center_).norm() > radius_ ? Decision::Adversarial : Decision::NotAdversarial;
  }

 private:
  Point center_;
  double radius_;
};

class MlpOracle final : public DecisionOracle {
 public:
  MlpOracle(std::shared_ptr<const MlpModel> model, AttackMode mode, int label)
      : model_(std::move(model)), mode_(mode), label_(label) {}
  Eigen::Index dim() const override { return model_->input_dim(); }
  OracleKind kind() const override { return OracleKind::Mlp; }

 protected:
  Decision evaluate(const Point& x) override {
    const int predicted = mlp_predict(*model_, x);
    const bool adversarial = mode_ == AttackMode::Untargeted ? predicted != label_ : predicted == label_;
    return adversarial ? Decision::Adversarial : Decision::NotAdversarial;
  }

 private:
  std::shared_ptr<const MlpModel> model_;
  AttackMode mode_;
  int label_;  // c* when untargeted, c+ when targeted
};

}  // namespace

Decision decide(DecisionOracle& oracle, const Point& x, QueryLedger& ledger, Phase phase) {
  if (x.size() != oracle.dim()) {
    throw DomainError("decide: point has dimension " + std::to_string(x.size()) + ", oracle expects " +
                      std::to_string(oracle.dim()));
  }
  ledger.record(phase);
  return oracle.evaluate(x);
}

std::unique_ptr<DecisionOracle> make_oracle(const OracleSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case OracleKind::Halfspace:
      return std::make_unique<HalfspaceOracle>(spec.normal, spec.offset);
    case OracleKind::Hypersphere:
      return std::make_unique<HypersphereOracle>(spec.original, spec.radius);
    case OracleKind::Mlp: {
      const int label = spec.mode == AttackMode::Targeted
                            ? *spec.target_class
                            : spec.original_class.value_or(mlp_predict(*spec.model, spec.original));
      return std::make_unique<MlpOracle>(spec.model, spec.mode, label);
    }
    case OracleKind::External:
      return std::make_unique<ExternalOracle>(spec.external, spec.original.size());
  }
  throw DomainError("make_oracle: unknown kind");
}

Point true_gradient(const OracleSpec& spec, const Point& x) {
  switch (spec.kind) {
    case OracleKind::Halfspace: {
      if (!(spec.normal.norm() > 0.0)) throw DomainError("true_gradient: zero normal");
      return spec.normal.normalized();
    }
    case OracleKind::Hypersphere: {
      if (x.size() != spec.original.size()) throw DomainError("true_gradient: dimension mismatch");
      const Point offset = x - spec.original;
      const double norm = offset.norm();
      if (!(norm > 0.0)) throw DomainError("true_gradient: undefined at the sphere center");
      return offset / norm;
    }
    default:
      throw CapabilityError("true_gradient: only analytic oracles have a known gradient");
  }
}

}  // namespace lhsba
