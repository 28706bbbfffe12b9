#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace eegpipe {

enum class ClassifierKind : int {
  RandomForest = 0,
  AdaBoost,
  DecisionTree,
  GaussianProcess,  // accepted in grids, rejected by fit
  Mlp,
  Knn,
  GaussianNb,
  Qda,
  SvmRbf,
  SvmLinear,
};

std::string_view kind_name(ClassifierKind k);
ClassifierKind kind_from_name(std::string_view name);

// One hyper-parameter value: None, a bool, an integer, a real, or a string.
class ParamValue {
 public:
  ParamValue() = default;  // None
  ParamValue(bool b) : v_(b) {}
  ParamValue(int i) : v_(static_cast<std::int64_t>(i)) {}
  ParamValue(std::int64_t i) : v_(i) {}
  ParamValue(double d) : v_(d) {}
  ParamValue(const char* s) : v_(std::string(s)) {}
  ParamValue(std::string s) : v_(std::move(s)) {}

  bool is_none() const { return std::holds_alternative<std::monostate>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_double() const { return std::holds_alternative<double>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }

  bool as_bool() const;
  std::int64_t as_int() const;
  double as_double() const;  // accepts int too
  const std::string& as_string() const;

  // None / True / False / shortest-round-trip number / bare string.
  std::string text() const;

  friend bool operator==(const ParamValue&, const ParamValue&) = default;

 private:
  std::variant<std::monostate, bool, std::int64_t, double, std::string> v_;
};

using ParamMap = std::map<std::string, ParamValue>;

struct ClassifierSpec {
  ClassifierKind kind{ClassifierKind::Knn};
  ParamMap params;

  // "kind(key=value,...)" with keys in map (lexicographic) order.
  std::string text() const;
  static ClassifierSpec parse(std::string_view text);

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

// Row-per-sample feature matrix with integer class labels.
struct Dataset {
  Eigen::MatrixXd X;          // S x F
  std::vector<int> y;         // length S
  std::vector<std::string> label_names;  // indexed by label when known
};

void validate_dataset(const Dataset& d, bool for_fit);

class TrainedModel {
 public:
  struct Impl {
    virtual ~Impl() = default;
    virtual std::vector<int> predict(const Eigen::MatrixXd& X) const = 0;
  };

  TrainedModel(ClassifierKind kind, std::vector<int> classes, Eigen::Index features,
               std::shared_ptr<const Impl> impl)
      : kind_(kind), classes_(std::move(classes)), features_(features), impl_(std::move(impl)) {}

  ClassifierKind kind() const { return kind_; }
  const std::vector<int>& classes() const { return classes_; }
  Eigen::Index features() const { return features_; }

  std::vector<int> predict(const Eigen::MatrixXd& X) const;

 private:
  ClassifierKind kind_;
  std::vector<int> classes_;
  Eigen::Index features_;
  std::shared_ptr<const Impl> impl_;
};

// Deterministic in (spec, d, seed). Throws Error with UnsupportedHyperParam
// (gaussian_process kind, mlp lbfgs solver), InvalidHyperParam (bad keys or
// values), or SingularCovariance (QDA on a degenerate class).
TrainedModel fit(const ClassifierSpec& spec, const Dataset& d, std::uint64_t seed);

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred);

}  // namespace eegpipe
