#include "eegpipe/classifier.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "eegpipe/error.hpp"
#include "eegpipe/mlp.hpp"
#include "eegpipe/rng.hpp"
#include "eegpipe/svm.hpp"
#include "eegpipe/text.hpp"
#include "eegpipe/tree.hpp"

namespace eegpipe {

namespace {

constexpr std::array<std::string_view, 10> kKindNames{
    "random_forest", "ada_boost", "decision_tree", "gaussian_process", "mlp",
    "knn",           "gaussian_nb", "qda",          "svm_rbf",          "svm_linear",
};

}  // namespace

std::string_view kind_name(ClassifierKind k) { return kKindNames[static_cast<int>(k)]; }

ClassifierKind kind_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (name == kKindNames[i]) return static_cast<ClassifierKind>(i);
  raise(ErrorCode::InvalidHyperParam, "unknown classifier kind: " + std::string(name));
}

bool ParamValue::as_bool() const {
  if (!is_bool()) raise(ErrorCode::InvalidHyperParam, "expected a boolean value, got " + text());
  return std::get<bool>(v_);
}

std::int64_t ParamValue::as_int() const {
  if (!is_int()) raise(ErrorCode::InvalidHyperParam, "expected an integer value, got " + text());
  return std::get<std::int64_t>(v_);
}

double ParamValue::as_double() const {
  if (is_int()) return static_cast<double>(std::get<std::int64_t>(v_));
  if (!is_double()) raise(ErrorCode::InvalidHyperParam, "expected a numeric value, got " + text());
  return std::get<double>(v_);
}

const std::string& ParamValue::as_string() const {
  if (!is_string()) raise(ErrorCode::InvalidHyperParam, "expected a string value, got " + text());
  return std::get<std::string>(v_);
}

std::string ParamValue::text() const {
  if (is_none()) return "None";
  if (is_bool()) return std::get<bool>(v_) ? "True" : "False";
  if (is_int()) return std::to_string(std::get<std::int64_t>(v_));
  if (is_double()) return format_double(std::get<double>(v_));
  return std::get<std::string>(v_);
}

std::string ClassifierSpec::text() const {
  std::string out{kind_name(kind)};
  out += '(';
  bool first = true;
  for (const auto& [key, value] : params) {
    if (!first) out += ',';
    first = false;
    out += key;
    out += '=';
    out += value.text();
  }
  out += ')';
  return out;
}

namespace {

ParamValue parse_param_value(const std::string& raw) {
  const std::string t{trim(raw)};
  if (t == "None") return ParamValue{};
  if (t == "True") return ParamValue{true};
  if (t == "False") return ParamValue{false};
  {
    std::int64_t i = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), i);
    if (ec == std::errc() && p == t.data() + t.size()) return ParamValue{i};
  }
  {
    double d = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), d);
    if (ec == std::errc() && p == t.data() + t.size()) return ParamValue{d};
  }
  return ParamValue{t};
}

}  // namespace

ClassifierSpec ClassifierSpec::parse(std::string_view text_in) {
  const std::string t{trim(text_in)};
  const std::size_t open = t.find('(');
  if (open == std::string::npos || t.back() != ')')
    raise(ErrorCode::InvalidHyperParam, "malformed classifier spec: " + t);

  ClassifierSpec spec;
  spec.kind = kind_from_name(trim(t.substr(0, open)));
  const std::string inner = t.substr(open + 1, t.size() - open - 2);
  if (trim(inner).empty()) return spec;

  for (const std::string& item : split(inner, ',')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      raise(ErrorCode::InvalidHyperParam, "malformed spec parameter: " + item);
    spec.params[std::string{trim(item.substr(0, eq))}] = parse_param_value(item.substr(eq + 1));
  }
  return spec;
}

void validate_dataset(const Dataset& d, bool for_fit) {
  if (static_cast<std::size_t>(d.X.rows()) != d.y.size())
    raise(ErrorCode::InvalidDataset, "feature rows and label count differ");
  if (d.X.hasNaN()) raise(ErrorCode::InvalidDataset, "features contain NaN");
  if (for_fit) {
    if (d.X.rows() < 2) raise(ErrorCode::InvalidDataset, "need at least 2 samples to fit");
    const std::set<int> distinct(d.y.begin(), d.y.end());
    if (distinct.size() < 2) raise(ErrorCode::InvalidDataset, "need at least 2 distinct labels");
  }
}

std::vector<int> TrainedModel::predict(const Eigen::MatrixXd& X) const {
  if (X.cols() != features_)
    raise(ErrorCode::DimensionMismatch, "predict: expected " + std::to_string(features_) +
                                            " features, got " + std::to_string(X.cols()));
  std::vector<int> dense = impl_->predict(X);
  for (int& label : dense) label = classes_[static_cast<std::size_t>(label)];
  return dense;
}

double accuracy(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty())
    raise(ErrorCode::LengthMismatch, "accuracy: label vectors must match and be non-empty");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i)
    if (y_true[i] == y_pred[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(y_true.size());
}

// ---------------------------------------------------------------------------
// Hyper-parameter access with unknown-key rejection.

namespace {

class ParamReader {
 public:
  explicit ParamReader(const ClassifierSpec& spec) : spec_(spec) {}

  const ParamValue* find(const std::string& key) {
    seen_.insert(key);
    const auto it = spec_.params.find(key);
    return it == spec_.params.end() ? nullptr : &it->second;
  }

  std::int64_t get_int(const std::string& key, std::int64_t fallback) {
    const ParamValue* v = find(key);
    return v ? v->as_int() : fallback;
  }

  double get_double(const std::string& key, double fallback) {
    const ParamValue* v = find(key);
    return v ? v->as_double() : fallback;
  }

  bool get_bool(const std::string& key, bool fallback) {
    const ParamValue* v = find(key);
    return v ? v->as_bool() : fallback;
  }

  std::string get_string(const std::string& key, const std::string& fallback) {
    const ParamValue* v = find(key);
    return v ? v->as_string() : fallback;
  }

  // None or a positive integer; -1 encodes None.
  std::int64_t get_optional_int(const std::string& key, std::int64_t fallback) {
    const ParamValue* v = find(key);
    if (!v) return fallback;
    return v->is_none() ? -1 : v->as_int();
  }

  void require_none(const std::string& key) {
    const ParamValue* v = find(key);
    if (v && !v->is_none())
      raise(ErrorCode::InvalidHyperParam, "only None is supported for '" + key + "'");
  }

  void finish() const {
    for (const auto& [key, value] : spec_.params)
      if (!seen_.contains(key))
        raise(ErrorCode::InvalidHyperParam,
              "unknown hyper-parameter '" + key + "' for " + std::string(kind_name(spec_.kind)));
  }

 private:
  const ClassifierSpec& spec_;
  std::set<std::string> seen_;
};

void check(bool ok, const std::string& message) {
  if (!ok) raise(ErrorCode::InvalidHyperParam, message);
}

// Sorted distinct labels and the label -> dense index map applied to y.
std::pair<std::vector<int>, std::vector<int>> densify_labels(const std::vector<int>& y) {
  std::vector<int> classes(y.begin(), y.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  std::vector<int> dense(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    dense[i] = static_cast<int>(
        std::lower_bound(classes.begin(), classes.end(), y[i]) - classes.begin());
  return {std::move(classes), std::move(dense)};
}

int argmax_lowest(const std::vector<double>& scores) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(scores.size()); ++k)
    if (scores[k] > scores[best]) best = k;
  return best;
}

// ---------------------------------------------------------------------------
// k-nearest neighbours (always brute force; the corpus is tiny).

struct KnnImpl final : TrainedModel::Impl {
  Eigen::MatrixXd X;
  std::vector<int> y;
  int k{5};
  int num_classes{2};

  std::vector<int> predict(const Eigen::MatrixXd& Q) const override {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(Q.rows()));
    std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(X.rows()));
    for (Eigen::Index q = 0; q < Q.rows(); ++q) {
      for (Eigen::Index i = 0; i < X.rows(); ++i)
        dist[static_cast<std::size_t>(i)] = {(X.row(i) - Q.row(q)).squaredNorm(),
                                             static_cast<int>(i)};
      const int kk = std::min<int>(k, static_cast<int>(dist.size()));
      std::partial_sort(dist.begin(), dist.begin() + kk, dist.end());
      std::vector<double> votes(static_cast<std::size_t>(num_classes), 0.0);
      for (int i = 0; i < kk; ++i) ++votes[static_cast<std::size_t>(y[dist[i].second])];
      out.push_back(argmax_lowest(votes));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Gaussian naive Bayes.

struct GaussianNbImpl final : TrainedModel::Impl {
  Eigen::MatrixXd mean;      // K x F
  Eigen::MatrixXd variance;  // K x F, floored
  std::vector<double> log_prior;

  std::vector<int> predict(const Eigen::MatrixXd& Q) const override {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(Q.rows()));
    const int K = static_cast<int>(mean.rows());
    std::vector<double> score(static_cast<std::size_t>(K));
    for (Eigen::Index q = 0; q < Q.rows(); ++q) {
      for (int k = 0; k < K; ++k) {
        double s = log_prior[static_cast<std::size_t>(k)];
        for (Eigen::Index f = 0; f < Q.cols(); ++f) {
          const double var = variance(k, f);
          const double diff = Q(q, f) - mean(k, f);
          s += -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
        }
        score[static_cast<std::size_t>(k)] = s;
      }
      out.push_back(argmax_lowest(score));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Quadratic discriminant analysis.

struct QdaImpl final : TrainedModel::Impl {
  struct ClassState {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov_inv;
    double log_det{0.0};
    double log_prior{0.0};
  };
  std::vector<ClassState> classes;

  std::vector<int> predict(const Eigen::MatrixXd& Q) const override {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(Q.rows()));
    std::vector<double> score(classes.size());
    for (Eigen::Index q = 0; q < Q.rows(); ++q) {
      for (std::size_t k = 0; k < classes.size(); ++k) {
        const ClassState& c = classes[k];
        const Eigen::VectorXd diff = Q.row(q).transpose() - c.mean;
        score[k] = -0.5 * c.log_det - 0.5 * diff.dot(c.cov_inv * diff) + c.log_prior;
      }
      out.push_back(argmax_lowest(score));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Decision tree / random forest / AdaBoost.

struct TreeImpl final : TrainedModel::Impl {
  DecisionTree tree;
  std::vector<int> predict(const Eigen::MatrixXd& Q) const override { return tree.predict(Q); }
};

struct ForestImpl final : TrainedModel::Impl {
  std::vector<DecisionTree> trees;
  int num_classes{2};

  std::vector<int> predict(const Eigen::MatrixXd& Q) const override {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(Q.rows()));
    std::vector<double> votes(static_cast<std::size_t>(num_classes));
    for (Eigen::Index q = 0; q < Q.rows(); ++q) {
      std::fill(votes.begin(), votes.end(), 0.0);
      for (const DecisionTree& t : trees)
        ++votes[static_cast<std::size_t>(t.predict_one(Q.row(q).transpose()))];
      out.push_back(argmax_lowest(votes));
    }
    return out;
  }
};

struct AdaBoostImpl final : TrainedModel::Impl {
  std::vector<DecisionTree> stumps;
  std::vector<double> stage_weight;
  int num_classes{2};

  std::vector<int> predict(const Eigen::MatrixXd& Q) const override {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(Q.rows()));
    std::vector<double> votes(static_cast<std::size_t>(num_classes));
    for (Eigen::Index q = 0; q < Q.rows(); ++q) {
      std::fill(votes.begin(), votes.end(), 0.0);
      for (std::size_t t = 0; t < stumps.size(); ++t)
        votes[static_cast<std::size_t>(stumps[t].predict_one(Q.row(q).transpose()))] +=
            stage_weight[t];
      out.push_back(argmax_lowest(votes));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// MLP.

struct MlpImpl final : TrainedModel::Impl {
  MlpNet net;
  MlpActivation activation{MlpActivation::Relu};

  std::vector<int> predict(const Eigen::MatrixXd& Q) const override {
    return mlp_predict(net, Q, activation);
  }
};

// ---------------------------------------------------------------------------
// SVM, one-vs-one for more than two classes.

struct SvmImpl final : TrainedModel::Impl {
  struct Pair {
    int a, b;                  // dense labels; a < b, mapped to +1 / -1
    Eigen::MatrixXd support;   // training rows of the two classes
    Eigen::VectorXd y_signed;
    SmoResult model;
  };
  std::vector<Pair> pairs;
  SvmKernel kernel{SvmKernel::Linear};
  double gamma{1.0};
  int num_classes{2};

  std::vector<int> predict(const Eigen::MatrixXd& Q) const override {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(Q.rows()));
    std::vector<double> votes(static_cast<std::size_t>(num_classes));
    for (Eigen::Index q = 0; q < Q.rows(); ++q) {
      std::fill(votes.begin(), votes.end(), 0.0);
      for (const Pair& p : pairs) {
        const Eigen::MatrixXd Kq = kernel_matrix(Q.row(q), p.support, kernel, gamma);
        const double f = svm_decision(p.model, p.y_signed, Kq)[0];
        ++votes[static_cast<std::size_t>(f >= 0.0 ? p.a : p.b)];
      }
      out.push_back(argmax_lowest(votes));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Per-kind fitting.

TreeParams read_tree_params(ParamReader& reader, bool with_max_features) {
  TreeParams tp;
  const std::string criterion = reader.get_string("criterion", "gini");
  check(criterion == "gini" || criterion == "entropy", "criterion must be gini or entropy");
  tp.criterion = criterion == "gini" ? SplitCriterion::Gini : SplitCriterion::Entropy;
  tp.max_depth = static_cast<int>(reader.get_optional_int("max_depth", -1));
  check(tp.max_depth == -1 || tp.max_depth >= 1, "max_depth must be None or >= 1");
  tp.min_samples_split = static_cast<int>(reader.get_int("min_samples_split", 2));
  check(tp.min_samples_split >= 2, "min_samples_split must be >= 2");
  tp.min_samples_leaf = static_cast<int>(reader.get_int("min_samples_leaf", 1));
  check(tp.min_samples_leaf >= 1, "min_samples_leaf must be >= 1");
  if (with_max_features) {
    tp.max_features = static_cast<int>(reader.get_optional_int("max_features", -1));
    check(tp.max_features == -1 || tp.max_features >= 1, "max_features must be None or >= 1");
  }
  return tp;
}

std::shared_ptr<const TrainedModel::Impl> fit_knn(ParamReader& reader, const Eigen::MatrixXd& X,
                                                  const std::vector<int>& y, int K) {
  auto impl = std::make_shared<KnnImpl>();
  impl->k = static_cast<int>(reader.get_int("n_neighbors", 5));
  check(impl->k >= 1, "n_neighbors must be >= 1");
  const std::string algorithm = reader.get_string("algorithm", "brute");
  check(algorithm == "brute" || algorithm == "ball_tree" || algorithm == "kd_tree" ||
            algorithm == "auto",
        "unknown knn algorithm: " + algorithm);  // all run the same brute scan
  impl->X = X;
  impl->y = y;
  impl->num_classes = K;
  return impl;
}

std::shared_ptr<const TrainedModel::Impl> fit_gaussian_nb(ParamReader& reader,
                                                          const Eigen::MatrixXd& X,
                                                          const std::vector<int>& y, int K) {
  reader.require_none("priors");
  const Eigen::Index F = X.cols();
  const double S = static_cast<double>(X.rows());

  auto impl = std::make_shared<GaussianNbImpl>();
  impl->mean = Eigen::MatrixXd::Zero(K, F);
  impl->variance = Eigen::MatrixXd::Zero(K, F);
  impl->log_prior.resize(static_cast<std::size_t>(K));

  // Floor tiny variances at 1e-9 times the largest overall feature variance.
  const Eigen::RowVectorXd overall_mean = X.colwise().mean();
  const double max_var =
      ((X.rowwise() - overall_mean).array().square().colwise().sum() / S).maxCoeff();
  const double floor = max_var > 0.0 ? 1e-9 * max_var : 1e-12;

  std::vector<double> count(static_cast<std::size_t>(K), 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    impl->mean.row(y[i]) += X.row(static_cast<Eigen::Index>(i));
    count[static_cast<std::size_t>(y[i])] += 1.0;
  }
  for (int k = 0; k < K; ++k) impl->mean.row(k) /= count[static_cast<std::size_t>(k)];
  for (std::size_t i = 0; i < y.size(); ++i) {
    const Eigen::RowVectorXd diff = X.row(static_cast<Eigen::Index>(i)) - impl->mean.row(y[i]);
    impl->variance.row(y[i]) += diff.array().square().matrix();
  }
  for (int k = 0; k < K; ++k) {
    impl->variance.row(k) /= count[static_cast<std::size_t>(k)];
    impl->variance.row(k) = impl->variance.row(k).cwiseMax(floor);
    impl->log_prior[static_cast<std::size_t>(k)] =
        std::log(count[static_cast<std::size_t>(k)] / S);
  }
  return impl;
}

std::shared_ptr<const TrainedModel::Impl> fit_qda(ParamReader& reader, const Eigen::MatrixXd& X,
                                                  const std::vector<int>& y, int K) {
  reader.require_none("priors");
  const double reg = reader.get_double("reg_param", 0.0);
  check(reg >= 0.0 && reg <= 1.0, "reg_param must lie in [0, 1]");

  const Eigen::Index F = X.cols();
  const double S = static_cast<double>(X.rows());
  auto impl = std::make_shared<QdaImpl>();
  impl->classes.resize(static_cast<std::size_t>(K));

  for (int k = 0; k < K; ++k) {
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < y.size(); ++i)
      if (y[i] == k) rows.push_back(static_cast<Eigen::Index>(i));
    const double nk = static_cast<double>(rows.size());

    Eigen::VectorXd mean = Eigen::VectorXd::Zero(F);
    for (Eigen::Index r : rows) mean += X.row(r).transpose();
    mean /= nk;

    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(F, F);
    for (Eigen::Index r : rows) {
      const Eigen::VectorXd diff = X.row(r).transpose() - mean;
      cov += diff * diff.transpose();
    }
    cov /= nk;
    cov = (1.0 - reg) * cov + reg * Eigen::MatrixXd::Identity(F, F);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    const Eigen::VectorXd& ev = eig.eigenvalues();
    const double ev_max = ev.maxCoeff();
    if (!(ev_max > 0.0) || ev.minCoeff() <= ev_max * 1e-12)
      raise(ErrorCode::SingularCovariance,
            "class " + std::to_string(k) + " has a singular covariance (reg_param=" +
                format_double(reg) + ")");

    QdaImpl::ClassState& cs = impl->classes[static_cast<std::size_t>(k)];
    cs.mean = std::move(mean);
    cs.cov_inv = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() *
                 eig.eigenvectors().transpose();
    cs.log_det = ev.array().log().sum();
    cs.log_prior = std::log(nk / S);
  }
  return impl;
}

std::shared_ptr<const TrainedModel::Impl> fit_decision_tree(ParamReader& reader,
                                                            const Eigen::MatrixXd& X,
                                                            const std::vector<int>& y, int K,
                                                            std::uint64_t seed) {
  const TreeParams tp = read_tree_params(reader, /*with_max_features=*/false);
  auto impl = std::make_shared<TreeImpl>();
  Rng rng(seed);
  impl->tree.fit(X, y, {}, K, tp, rng);
  return impl;
}

std::shared_ptr<const TrainedModel::Impl> fit_random_forest(ParamReader& reader,
                                                            const Eigen::MatrixXd& X,
                                                            const std::vector<int>& y, int K,
                                                            std::uint64_t seed) {
  TreeParams tp = read_tree_params(reader, /*with_max_features=*/true);
  const int n_estimators = static_cast<int>(reader.get_int("n_estimators", 10));
  check(n_estimators >= 1, "n_estimators must be >= 1");
  const bool bootstrap = reader.get_bool("bootstrap", true);
  if (tp.max_features >= static_cast<int>(X.cols())) tp.max_features = -1;  // all features

  auto impl = std::make_shared<ForestImpl>();
  impl->num_classes = K;
  impl->trees.resize(static_cast<std::size_t>(n_estimators));

  const std::size_t S = y.size();
  for (int t = 0; t < n_estimators; ++t) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    if (bootstrap) {
      Eigen::MatrixXd Xb(X.rows(), X.cols());
      std::vector<int> yb(S);
      for (std::size_t i = 0; i < S; ++i) {
        const std::size_t pick = static_cast<std::size_t>(rng.bounded(S));
        Xb.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(pick));
        yb[i] = y[pick];
      }
      impl->trees[static_cast<std::size_t>(t)].fit(Xb, yb, {}, K, tp, rng);
    } else {
      impl->trees[static_cast<std::size_t>(t)].fit(X, y, {}, K, tp, rng);
    }
  }
  return impl;
}

std::shared_ptr<const TrainedModel::Impl> fit_ada_boost(ParamReader& reader,
                                                        const Eigen::MatrixXd& X,
                                                        const std::vector<int>& y, int K,
                                                        std::uint64_t seed) {
  const int n_estimators = static_cast<int>(reader.get_int("n_estimators", 50));
  check(n_estimators >= 1, "n_estimators must be >= 1");
  const double lr = reader.get_double("learning_rate", 1.0);
  check(lr > 0.0, "learning_rate must be positive");

  TreeParams stump;
  stump.max_depth = 1;

  auto impl = std::make_shared<AdaBoostImpl>();
  impl->num_classes = K;

  const std::size_t S = y.size();
  std::vector<double> w(S, 1.0 / static_cast<double>(S));

  for (int t = 0; t < n_estimators; ++t) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(t)}));
    DecisionTree tree;
    tree.fit(X, y, w, K, stump, rng);
    const std::vector<int> pred = tree.predict(X);

    double err = 0.0;
    for (std::size_t i = 0; i < S; ++i)
      if (pred[i] != y[i]) err += w[i];

    if (err <= 0.0) {
      // Perfect stage: keep it alone with unit weight and stop.
      impl->stumps.push_back(std::move(tree));
      impl->stage_weight.push_back(1.0);
      break;
    }
    if (err >= 1.0 - 1.0 / static_cast<double>(K)) {
      // No better than chance; keep a majority-vote fallback if nothing else.
      if (impl->stumps.empty()) {
        impl->stumps.push_back(std::move(tree));
        impl->stage_weight.push_back(1.0);
      }
      break;
    }

    const double alpha =
        lr * (std::log((1.0 - err) / err) + std::log(static_cast<double>(K) - 1.0));
    impl->stumps.push_back(std::move(tree));
    impl->stage_weight.push_back(alpha);

    double total = 0.0;
    for (std::size_t i = 0; i < S; ++i) {
      if (pred[i] != y[i]) w[i] *= std::exp(alpha);
      total += w[i];
    }
    for (double& wi : w) wi /= total;
  }
  return impl;
}

std::shared_ptr<const TrainedModel::Impl> fit_mlp(ParamReader& reader, const Eigen::MatrixXd& X,
                                                  const std::vector<int>& y, int K,
                                                  std::uint64_t seed) {
  const std::string solver = reader.get_string("solver", "adam");
  if (solver == "lbfgs")
    raise(ErrorCode::UnsupportedHyperParam, "mlp solver 'lbfgs' is not implemented");
  check(solver == "sgd" || solver == "adam", "unknown mlp solver: " + solver);

  const std::string activation = reader.get_string("activation", "relu");
  check(activation == "logistic" || activation == "tanh" || activation == "relu",
        "unknown mlp activation: " + activation);

  MlpConfig cfg;
  cfg.solver = solver == "sgd" ? MlpSolver::Sgd : MlpSolver::Adam;
  cfg.activation = activation == "logistic"
                       ? MlpActivation::Logistic
                       : (activation == "tanh" ? MlpActivation::Tanh : MlpActivation::Relu);
  cfg.hidden = static_cast<int>(reader.get_int("hidden_layer_sizes", 8));
  check(cfg.hidden >= 1, "hidden_layer_sizes must be >= 1");
  cfg.alpha = reader.get_double("alpha", 1e-4);
  check(cfg.alpha >= 0.0, "alpha must be >= 0");
  cfg.learning_rate_init = reader.get_double("learning_rate_init", 1e-3);
  check(cfg.learning_rate_init > 0.0, "learning_rate_init must be positive");
  cfg.momentum = reader.get_double("momentum", 0.9);
  check(cfg.momentum >= 0.0 && cfg.momentum < 1.0, "momentum must lie in [0, 1)");
  cfg.seed = seed;

  auto impl = std::make_shared<MlpImpl>();
  impl->activation = cfg.activation;
  impl->net = mlp_train(X, y, K, cfg);
  return impl;
}

std::shared_ptr<const TrainedModel::Impl> fit_svm(ParamReader& reader, const Eigen::MatrixXd& X,
                                                  const std::vector<int>& y, int K,
                                                  SvmKernel kernel, std::uint64_t seed) {
  const double C = reader.get_double("C", 1.0);
  check(C > 0.0, "C must be positive");

  double gamma = 1.0;
  if (kernel == SvmKernel::Rbf) {
    const ParamValue* g = reader.find("gamma");
    if (!g || (g->is_string() && g->as_string() == "auto")) {
      gamma = 1.0 / static_cast<double>(X.cols());
    } else if (g->is_string()) {
      raise(ErrorCode::InvalidHyperParam, "gamma must be numeric or 'auto'");
    } else {
      gamma = g->as_double();
      check(gamma > 0.0, "gamma must be positive");
    }
  }

  auto impl = std::make_shared<SvmImpl>();
  impl->kernel = kernel;
  impl->gamma = gamma;
  impl->num_classes = K;

  constexpr double kTol = 1e-3;
  constexpr int kMaxPasses = 100;

  for (int a = 0; a < K; ++a)
    for (int b = a + 1; b < K; ++b) {
      SvmImpl::Pair pair;
      pair.a = a;
      pair.b = b;
      std::vector<Eigen::Index> rows;
      for (std::size_t i = 0; i < y.size(); ++i)
        if (y[i] == a || y[i] == b) rows.push_back(static_cast<Eigen::Index>(i));

      pair.support.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
      pair.y_signed.resize(static_cast<Eigen::Index>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        pair.support.row(static_cast<Eigen::Index>(i)) = X.row(rows[i]);
        pair.y_signed[static_cast<Eigen::Index>(i)] =
            y[static_cast<std::size_t>(rows[i])] == a ? 1.0 : -1.0;
      }

      const Eigen::MatrixXd Kmat = kernel_matrix(pair.support, pair.support, kernel, gamma);
      pair.model = smo_train(
          Kmat, pair.y_signed, C, kTol, kMaxPasses,
          derive_seed(seed, {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)}));
      impl->pairs.push_back(std::move(pair));
    }
  return impl;
}

}  // namespace

TrainedModel fit(const ClassifierSpec& spec, const Dataset& d, std::uint64_t seed) {
  validate_dataset(d, /*for_fit=*/true);

  if (spec.kind == ClassifierKind::GaussianProcess) {
    ParamReader reader(spec);
    reader.find("warm_start");  // accepted in grids, but the kind itself is out of scope
    reader.finish();
    raise(ErrorCode::UnsupportedHyperParam, "gaussian_process classifier is not implemented");
  }

  auto [classes, dense] = densify_labels(d.y);
  const int K = static_cast<int>(classes.size());

  ParamReader reader(spec);
  std::shared_ptr<const TrainedModel::Impl> impl;
  switch (spec.kind) {
    case ClassifierKind::Knn:
      impl = fit_knn(reader, d.X, dense, K);
      break;
    case ClassifierKind::GaussianNb:
      impl = fit_gaussian_nb(reader, d.X, dense, K);
      break;
    case ClassifierKind::Qda:
      impl = fit_qda(reader, d.X, dense, K);
      break;
    case ClassifierKind::DecisionTree:
      impl = fit_decision_tree(reader, d.X, dense, K, seed);
      break;
    case ClassifierKind::RandomForest:
      impl = fit_random_forest(reader, d.X, dense, K, seed);
      break;
    case ClassifierKind::AdaBoost:
      impl = fit_ada_boost(reader, d.X, dense, K, seed);
      break;
    case ClassifierKind::Mlp:
      impl = fit_mlp(reader, d.X, dense, K, seed);
      break;
    case ClassifierKind::SvmLinear:
      impl = fit_svm(reader, d.X, dense, K, SvmKernel::Linear, seed);
      break;
    case ClassifierKind::SvmRbf:
      impl = fit_svm(reader, d.X, dense, K, SvmKernel::Rbf, seed);
      break;
    case ClassifierKind::GaussianProcess:
      break;  // unreachable
  }
  reader.finish();

  return TrainedModel(spec.kind, std::move(classes), d.X.cols(), std::move(impl));
}

}  // namespace eegpipe
