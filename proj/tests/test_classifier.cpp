#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eegpipe/classifier.hpp"
#include "eegpipe/error.hpp"
#include "eegpipe/mlp.hpp"
#include "eegpipe/rng.hpp"
#include "eegpipe/svm.hpp"

using namespace eegpipe;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoFailure;
}

// Well-separated Gaussian blobs: class k centred at sep*k on every feature.
Dataset blobs(int classes, int per_class, int features, std::uint64_t seed,
              double sep = 10.0) {
  Dataset d;
  d.X.resize(classes * per_class, features);
  Rng rng(seed);
  for (int k = 0; k < classes; ++k)
    for (int i = 0; i < per_class; ++i) {
      const Eigen::Index row = k * per_class + i;
      for (int f = 0; f < features; ++f) d.X(row, f) = sep * k + rng.normal();
      d.y.push_back(k);
    }
  return d;
}

Dataset from_rows(const std::vector<std::vector<double>>& rows, std::vector<int> y) {
  Dataset d;
  d.X.resize(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      d.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  d.y = std::move(y);
  return d;
}

double train_accuracy(const ClassifierSpec& spec, const Dataset& d, std::uint64_t seed) {
  const TrainedModel m = fit(spec, d, seed);
  return accuracy(d.y, m.predict(d.X));
}

}  // namespace

// ---------------------------------------------------------------------------
// Spec text and parsing.

TEST_CASE("kind names round-trip and reject unknowns") {
  const ClassifierKind kinds[] = {
      ClassifierKind::RandomForest, ClassifierKind::AdaBoost,   ClassifierKind::DecisionTree,
      ClassifierKind::GaussianProcess, ClassifierKind::Mlp,     ClassifierKind::Knn,
      ClassifierKind::GaussianNb,   ClassifierKind::Qda,        ClassifierKind::SvmRbf,
      ClassifierKind::SvmLinear};
  for (ClassifierKind k : kinds) CHECK(kind_from_name(kind_name(k)) == k);
  CHECK(kind_from_name("random_forest") == ClassifierKind::RandomForest);
  CHECK_THROWS_AS(kind_from_name("perceptron"), Error);
}

TEST_CASE("param values print python-style") {
  CHECK(ParamValue{}.text() == "None");
  CHECK(ParamValue{true}.text() == "True");
  CHECK(ParamValue{false}.text() == "False");
  CHECK(ParamValue{42}.text() == "42");
  CHECK(ParamValue{0.5}.text() == "0.5");
  CHECK(ParamValue{"gini"}.text() == "gini");
}

TEST_CASE("spec text uses lexicographic key order") {
  ClassifierSpec spec;
  spec.kind = ClassifierKind::Knn;
  spec.params["n_neighbors"] = 5;
  spec.params["algorithm"] = "brute";
  CHECK(spec.text() == "knn(algorithm=brute,n_neighbors=5)");

  ClassifierSpec bare;
  bare.kind = ClassifierKind::GaussianNb;
  CHECK(bare.text() == "gaussian_nb()");
}

TEST_CASE("spec parse inverts text, including value types") {
  ClassifierSpec spec;
  spec.kind = ClassifierKind::RandomForest;
  spec.params["max_depth"] = ParamValue{};  // None
  spec.params["bootstrap"] = false;
  spec.params["n_estimators"] = 50;
  spec.params["criterion"] = "entropy";
  const ClassifierSpec back = ClassifierSpec::parse(spec.text());
  CHECK(back == spec);
  CHECK(back.params.at("max_depth").is_none());
  CHECK(back.params.at("bootstrap").is_bool());
  CHECK(back.params.at("n_estimators").is_int());
  CHECK(back.params.at("criterion").is_string());

  const ClassifierSpec svm = ClassifierSpec::parse("svm_rbf(C=0.5,gamma=auto)");
  CHECK(svm.params.at("C").is_double());
  CHECK(svm.params.at("C").as_double() == 0.5);
  CHECK(svm.params.at("gamma").as_string() == "auto");
}

TEST_CASE("malformed specs are rejected") {
  CHECK_THROWS_AS(ClassifierSpec::parse("knn"), Error);
  CHECK_THROWS_AS(ClassifierSpec::parse("knn(n_neighbors)"), Error);
  CHECK_THROWS_AS(ClassifierSpec::parse("perceptron(a=1)"), Error);
}

// ---------------------------------------------------------------------------
// Whole-zoo sanity on separable data.

TEST_CASE("every implemented kind fits well-separated blobs") {
  const Dataset d = blobs(3, 12, 4, 7001);
  const char* specs[] = {
      "random_forest(n_estimators=20)",
      "ada_boost(learning_rate=1,n_estimators=50)",
      "decision_tree()",
      "mlp(activation=tanh,alpha=0.0001,hidden_layer_sizes=10,learning_rate_init=0.1,solver=adam)",
      "knn(algorithm=brute,n_neighbors=3)",
      "gaussian_nb()",
      "qda(reg_param=0.1)",
      "svm_rbf(C=1,gamma=auto)",
      "svm_linear(C=1)",
  };
  for (const char* s : specs) {
    CAPTURE(s);
    CHECK(train_accuracy(ClassifierSpec::parse(s), d, 11) >= 0.95);
  }
}

TEST_CASE("fitting is deterministic in the seed") {
  const Dataset d = blobs(3, 10, 3, 7002);
  const char* specs[] = {
      "random_forest(bootstrap=True,max_features=2,n_estimators=10)",
      "ada_boost(n_estimators=20)",
      "mlp(hidden_layer_sizes=8,learning_rate_init=0.01,solver=sgd)",
      "svm_rbf(C=0.5,gamma=1)",
  };
  Dataset probe = blobs(3, 5, 3, 7003);
  for (const char* s : specs) {
    CAPTURE(s);
    const ClassifierSpec spec = ClassifierSpec::parse(s);
    const std::vector<int> a = fit(spec, d, 77).predict(probe.X);
    const std::vector<int> b = fit(spec, d, 77).predict(probe.X);
    CHECK(a == b);
  }
}

// ---------------------------------------------------------------------------
// k-nearest neighbours.

TEST_CASE("all knn algorithm names give identical predictions") {
  const Dataset d = blobs(2, 8, 3, 7004, 3.0);
  const Dataset probe = blobs(2, 6, 3, 7005, 3.0);
  const std::vector<int> brute =
      fit(ClassifierSpec::parse("knn(algorithm=brute,n_neighbors=3)"), d, 0).predict(probe.X);
  for (const char* alg : {"ball_tree", "kd_tree", "auto"}) {
    const ClassifierSpec spec = ClassifierSpec::parse(
        "knn(algorithm=" + std::string(alg) + ",n_neighbors=3)");
    CHECK(fit(spec, d, 0).predict(probe.X) == brute);
  }
}

TEST_CASE("knn breaks distance ties by training index and vote ties by label") {
  Eigen::MatrixXd probe(1, 1);
  probe << 1.0;  // equidistant from both training points

  // k=1: equal distances resolve to the earlier training row.
  const Dataset first_wins = from_rows({{0.0}, {2.0}}, {1, 0});
  CHECK(fit(ClassifierSpec::parse("knn(n_neighbors=1)"), first_wins, 0).predict(probe) ==
        std::vector<int>{1});

  // k=2: a 1-1 vote resolves to the lower label no matter the row order.
  CHECK(fit(ClassifierSpec::parse("knn(n_neighbors=2)"), first_wins, 0).predict(probe) ==
        std::vector<int>{0});
  const Dataset swapped = from_rows({{0.0}, {2.0}}, {0, 1});
  CHECK(fit(ClassifierSpec::parse("knn(n_neighbors=2)"), swapped, 0).predict(probe) ==
        std::vector<int>{0});
}

TEST_CASE("knn with k beyond the sample count degrades to majority vote") {
  const Dataset d = from_rows({{0.0}, {1.0}, {10.0}}, {0, 0, 1});
  Eigen::MatrixXd probe(1, 1);
  probe << 9.5;
  CHECK(fit(ClassifierSpec::parse("knn(n_neighbors=50)"), d, 0).predict(probe) ==
        std::vector<int>{0});
}

// ---------------------------------------------------------------------------
// Gaussian naive Bayes.

TEST_CASE("gaussian_nb reproduces a hand-computed posterior") {
  // Class 0: {0, 2} -> mean 1, population var 1. Class 1: {10, 14} -> mean 12,
  // var 4. Equal priors. log-likelihood ratio flips between x=4 and x=7:
  //   at 4: -4.5 vs -log(2)-8      -> class 0
  //   at 7: -18  vs -log(2)-25/8   -> class 1
  const Dataset d = from_rows({{0.0}, {2.0}, {10.0}, {14.0}}, {0, 0, 1, 1});
  const TrainedModel m = fit(ClassifierSpec::parse("gaussian_nb()"), d, 0);
  Eigen::MatrixXd probe(2, 1);
  probe << 4.0, 7.0;
  CHECK(m.predict(probe) == std::vector<int>{0, 1});
}

TEST_CASE("gaussian_nb floors zero variances instead of dividing by zero") {
  // Feature 0 is constant inside each class; feature 1 carries no signal.
  const Dataset d = from_rows({{0.0, 5.0}, {0.0, 7.0}, {4.0, 5.0}, {4.0, 7.0}}, {0, 0, 1, 1});
  const TrainedModel m = fit(ClassifierSpec::parse("gaussian_nb()"), d, 0);
  Eigen::MatrixXd probe(2, 2);
  probe << 0.0, 6.0, 4.0, 6.0;
  CHECK(m.predict(probe) == std::vector<int>{0, 1});
}

TEST_CASE("gaussian_nb on fully constant features ties to the lower label") {
  const Dataset d = from_rows({{3.0}, {3.0}, {3.0}, {3.0}}, {0, 0, 1, 1});
  const TrainedModel m = fit(ClassifierSpec::parse("gaussian_nb()"), d, 0);
  Eigen::MatrixXd probe(1, 1);
  probe << 3.0;
  CHECK(m.predict(probe) == std::vector<int>{0});
}

TEST_CASE("gaussian_nb rejects explicit priors") {
  const Dataset d = blobs(2, 4, 1, 7006);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("gaussian_nb(priors=0.5)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
  CHECK_NOTHROW(fit(ClassifierSpec::parse("gaussian_nb(priors=None)"), d, 0));
}

// ---------------------------------------------------------------------------
// Quadratic discriminant analysis.

TEST_CASE("qda with full shrinkage reduces to nearest centroid") {
  // reg_param=1 replaces every class covariance with the identity, so with
  // equal priors the discriminant is plain squared distance to the mean.
  const Dataset d = blobs(3, 10, 3, 7007, 4.0);
  Eigen::MatrixXd centroid = Eigen::MatrixXd::Zero(3, 3);
  for (Eigen::Index i = 0; i < d.X.rows(); ++i)
    centroid.row(d.y[static_cast<std::size_t>(i)]) += d.X.row(i);
  centroid /= 10.0;

  const Dataset probe = blobs(3, 20, 3, 7008, 4.0);
  const std::vector<int> got =
      fit(ClassifierSpec::parse("qda(reg_param=1)"), d, 0).predict(probe.X);
  for (Eigen::Index i = 0; i < probe.X.rows(); ++i) {
    int nearest = 0;
    for (int k = 1; k < 3; ++k)
      if ((probe.X.row(i) - centroid.row(k)).squaredNorm() <
          (probe.X.row(i) - centroid.row(nearest)).squaredNorm())
        nearest = k;
    CHECK(got[static_cast<std::size_t>(i)] == nearest);
  }
}

TEST_CASE("qda reports a singular class covariance") {
  // Class 0 lies on a line in 2-d, so its covariance is rank one.
  const Dataset d = from_rows(
      {{0.0, 0.0}, {1.0, 1.0}, {2.0, 2.0}, {5.0, 0.0}, {6.0, 2.0}, {7.0, 1.0}},
      {0, 0, 0, 1, 1, 1});
  CHECK(code_of([&] { fit(ClassifierSpec::parse("qda(reg_param=0)"), d, 0); }) ==
        ErrorCode::SingularCovariance);
  CHECK_NOTHROW(fit(ClassifierSpec::parse("qda(reg_param=0.1)"), d, 0));
}

TEST_CASE("qda breaks exact score ties toward the lower label") {
  // Mirror-image classes: equal variances and priors, query at the midpoint.
  const Dataset d = from_rows({{-1.0}, {-3.0}, {1.0}, {3.0}}, {0, 0, 1, 1});
  Eigen::MatrixXd probe(1, 1);
  probe << 0.0;
  CHECK(fit(ClassifierSpec::parse("qda()"), d, 0).predict(probe) == std::vector<int>{0});
}

TEST_CASE("qda validates reg_param range") {
  const Dataset d = blobs(2, 6, 2, 7009);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("qda(reg_param=1.5)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
}

// ---------------------------------------------------------------------------
// Decision tree.

TEST_CASE("decision tree learns a 1-d interval with two splits") {
  const Dataset d = from_rows({{0.0}, {1.0}, {2.0}, {3.0}}, {0, 1, 1, 0});
  const TrainedModel m = fit(ClassifierSpec::parse("decision_tree()"), d, 0);
  CHECK(m.predict(d.X) == d.y);
  Eigen::MatrixXd probe(3, 1);
  probe << -1.0, 1.5, 9.0;
  CHECK(m.predict(probe) == std::vector<int>{0, 1, 0});
}

TEST_CASE("decision tree refuses zero-gain splits, leaving a majority leaf") {
  // 2-d XOR: every axis-aligned split leaves the class mix unchanged, so the
  // root never splits and the 2-2 majority tie resolves to the lower label.
  const Dataset d =
      from_rows({{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}, {0, 1, 1, 0});
  const TrainedModel m = fit(ClassifierSpec::parse("decision_tree()"), d, 0);
  CHECK(m.predict(d.X) == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("min_samples_split gates splitting") {
  const Dataset d = from_rows({{0.0}, {1.0}, {2.0}, {3.0}}, {0, 1, 1, 0});
  const TrainedModel m =
      fit(ClassifierSpec::parse("decision_tree(min_samples_split=5)"), d, 0);
  CHECK(m.predict(d.X) == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("max_depth caps the tree") {
  const Dataset d = from_rows({{0.0}, {1.0}, {2.0}, {3.0}}, {0, 1, 1, 0});
  const TrainedModel m = fit(ClassifierSpec::parse("decision_tree(max_depth=1)"), d, 0);
  // One split at 0.5: left leaf 0, right leaf majority(1,1,0) = 1.
  CHECK(m.predict(d.X) == std::vector<int>{0, 1, 1, 1});
}

TEST_CASE("decision tree accepts entropy and rejects unknown criteria") {
  const Dataset d = blobs(2, 6, 2, 7010);
  CHECK(train_accuracy(ClassifierSpec::parse("decision_tree(criterion=entropy)"), d, 0) == 1.0);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("decision_tree(criterion=twoing)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
  // max_features belongs to the forest, not the single tree.
  CHECK(code_of([&] { fit(ClassifierSpec::parse("decision_tree(max_features=1)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
}

// ---------------------------------------------------------------------------
// Random forest.

TEST_CASE("a one-tree forest without bootstrap equals the plain tree") {
  const Dataset d = blobs(3, 8, 3, 7011, 3.0);
  const Dataset probe = blobs(3, 10, 3, 7012, 3.0);
  const std::vector<int> forest =
      fit(ClassifierSpec::parse("random_forest(bootstrap=False,n_estimators=1)"), d, 123)
          .predict(probe.X);
  const std::vector<int> tree =
      fit(ClassifierSpec::parse("decision_tree()"), d, 456).predict(probe.X);
  CHECK(forest == tree);  // no randomness is consumed on either path
}

TEST_CASE("bootstrap resampling reacts to the seed") {
  const Dataset d = blobs(2, 10, 2, 7013, 2.0);
  const ClassifierSpec spec =
      ClassifierSpec::parse("random_forest(max_features=1,n_estimators=5)");
  const Dataset probe = blobs(2, 40, 2, 7014, 2.0);
  const std::vector<int> a = fit(spec, d, 1).predict(probe.X);
  const std::vector<int> b = fit(spec, d, 1).predict(probe.X);
  CHECK(a == b);
  // Different seeds resample differently; predictions may or may not match,
  // but fitting must succeed and stay within the label set.
  for (int label : fit(spec, d, 2).predict(probe.X)) CHECK((label == 0 || label == 1));
}

// ---------------------------------------------------------------------------
// AdaBoost.

TEST_CASE("ada_boost nails threshold data with one stump") {
  const Dataset d = from_rows({{0.0}, {1.0}, {2.0}, {10.0}, {11.0}, {12.0}}, {0, 0, 0, 1, 1, 1});
  CHECK(train_accuracy(ClassifierSpec::parse("ada_boost(n_estimators=10)"), d, 0) == 1.0);
}

TEST_CASE("ada_boost stacks stumps into a 3-class staircase") {
  const Dataset d =
      from_rows({{0.0}, {1.0}, {2.0}, {3.0}, {4.0}, {5.0}}, {0, 0, 1, 1, 2, 2});
  CHECK(train_accuracy(
            ClassifierSpec::parse("ada_boost(learning_rate=1,n_estimators=50)"), d, 0) == 1.0);
}

TEST_CASE("ada_boost validates its parameters") {
  const Dataset d = blobs(2, 5, 1, 7015);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("ada_boost(learning_rate=0)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("ada_boost(n_estimators=0)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
}

// ---------------------------------------------------------------------------
// MLP internals.

namespace {

Eigen::MatrixXd one_hot(const std::vector<int>& y, int K) {
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(K, static_cast<Eigen::Index>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) Y(y[i], static_cast<Eigen::Index>(i)) = 1.0;
  return Y;
}

double mlp_fd_worst(MlpNet net, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                    MlpActivation act, double alpha) {
  MlpGradient g;
  mlp_loss_and_gradient(net, X, Y, act, alpha, &g);

  const double h = 1e-5;
  double worst = 0.0;
  auto probe = [&](double* param, double analytic) {
    const double keep = *param;
    *param = keep + h;
    const double up = mlp_loss_and_gradient(net, X, Y, act, alpha, nullptr);
    *param = keep - h;
    const double dn = mlp_loss_and_gradient(net, X, Y, act, alpha, nullptr);
    *param = keep;
    const double fd = (up - dn) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - analytic) /
                                std::max(1e-4, std::abs(fd) + std::abs(analytic)));
  };
  for (Eigen::Index i = 0; i < net.W1.size(); ++i)
    probe(net.W1.data() + i, g.W1.data()[i]);
  for (Eigen::Index i = 0; i < net.b1.size(); ++i)
    probe(net.b1.data() + i, g.b1.data()[i]);
  for (Eigen::Index i = 0; i < net.W2.size(); ++i)
    probe(net.W2.data() + i, g.W2.data()[i]);
  for (Eigen::Index i = 0; i < net.b2.size(); ++i)
    probe(net.b2.data() + i, g.b2.data()[i]);
  return worst;
}

}  // namespace

TEST_CASE("mlp initialisation is a zero-bias uniform envelope") {
  const MlpNet net = mlp_init(5, 4, 3, 99);
  CHECK(net.W1.rows() == 4);
  CHECK(net.W1.cols() == 5);
  CHECK(net.W2.rows() == 3);
  CHECK(net.W2.cols() == 4);
  CHECK((net.b1.array() == 0.0).all());
  CHECK((net.b2.array() == 0.0).all());
  CHECK(net.W1.cwiseAbs().maxCoeff() <= std::sqrt(6.0 / (5 + 4)));
  CHECK(net.W2.cwiseAbs().maxCoeff() <= std::sqrt(6.0 / (4 + 3)));
  CHECK(net.W1.cwiseAbs().maxCoeff() > 0.0);
  const MlpNet again = mlp_init(5, 4, 3, 99);
  CHECK((net.W1.array() == again.W1.array()).all());
}

TEST_CASE("mlp forward produces softmax columns") {
  const MlpNet net = mlp_init(3, 4, 3, 7);
  Eigen::MatrixXd X(5, 3);
  Rng rng(8);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.normal();
  const Eigen::MatrixXd P = mlp_forward(net, X, MlpActivation::Tanh);
  REQUIRE(P.rows() == 3);
  REQUIRE(P.cols() == 5);
  for (Eigen::Index c = 0; c < P.cols(); ++c) {
    CHECK(P.col(c).sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(P.col(c).minCoeff() > 0.0);
  }
}

TEST_CASE("mlp gradients match finite differences for smooth activations") {
  Rng rng(9);
  Eigen::MatrixXd X(6, 3);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.normal();
  const std::vector<int> y = {0, 1, 2, 0, 1, 2};
  const Eigen::MatrixXd Y = one_hot(y, 3);
  for (MlpActivation act : {MlpActivation::Logistic, MlpActivation::Tanh}) {
    const MlpNet net = mlp_init(3, 4, 3, 10 + static_cast<int>(act));
    CHECK(mlp_fd_worst(net, X, Y, act, 0.01) < 1e-5);
  }
}

TEST_CASE("mlp relu gradient matches away from the kink") {
  // Integer-ish weights and inputs keep every hidden pre-activation far from
  // zero, where the relu derivative is unambiguous.
  MlpNet net;
  net.W1.resize(2, 2);
  net.W1 << 1.0, -1.0, 0.5, 1.0;
  net.b1 = Eigen::VectorXd::Constant(2, 0.7);
  net.W2.resize(2, 2);
  net.W2 << 0.8, -0.6, -0.3, 0.9;
  net.b2 = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd X(2, 2);
  X << 2.0, -1.0, -2.0, 1.0;
  const Eigen::MatrixXd Z = (net.W1 * X.transpose()).colwise() + net.b1;
  REQUIRE(Z.array().abs().minCoeff() > 1e-3);
  const Eigen::MatrixXd Y = one_hot({0, 1}, 2);
  CHECK(mlp_fd_worst(net, X, Y, MlpActivation::Relu, 0.001) < 1e-5);
}

TEST_CASE("mlp training fits blobs with both implemented solvers") {
  const Dataset d = blobs(2, 15, 2, 7016);
  CHECK(train_accuracy(ClassifierSpec::parse(
            "mlp(learning_rate_init=0.1,solver=adam)"), d, 5) >= 0.95);
  CHECK(train_accuracy(ClassifierSpec::parse(
            "mlp(learning_rate_init=0.1,momentum=0.9,solver=sgd)"), d, 5) >= 0.95);
}

TEST_CASE("mlp rejects lbfgs and out-of-range settings") {
  const Dataset d = blobs(2, 5, 2, 7017);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("mlp(solver=lbfgs)"), d, 0); }) ==
        ErrorCode::UnsupportedHyperParam);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("mlp(solver=newton)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("mlp(momentum=1)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("mlp(hidden_layer_sizes=0)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
}

// ---------------------------------------------------------------------------
// SVM internals and behaviour.

TEST_CASE("smo solution satisfies the box and equality constraints") {
  const Dataset d = blobs(2, 12, 2, 7018, 6.0);
  Eigen::VectorXd y_signed(d.X.rows());
  for (Eigen::Index i = 0; i < d.X.rows(); ++i)
    y_signed[i] = d.y[static_cast<std::size_t>(i)] == 0 ? 1.0 : -1.0;

  const double C = 1.0;
  const Eigen::MatrixXd K = kernel_matrix(d.X, d.X, SvmKernel::Linear, 1.0);
  const SmoResult model = smo_train(K, y_signed, C, 1e-3, 100, 17);

  CHECK(model.alpha.minCoeff() >= -1e-12);
  CHECK(model.alpha.maxCoeff() <= C + 1e-12);
  CHECK(std::abs(model.alpha.dot(y_signed)) < 1e-9);

  const Eigen::VectorXd f = svm_decision(model, y_signed, K);
  for (Eigen::Index i = 0; i < f.size(); ++i) CHECK(f[i] * y_signed[i] > 0.0);
}

TEST_CASE("rbf kernel matrix has unit diagonal and matches the formula") {
  Eigen::MatrixXd A(2, 2);
  A << 0.0, 0.0, 1.0, 1.0;
  const Eigen::MatrixXd K = kernel_matrix(A, A, SvmKernel::Rbf, 0.5);
  CHECK(K(0, 0) == doctest::Approx(1.0));
  CHECK(K(1, 1) == doctest::Approx(1.0));
  CHECK(K(0, 1) == doctest::Approx(std::exp(-0.5 * 2.0)).epsilon(1e-12));
  CHECK(K(0, 1) == K(1, 0));
}

TEST_CASE("gamma=auto equals one over the feature count") {
  const Dataset d = blobs(2, 10, 4, 7019);  // F = 4 -> auto gamma 0.25
  const Dataset probe = blobs(2, 15, 4, 7020);
  const std::vector<int> via_auto =
      fit(ClassifierSpec::parse("svm_rbf(C=1,gamma=auto)"), d, 3).predict(probe.X);
  const std::vector<int> via_value =
      fit(ClassifierSpec::parse("svm_rbf(C=1,gamma=0.25)"), d, 3).predict(probe.X);
  CHECK(via_auto == via_value);
}

TEST_CASE("rbf separates the ring that defeats the linear kernel") {
  // Class 0 hugs the origin, class 1 sits on a radius-5 ring: no line works.
  Dataset d;
  d.X.resize(24, 2);
  Rng rng(7021);
  for (int i = 0; i < 12; ++i) {
    d.X(i, 0) = 0.3 * rng.normal();
    d.X(i, 1) = 0.3 * rng.normal();
    d.y.push_back(0);
  }
  for (int i = 0; i < 12; ++i) {
    const double a = rng.uniform(0.0, 2.0 * 3.14159265358979);
    d.X(12 + i, 0) = 5.0 * std::cos(a);
    d.X(12 + i, 1) = 5.0 * std::sin(a);
    d.y.push_back(1);
  }
  CHECK(train_accuracy(ClassifierSpec::parse("svm_rbf(C=1,gamma=0.5)"), d, 0) == 1.0);
  CHECK(train_accuracy(ClassifierSpec::parse("svm_linear(C=1)"), d, 0) < 0.9);
}

TEST_CASE("one-vs-one svm handles three classes") {
  const Dataset d = blobs(3, 10, 2, 7022, 8.0);
  CHECK(train_accuracy(ClassifierSpec::parse("svm_linear(C=1)"), d, 0) >= 0.95);
  CHECK(train_accuracy(ClassifierSpec::parse("svm_rbf(C=1,gamma=auto)"), d, 0) >= 0.95);
}

TEST_CASE("svm validates C and gamma") {
  const Dataset d = blobs(2, 5, 2, 7023);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("svm_linear(C=0)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("svm_rbf(C=1,gamma=scale)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("svm_rbf(C=1,gamma=-2)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
}

// ---------------------------------------------------------------------------
// Cross-cutting contracts.

TEST_CASE("gaussian_process is accepted as a spec but refuses to fit") {
  const Dataset d = blobs(2, 5, 2, 7024);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("gaussian_process(warm_start=True)"), d, 0); }) ==
        ErrorCode::UnsupportedHyperParam);
  // Unknown keys are still diagnosed first.
  CHECK(code_of([&] { fit(ClassifierSpec::parse("gaussian_process(kernel=rbf)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
}

TEST_CASE("unknown hyper-parameters are rejected by name") {
  const Dataset d = blobs(2, 5, 2, 7025);
  try {
    fit(ClassifierSpec::parse("knn(bogus=1)"), d, 0);
    FAIL("expected InvalidHyperParam");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidHyperParam);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }
  CHECK(code_of([&] { fit(ClassifierSpec::parse("knn(n_neighbors=0)"), d, 0); }) ==
        ErrorCode::InvalidHyperParam);
}

TEST_CASE("predict rejects a feature-count mismatch") {
  const Dataset d = blobs(2, 5, 3, 7026);
  const TrainedModel m = fit(ClassifierSpec::parse("knn(n_neighbors=1)"), d, 0);
  Eigen::MatrixXd wrong(2, 4);
  wrong.setZero();
  try {
    m.predict(wrong);
    FAIL("expected DimensionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("accuracy is a plain hit rate with strict length checks") {
  CHECK(accuracy({1, 2, 3, 4}, {1, 2, 0, 4}) == 0.75);
  CHECK(accuracy({5}, {5}) == 1.0);
  CHECK_THROWS_AS(accuracy({1, 2}, {1}), Error);
  CHECK_THROWS_AS(accuracy({}, {}), Error);
}

TEST_CASE("non-contiguous labels survive the round trip") {
  Dataset d = blobs(2, 6, 2, 7027);
  for (int& label : d.y) label = label == 0 ? 3 : 7;
  const TrainedModel m = fit(ClassifierSpec::parse("knn(n_neighbors=1)"), d, 0);
  CHECK(m.classes() == std::vector<int>{3, 7});
  for (int label : m.predict(d.X)) CHECK((label == 3 || label == 7));
  CHECK(accuracy(d.y, m.predict(d.X)) == 1.0);
}

TEST_CASE("datasets are validated before fitting") {
  Dataset one_class = blobs(1, 6, 2, 7028);
  CHECK(code_of([&] { fit(ClassifierSpec::parse("knn(n_neighbors=1)"), one_class, 0); }) ==
        ErrorCode::InvalidDataset);

  Dataset ragged = blobs(2, 3, 2, 7029);
  ragged.y.pop_back();
  CHECK(code_of([&] { fit(ClassifierSpec::parse("knn(n_neighbors=1)"), ragged, 0); }) ==
        ErrorCode::InvalidDataset);

  Dataset with_nan = blobs(2, 3, 2, 7030);
  with_nan.X(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(code_of([&] { fit(ClassifierSpec::parse("knn(n_neighbors=1)"), with_nan, 0); }) ==
        ErrorCode::InvalidDataset);
}
