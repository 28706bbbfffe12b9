#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace eegpipe {

enum class MlpActivation {
  Logistic,
  Tanh,
  Relu,
};

enum class MlpSolver {
  Sgd,   // classic momentum
  Adam,  // beta1 0.9, beta2 0.999, eps 1e-8
};

struct MlpConfig {
  int hidden{8};
  MlpActivation activation{MlpActivation::Relu};
  MlpSolver solver{MlpSolver::Sgd};
  double alpha{1e-4};  // L2 penalty
  double learning_rate_init{1e-3};
  double momentum{0.9};  // sgd only
  int max_epochs{200};
  double tol{1e-4};
  int n_iter_no_change{10};
  std::uint64_t seed{0};
};

// One hidden layer, softmax output. Shapes: W1 h x F, b1 h, W2 K x h, b2 K.
struct MlpNet {
  Eigen::MatrixXd W1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd W2;
  Eigen::VectorXd b2;
};

struct MlpGradient {
  Eigen::MatrixXd W1;
  Eigen::VectorXd b1;
  Eigen::MatrixXd W2;
  Eigen::VectorXd b2;
};

// Uniform +-sqrt(6/(fan_in+fan_out)) weights (W1 then W2, row-major element
// order), zero biases.
MlpNet mlp_init(int features, int hidden, int classes, std::uint64_t seed);

// K x m class probabilities for the m x F batch.
Eigen::MatrixXd mlp_forward(const MlpNet& net, const Eigen::MatrixXd& X,
                            MlpActivation activation);

// Batch loss = mean cross-entropy + 0.5 * alpha * (|W1|^2 + |W2|^2) / m, and
// its exact gradient. Y_onehot is K x m.
double mlp_loss_and_gradient(const MlpNet& net, const Eigen::MatrixXd& X,
                             const Eigen::MatrixXd& Y_onehot, MlpActivation activation,
                             double alpha, MlpGradient* grad);

// Minibatch training (batch 200 or the whole set if smaller) with the
// configured solver; stops early after n_iter_no_change epochs without a tol
// improvement over the best loss.
MlpNet mlp_train(const Eigen::MatrixXd& X, const std::vector<int>& y, int num_classes,
                 const MlpConfig& cfg);

std::vector<int> mlp_predict(const MlpNet& net, const Eigen::MatrixXd& X,
                             MlpActivation activation);

}  // namespace eegpipe
