#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eegpipe/rng.hpp"

namespace eegpipe {

// Single-hidden-layer auto-encoder with sigmoid activations on both layers.
// With tied weights the decoder matrix is W transposed; otherwise W_dec is a
// free (d x n) matrix.
struct AeParams {
  Eigen::MatrixXd W;      // n x d, hidden-by-input
  Eigen::VectorXd b;      // n, encoder bias
  Eigen::VectorXd b_dec;  // d, decoder bias
  Eigen::MatrixXd W_dec;  // d x n, used only when !tied
  bool tied{true};

  Eigen::Index hidden() const { return W.rows(); }
  Eigen::Index input() const { return W.cols(); }
};

enum class AeVariant {
  Denoising,    // level = corruption fraction, in [0, 0.5]
  Contractive,  // level = Jacobian penalty weight, >= 0
};

struct AeHyperParams {
  int hidden_units{2};
  double learning_rate{0.1};
  int batch_size{10};  // in [1, 40]
  int epochs{5000};
  AeVariant variant{AeVariant::Contractive};
  double level{0.1};
  bool tied{true};
  std::uint64_t seed{0};
};

void validate_hyper_params(const AeHyperParams& hp, int input_dim);

// h = sigmoid(W x + b). Row-per-sample batch variants operate on m x d.
Eigen::VectorXd encode(const AeParams& p, const Eigen::VectorXd& x);
Eigen::MatrixXd encode_batch(const AeParams& p, const Eigen::MatrixXd& X);

// z = sigmoid(W' h + b_dec), W' = W transposed when tied.
Eigen::VectorXd decode(const AeParams& p, const Eigen::VectorXd& h);
Eigen::MatrixXd decode_batch(const AeParams& p, const Eigen::MatrixXd& H);

// Zeroes exactly round(level * d) distinct components chosen by rng.
Eigen::VectorXd corrupt(const Eigen::VectorXd& x, double level, Rng& rng);

// -sum_k [x log z + (1-x) log(1-z)], natural log, z clamped to [eps, 1-eps].
inline constexpr double kLogClampEps = 1e-7;
double cross_entropy(const Eigen::VectorXd& x, const Eigen::VectorXd& z);

// Mean reconstruction cross-entropy of the batch plus, when lambda > 0, the
// batch-mean squared Frobenius norm of the encoder Jacobian
// J_i = h_i (1 - h_i) W_i, weighted by lambda. X_in and X_target are m x d
// row-per-sample; they differ only for the denoising variant.
double ae_objective(const AeParams& p, const Eigen::MatrixXd& X_in,
                    const Eigen::MatrixXd& X_target, double lambda);

// Convenience wrapper: clean input reconstructed against itself.
double contractive_objective(const AeParams& p, const Eigen::MatrixXd& batch, double lambda);

// Exact analytic gradient of ae_objective in the same shapes as AeParams.
struct AeGradient {
  Eigen::MatrixXd W;
  Eigen::VectorXd b;
  Eigen::VectorXd b_dec;
  Eigen::MatrixXd W_dec;  // filled only when !tied
};
AeGradient ae_gradient(const AeParams& p, const Eigen::MatrixXd& X_in,
                       const Eigen::MatrixXd& X_target, double lambda);

struct LossTrace {
  std::vector<double> per_epoch;  // mean objective per epoch, length = epochs
};

// Minibatch gradient descent from a seeded uniform init of W in
// +-4*sqrt(6/(d+n)), biases zero. Sample order is reshuffled every epoch; a
// short final batch is kept. data is 40 x d, scaled to [0,1].
std::pair<AeParams, LossTrace> train_autoencoder(const Eigen::MatrixXd& data,
                                                 const AeHyperParams& hp);

// W flattened row-major (hidden unit 0's weights first); biases excluded.
Eigen::VectorXd session_representation(const AeParams& p);

// CSV round-trip: first line "n,d,tied" (tied as 1/0), then the n rows of W,
// then b, then b_dec, each as one comma-separated line; untied params append
// the d rows of W_dec.
void write_ae_params(const AeParams& p, const std::filesystem::path& path);
AeParams read_ae_params(const std::filesystem::path& path);

}  // namespace eegpipe
