#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace eegpipe {

enum class SvmKernel {
  Linear,  // u . v
  Rbf,     // exp(-gamma |u - v|^2)
};

// Gram matrix for rows of A against rows of B.
Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              SvmKernel kernel, double gamma);

// Soft-margin binary SVM dual solution from simplified SMO.
struct SmoResult {
  Eigen::VectorXd alpha;  // in [0, C]
  double bias{0.0};
};

// K: precomputed n x n Gram matrix; y: labels in {-1, +1}. Runs passes over
// the data until max_passes consecutive passes change no pair by more than
// tol; the non-bound partner index is drawn from rng.
SmoResult smo_train(const Eigen::MatrixXd& K, const Eigen::VectorXd& y, double C,
                    double tol, int max_passes, std::uint64_t seed);

// Decision values f(x) = sum_i alpha_i y_i K(x_i, x) + b for each query row.
Eigen::VectorXd svm_decision(const SmoResult& model, const Eigen::VectorXd& y,
                             const Eigen::MatrixXd& K_query);

}  // namespace eegpipe
