#include "eegpipe/svm.hpp"

#include <algorithm>
#include <cmath>

#include "eegpipe/error.hpp"
#include "eegpipe/rng.hpp"

namespace eegpipe {

Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                              SvmKernel kernel, double gamma) {
  if (A.cols() != B.cols()) raise(ErrorCode::DimensionMismatch, "kernel: feature mismatch");
  if (kernel == SvmKernel::Linear) return A * B.transpose();

  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j)
      K(i, j) = std::exp(-gamma * (A.row(i) - B.row(j)).squaredNorm());
  return K;
}

SmoResult smo_train(const Eigen::MatrixXd& K, const Eigen::VectorXd& y, double C,
                    double tol, int max_passes, std::uint64_t seed) {
  const Eigen::Index n = K.rows();
  if (K.cols() != n || y.size() != n) raise(ErrorCode::DimensionMismatch, "smo: bad shapes");

  Rng rng(seed);
  SmoResult r;
  r.alpha = Eigen::VectorXd::Zero(n);
  r.bias = 0.0;

  auto decision = [&](Eigen::Index i) {
    double f = r.bias;
    for (Eigen::Index j = 0; j < n; ++j) f += r.alpha[j] * y[j] * K(j, i);
    return f;
  };

  int passes = 0;
  // Hard sweep cap so a pathological oscillation cannot spin forever.
  for (long sweep = 0; passes < max_passes && sweep < 100L * max_passes; ++sweep) {
    int changed = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double Ei = decision(i) - y[i];
      const bool violates = (y[i] * Ei < -tol && r.alpha[i] < C) ||
                            (y[i] * Ei > tol && r.alpha[i] > 0.0);
      if (!violates) continue;

      Eigen::Index j = static_cast<Eigen::Index>(rng.bounded(static_cast<std::uint64_t>(n - 1)));
      if (j >= i) ++j;
      const double Ej = decision(j) - y[j];

      const double ai_old = r.alpha[i];
      const double aj_old = r.alpha[j];
      double L, H;
      if (y[i] != y[j]) {
        L = std::max(0.0, aj_old - ai_old);
        H = std::min(C, C + aj_old - ai_old);
      } else {
        L = std::max(0.0, ai_old + aj_old - C);
        H = std::min(C, ai_old + aj_old);
      }
      if (L >= H) continue;

      const double eta = 2.0 * K(i, j) - K(i, i) - K(j, j);
      if (eta >= 0.0) continue;

      double aj = aj_old - y[j] * (Ei - Ej) / eta;
      aj = std::clamp(aj, L, H);
      if (std::abs(aj - aj_old) < 1e-5) continue;

      const double ai = std::clamp(ai_old + y[i] * y[j] * (aj_old - aj), 0.0, C);
      r.alpha[i] = ai;
      r.alpha[j] = aj;

      const double b1 = r.bias - Ei - y[i] * (ai - ai_old) * K(i, i) -
                        y[j] * (aj - aj_old) * K(i, j);
      const double b2 = r.bias - Ej - y[i] * (ai - ai_old) * K(i, j) -
                        y[j] * (aj - aj_old) * K(j, j);
      if (ai > 0.0 && ai < C)
        r.bias = b1;
      else if (aj > 0.0 && aj < C)
        r.bias = b2;
      else
        r.bias = (b1 + b2) / 2.0;
      ++changed;
    }
    passes = changed == 0 ? passes + 1 : 0;
  }
  return r;
}

Eigen::VectorXd svm_decision(const SmoResult& model, const Eigen::VectorXd& y,
                             const Eigen::MatrixXd& K_query) {
  if (K_query.cols() != y.size() || y.size() != model.alpha.size())
    raise(ErrorCode::DimensionMismatch, "svm_decision: bad shapes");
  return (K_query * (model.alpha.array() * y.array()).matrix()).array() + model.bias;
}

}  // namespace eegpipe
