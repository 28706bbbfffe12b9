#include "eegpipe/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "eegpipe/error.hpp"
#include "eegpipe/rng.hpp"

namespace eegpipe {

namespace {

constexpr double kProbClamp = 1e-10;

Eigen::MatrixXd activate(const Eigen::MatrixXd& A, MlpActivation act) {
  switch (act) {
    case MlpActivation::Logistic:
      return A.unaryExpr([](double a) { return 1.0 / (1.0 + std::exp(-a)); });
    case MlpActivation::Tanh:
      return A.array().tanh().matrix();
    case MlpActivation::Relu:
      return A.cwiseMax(0.0);
  }
  return A;
}

// Derivative expressed through H (and A for relu, whose kink maps to 0).
Eigen::MatrixXd activation_grad(const Eigen::MatrixXd& A, const Eigen::MatrixXd& H,
                                MlpActivation act) {
  switch (act) {
    case MlpActivation::Logistic:
      return (H.array() * (1.0 - H.array())).matrix();
    case MlpActivation::Tanh:
      return (1.0 - H.array().square()).matrix();
    case MlpActivation::Relu:
      return A.unaryExpr([](double a) { return a > 0.0 ? 1.0 : 0.0; });
  }
  return H;
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& A) {
  Eigen::MatrixXd P(A.rows(), A.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    const double mx = A.row(i).maxCoeff();
    Eigen::ArrayXd e = (A.row(i).array() - mx).exp();
    P.row(i) = (e / e.sum()).matrix();
  }
  return P;
}

struct ForwardParts {
  Eigen::MatrixXd A1;  // m x h
  Eigen::MatrixXd H;   // m x h
  Eigen::MatrixXd P;   // m x K
};

ForwardParts forward_parts(const MlpNet& net, const Eigen::MatrixXd& X, MlpActivation act) {
  ForwardParts f;
  f.A1 = (X * net.W1.transpose()).rowwise() + net.b1.transpose();
  f.H = activate(f.A1, act);
  f.P = softmax_rows((f.H * net.W2.transpose()).rowwise() + net.b2.transpose());
  return f;
}

}  // namespace

MlpNet mlp_init(int features, int hidden, int classes, std::uint64_t seed) {
  if (features < 1 || hidden < 1 || classes < 2)
    raise(ErrorCode::InvalidHyperParam, "mlp needs features >= 1, hidden >= 1, classes >= 2");
  Rng rng(seed);
  MlpNet net;
  const double l1 = std::sqrt(6.0 / static_cast<double>(features + hidden));
  net.W1.resize(hidden, features);
  for (Eigen::Index i = 0; i < net.W1.rows(); ++i)
    for (Eigen::Index j = 0; j < net.W1.cols(); ++j) net.W1(i, j) = rng.uniform(-l1, l1);
  const double l2 = std::sqrt(6.0 / static_cast<double>(hidden + classes));
  net.W2.resize(classes, hidden);
  for (Eigen::Index i = 0; i < net.W2.rows(); ++i)
    for (Eigen::Index j = 0; j < net.W2.cols(); ++j) net.W2(i, j) = rng.uniform(-l2, l2);
  net.b1 = Eigen::VectorXd::Zero(hidden);
  net.b2 = Eigen::VectorXd::Zero(classes);
  return net;
}

Eigen::MatrixXd mlp_forward(const MlpNet& net, const Eigen::MatrixXd& X,
                            MlpActivation activation) {
  if (X.cols() != net.W1.cols()) raise(ErrorCode::DimensionMismatch, "mlp_forward: bad feature count");
  return forward_parts(net, X, activation).P.transpose();
}

double mlp_loss_and_gradient(const MlpNet& net, const Eigen::MatrixXd& X,
                             const Eigen::MatrixXd& Y_onehot, MlpActivation activation,
                             double alpha, MlpGradient* grad) {
  if (X.cols() != net.W1.cols()) raise(ErrorCode::DimensionMismatch, "mlp loss: bad feature count");
  if (Y_onehot.cols() != X.rows() || Y_onehot.rows() != net.W2.rows())
    raise(ErrorCode::DimensionMismatch, "mlp loss: bad target shape");

  const double m = static_cast<double>(X.rows());
  const ForwardParts f = forward_parts(net, X, activation);
  const Eigen::MatrixXd Y = Y_onehot.transpose();  // m x K

  double loss = 0.0;
  for (Eigen::Index i = 0; i < f.P.rows(); ++i)
    for (Eigen::Index j = 0; j < f.P.cols(); ++j)
      if (Y(i, j) > 0.0)
        loss -= Y(i, j) * std::log(std::clamp(f.P(i, j), kProbClamp, 1.0 - kProbClamp));
  loss /= m;
  loss += 0.5 * alpha * (net.W1.squaredNorm() + net.W2.squaredNorm()) / m;

  if (grad) {
    const Eigen::MatrixXd D2 = (f.P - Y) / m;  // m x K
    grad->W2 = D2.transpose() * f.H + (alpha / m) * net.W2;
    grad->b2 = D2.colwise().sum().transpose();
    const Eigen::MatrixXd D1 =
        ((D2 * net.W2).array() * activation_grad(f.A1, f.H, activation).array()).matrix();
    grad->W1 = D1.transpose() * X + (alpha / m) * net.W1;
    grad->b1 = D1.colwise().sum().transpose();
  }
  return loss;
}

MlpNet mlp_train(const Eigen::MatrixXd& X, const std::vector<int>& y, int num_classes,
                 const MlpConfig& cfg) {
  const Eigen::Index m_total = X.rows();
  if (static_cast<std::size_t>(m_total) != y.size())
    raise(ErrorCode::DimensionMismatch, "mlp_train: X/y mismatch");

  MlpNet net = mlp_init(static_cast<int>(X.cols()), cfg.hidden, num_classes, cfg.seed);
  Rng rng(derive_seed(cfg.seed, {fnv1a64("mlp-shuffle")}));

  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(num_classes, m_total);  // K x m
  for (Eigen::Index i = 0; i < m_total; ++i) Y(y[static_cast<std::size_t>(i)], i) = 1.0;

  const Eigen::Index batch = std::min<Eigen::Index>(200, m_total);

  MlpGradient vel{Eigen::MatrixXd::Zero(net.W1.rows(), net.W1.cols()),
                  Eigen::VectorXd::Zero(net.b1.size()),
                  Eigen::MatrixXd::Zero(net.W2.rows(), net.W2.cols()),
                  Eigen::VectorXd::Zero(net.b2.size())};
  MlpGradient adam_m = vel;
  MlpGradient adam_v = vel;
  long adam_t = 0;

  std::vector<int> order(static_cast<std::size_t>(m_total));
  std::iota(order.begin(), order.end(), 0);

  double best_loss = std::numeric_limits<double>::infinity();
  int no_improve = 0;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;

    for (Eigen::Index start = 0; start < m_total; start += batch) {
      const Eigen::Index bsize = std::min(batch, m_total - start);
      Eigen::MatrixXd Xb(bsize, X.cols());
      Eigen::MatrixXd Yb(num_classes, bsize);
      for (Eigen::Index r = 0; r < bsize; ++r) {
        Xb.row(r) = X.row(order[static_cast<std::size_t>(start + r)]);
        Yb.col(r) = Y.col(order[static_cast<std::size_t>(start + r)]);
      }

      MlpGradient g;
      epoch_loss +=
          mlp_loss_and_gradient(net, Xb, Yb, cfg.activation, cfg.alpha, &g) *
          static_cast<double>(bsize);

      if (cfg.solver == MlpSolver::Sgd) {
        const double mu = cfg.momentum;
        const double lr = cfg.learning_rate_init;
        vel.W1 = mu * vel.W1 - lr * g.W1;
        vel.b1 = mu * vel.b1 - lr * g.b1;
        vel.W2 = mu * vel.W2 - lr * g.W2;
        vel.b2 = mu * vel.b2 - lr * g.b2;
        net.W1 += vel.W1;
        net.b1 += vel.b1;
        net.W2 += vel.W2;
        net.b2 += vel.b2;
      } else {
        constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        ++adam_t;
        const double corr1 = 1.0 - std::pow(b1, static_cast<double>(adam_t));
        const double corr2 = 1.0 - std::pow(b2, static_cast<double>(adam_t));
        const double step = cfg.learning_rate_init * std::sqrt(corr2) / corr1;
        auto update = [&](auto& m1, auto& v1, auto& param, const auto& grad) {
          m1 = b1 * m1 + (1.0 - b1) * grad;
          v1 = (b2 * v1.array() + (1.0 - b2) * grad.array().square()).matrix();
          param.array() -= step * m1.array() / (v1.array().sqrt() + eps);
        };
        update(adam_m.W1, adam_v.W1, net.W1, g.W1);
        update(adam_m.b1, adam_v.b1, net.b1, g.b1);
        update(adam_m.W2, adam_v.W2, net.W2, g.W2);
        update(adam_m.b2, adam_v.b2, net.b2, g.b2);
      }
    }

    epoch_loss /= static_cast<double>(m_total);
    if (epoch_loss > best_loss - cfg.tol)
      ++no_improve;
    else
      no_improve = 0;
    best_loss = std::min(best_loss, epoch_loss);
    if (no_improve >= cfg.n_iter_no_change) break;
  }
  return net;
}

std::vector<int> mlp_predict(const MlpNet& net, const Eigen::MatrixXd& X,
                             MlpActivation activation) {
  const Eigen::MatrixXd P = forward_parts(net, X, activation).P;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(P.rows()));
  for (Eigen::Index i = 0; i < P.rows(); ++i) {
    int best = 0;
    for (Eigen::Index k = 1; k < P.cols(); ++k)
      if (P(i, k) > P(i, best)) best = static_cast<int>(k);
    out.push_back(best);
  }
  return out;
}

}  // namespace eegpipe
