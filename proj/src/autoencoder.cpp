#include "eegpipe/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

#include "eegpipe/error.hpp"
#include "eegpipe/text.hpp"

namespace eegpipe {

namespace {

inline double sigmoid(double a) { return 1.0 / (1.0 + std::exp(-a)); }

Eigen::MatrixXd sigmoid_all(Eigen::MatrixXd m) {
  return m.unaryExpr([](double a) { return sigmoid(a); });
}

// d x n decoder matrix view.
Eigen::MatrixXd decoder_matrix(const AeParams& p) {
  return p.tied ? Eigen::MatrixXd(p.W.transpose()) : p.W_dec;
}

// Gradient of the clamped cross-entropy w.r.t. the decoder pre-activation:
// Z - X where Z is inside the clamp window, 0 where the loss is locally flat.
Eigen::MatrixXd output_delta(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& X_target) {
  Eigen::MatrixXd d = Z - X_target;
  for (Eigen::Index i = 0; i < d.rows(); ++i)
    for (Eigen::Index j = 0; j < d.cols(); ++j)
      if (Z(i, j) <= kLogClampEps || Z(i, j) >= 1.0 - kLogClampEps) d(i, j) = 0.0;
  return d;
}

double clamped_ce_sum(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      const double x = X(i, j);
      const double z = std::clamp(Z(i, j), kLogClampEps, 1.0 - kLogClampEps);
      total -= x * std::log(z) + (1.0 - x) * std::log(1.0 - z);
    }
  return total;
}

void check_batch_shapes(const AeParams& p, const Eigen::MatrixXd& X_in,
                        const Eigen::MatrixXd& X_target) {
  if (X_in.cols() != p.input() || X_target.cols() != p.input() || X_in.rows() != X_target.rows())
    raise(ErrorCode::DimensionMismatch, "batch does not match parameter shapes");
  if (X_in.rows() == 0) raise(ErrorCode::DimensionMismatch, "empty batch");
}

}  // namespace

void validate_hyper_params(const AeHyperParams& hp, int input_dim) {
  if (hp.hidden_units < 1) raise(ErrorCode::InvalidHyperParams, "hidden_units must be >= 1");
  if (!(hp.learning_rate > 0.0))
    raise(ErrorCode::InvalidHyperParams, "learning_rate must be positive");
  if (hp.batch_size < 1 || hp.batch_size > 40)
    raise(ErrorCode::InvalidHyperParams, "batch_size must lie in [1, 40]");
  if (hp.epochs < 1) raise(ErrorCode::InvalidHyperParams, "epochs must be >= 1");
  if (hp.variant == AeVariant::Denoising) {
    if (!(hp.level >= 0.0 && hp.level <= 0.5))
      raise(ErrorCode::InvalidHyperParams, "corruption level must lie in [0, 0.5]");
  } else {
    if (!(hp.level >= 0.0))
      raise(ErrorCode::InvalidHyperParams, "contraction level must be >= 0");
  }
  if (input_dim < 1) raise(ErrorCode::InvalidHyperParams, "input dimension must be >= 1");
}

Eigen::VectorXd encode(const AeParams& p, const Eigen::VectorXd& x) {
  if (x.size() != p.input()) raise(ErrorCode::DimensionMismatch, "encode: bad input size");
  return ((p.W * x + p.b).unaryExpr([](double a) { return sigmoid(a); })).eval();
}

Eigen::MatrixXd encode_batch(const AeParams& p, const Eigen::MatrixXd& X) {
  if (X.cols() != p.input()) raise(ErrorCode::DimensionMismatch, "encode_batch: bad input size");
  return sigmoid_all((X * p.W.transpose()).rowwise() + p.b.transpose());
}

Eigen::VectorXd decode(const AeParams& p, const Eigen::VectorXd& h) {
  if (h.size() != p.hidden()) raise(ErrorCode::DimensionMismatch, "decode: bad hidden size");
  return ((decoder_matrix(p) * h + p.b_dec).unaryExpr([](double a) { return sigmoid(a); })).eval();
}

Eigen::MatrixXd decode_batch(const AeParams& p, const Eigen::MatrixXd& H) {
  if (H.cols() != p.hidden()) raise(ErrorCode::DimensionMismatch, "decode_batch: bad hidden size");
  return sigmoid_all((H * decoder_matrix(p).transpose()).rowwise() + p.b_dec.transpose());
}

Eigen::VectorXd corrupt(const Eigen::VectorXd& x, double level, Rng& rng) {
  const auto d = x.size();
  long k = std::lround(level * static_cast<double>(d));
  k = std::min(k, static_cast<long>(d / 2));  // never more than half
  Eigen::VectorXd out = x;
  if (k <= 0) return out;
  for (std::size_t idx : rng.sample_indices(static_cast<std::size_t>(d),
                                            static_cast<std::size_t>(k)))
    out[static_cast<Eigen::Index>(idx)] = 0.0;
  return out;
}

double cross_entropy(const Eigen::VectorXd& x, const Eigen::VectorXd& z) {
  if (x.size() != z.size()) raise(ErrorCode::DimensionMismatch, "cross_entropy: size mismatch");
  return clamped_ce_sum(x.transpose(), z.transpose());
}

double ae_objective(const AeParams& p, const Eigen::MatrixXd& X_in,
                    const Eigen::MatrixXd& X_target, double lambda) {
  check_batch_shapes(p, X_in, X_target);
  const double m = static_cast<double>(X_in.rows());

  const Eigen::MatrixXd H = encode_batch(p, X_in);
  const Eigen::MatrixXd Z = decode_batch(p, H);
  double obj = clamped_ce_sum(X_target, Z) / m;

  if (lambda > 0.0) {
    // sum_i [h_i (1-h_i)]^2 |W_i|^2, averaged over the batch
    const Eigen::MatrixXd S = (H.array() * (1.0 - H.array())).matrix();
    const Eigen::VectorXd row_norms = p.W.rowwise().squaredNorm();
    obj += lambda * (S.array().square().matrix() * row_norms).sum() / m;
  }
  return obj;
}

double contractive_objective(const AeParams& p, const Eigen::MatrixXd& batch, double lambda) {
  return ae_objective(p, batch, batch, lambda);
}

AeGradient ae_gradient(const AeParams& p, const Eigen::MatrixXd& X_in,
                       const Eigen::MatrixXd& X_target, double lambda) {
  check_batch_shapes(p, X_in, X_target);
  const double m = static_cast<double>(X_in.rows());

  const Eigen::MatrixXd H = encode_batch(p, X_in);
  const Eigen::MatrixXd Z = decode_batch(p, H);
  const Eigen::MatrixXd Wd = decoder_matrix(p);  // d x n

  // Reconstruction path.
  const Eigen::MatrixXd Dm = output_delta(Z, X_target) / m;            // m x d
  const Eigen::MatrixXd g_Wd = Dm.transpose() * H;                     // d x n
  const Eigen::MatrixXd Dh =
      ((Dm * Wd).array() * H.array() * (1.0 - H.array())).matrix();    // m x n

  AeGradient g;
  g.b_dec = Dm.colwise().sum().transpose();
  g.b = Dh.colwise().sum().transpose();
  g.W = Dh.transpose() * X_in;
  if (p.tied)
    g.W += g_Wd.transpose();
  else
    g.W_dec = g_Wd;

  if (lambda > 0.0) {
    // Penalty (lambda/m) sum_{s,i} s_si^2 r_i with s = h(1-h), r_i = |W_i|^2.
    // dP/dW has a direct term through r and a chain term through the
    // pre-activation; dP/db only the chain term.
    const Eigen::MatrixXd S = (H.array() * (1.0 - H.array())).matrix();
    const Eigen::VectorXd r = p.W.rowwise().squaredNorm();
    const Eigen::VectorXd c = S.array().square().matrix().colwise().sum().transpose();  // n
    const Eigen::MatrixXd T =
        (S.array().square() * (1.0 - 2.0 * H.array())).matrix();        // m x n

    const double scale = 2.0 * lambda / m;
    g.W += scale * c.asDiagonal() * p.W;
    g.W += scale * r.asDiagonal() * (T.transpose() * X_in);
    g.b += scale * (T.colwise().sum().transpose().array() * r.array()).matrix();
  }
  return g;
}

std::pair<AeParams, LossTrace> train_autoencoder(const Eigen::MatrixXd& data,
                                                 const AeHyperParams& hp) {
  validate_hyper_params(hp, static_cast<int>(data.cols()));
  const Eigen::Index d = data.cols();
  const Eigen::Index n = hp.hidden_units;
  const Eigen::Index total = data.rows();
  if (total < 1) raise(ErrorCode::InvalidHyperParams, "no training samples");

  Rng rng(hp.seed);
  const double limit = 4.0 * std::sqrt(6.0 / static_cast<double>(d + n));

  AeParams p;
  p.tied = hp.tied;
  p.W.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) p.W(i, j) = rng.uniform(-limit, limit);
  if (!p.tied) {
    p.W_dec.resize(d, n);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < n; ++j) p.W_dec(i, j) = rng.uniform(-limit, limit);
  }
  p.b = Eigen::VectorXd::Zero(n);
  p.b_dec = Eigen::VectorXd::Zero(d);

  const double lambda = hp.variant == AeVariant::Contractive ? hp.level : 0.0;
  const double lr = hp.learning_rate;

  std::vector<int> order(static_cast<std::size_t>(total));
  std::iota(order.begin(), order.end(), 0);

  LossTrace trace;
  trace.per_epoch.reserve(static_cast<std::size_t>(hp.epochs));

  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    rng.shuffle(order);
    double epoch_loss = 0.0;

    for (Eigen::Index start = 0; start < total; start += hp.batch_size) {
      const Eigen::Index bsize = std::min<Eigen::Index>(hp.batch_size, total - start);
      Eigen::MatrixXd batch(bsize, d);
      for (Eigen::Index r = 0; r < bsize; ++r)
        batch.row(r) = data.row(order[static_cast<std::size_t>(start + r)]);

      Eigen::MatrixXd input = batch;
      if (hp.variant == AeVariant::Denoising && hp.level > 0.0)
        for (Eigen::Index r = 0; r < bsize; ++r)
          input.row(r) = corrupt(batch.row(r).transpose(), hp.level, rng).transpose();

      epoch_loss += ae_objective(p, input, batch, lambda) * static_cast<double>(bsize);
      const AeGradient g = ae_gradient(p, input, batch, lambda);
      p.W -= lr * g.W;
      p.b -= lr * g.b;
      p.b_dec -= lr * g.b_dec;
      if (!p.tied) p.W_dec -= lr * g.W_dec;
    }
    trace.per_epoch.push_back(epoch_loss / static_cast<double>(total));
  }
  return {std::move(p), std::move(trace)};
}

Eigen::VectorXd session_representation(const AeParams& p) {
  Eigen::VectorXd v(p.W.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < p.W.rows(); ++i)
    for (Eigen::Index j = 0; j < p.W.cols(); ++j) v[k++] = p.W(i, j);
  return v;
}

namespace {

void write_csv_row(std::ostream& out, const Eigen::VectorXd& v) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (j) out << ',';
    out << format_double(v[j]);
  }
  out << '\n';
}

Eigen::VectorXd parse_csv_row(const std::string& line, Eigen::Index expected,
                              const std::string& what) {
  const std::vector<std::string> fields = split(line, ',');
  if (static_cast<Eigen::Index>(fields.size()) != expected)
    raise(ErrorCode::IoFailure, "bad " + what + " row width");
  Eigen::VectorXd v(expected);
  for (Eigen::Index j = 0; j < expected; ++j)
    v[j] = parse_double_field(fields[static_cast<std::size_t>(j)], ErrorCode::IoFailure);
  return v;
}

}  // namespace

void write_ae_params(const AeParams& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoFailure, "cannot write " + path.string());
  out << p.hidden() << ',' << p.input() << ',' << (p.tied ? 1 : 0) << '\n';
  for (Eigen::Index i = 0; i < p.hidden(); ++i) write_csv_row(out, p.W.row(i).transpose());
  write_csv_row(out, p.b);
  write_csv_row(out, p.b_dec);
  if (!p.tied)
    for (Eigen::Index i = 0; i < p.input(); ++i) write_csv_row(out, p.W_dec.row(i).transpose());
  if (!out) raise(ErrorCode::IoFailure, "failed writing " + path.string());
}

AeParams read_ae_params(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoFailure, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) raise(ErrorCode::IoFailure, "empty params file " + path.string());
  const std::vector<std::string> head = split(line, ',');
  if (head.size() != 3) raise(ErrorCode::IoFailure, "bad params header in " + path.string());
  const Eigen::Index n = parse_int_field(head[0], ErrorCode::IoFailure);
  const Eigen::Index d = parse_int_field(head[1], ErrorCode::IoFailure);
  const long tied = parse_int_field(head[2], ErrorCode::IoFailure);
  if (n < 1 || d < 1 || (tied != 0 && tied != 1))
    raise(ErrorCode::IoFailure, "bad params header in " + path.string());

  AeParams p;
  p.tied = tied == 1;
  p.W.resize(n, d);
  auto next_row = [&](Eigen::Index expected, const std::string& what) {
    if (!std::getline(in, line)) raise(ErrorCode::IoFailure, "truncated params file");
    return parse_csv_row(line, expected, what);
  };
  for (Eigen::Index i = 0; i < n; ++i) p.W.row(i) = next_row(d, "W").transpose();
  p.b = next_row(n, "b");
  p.b_dec = next_row(d, "b_dec");
  if (!p.tied) {
    p.W_dec.resize(d, n);
    for (Eigen::Index i = 0; i < d; ++i) p.W_dec.row(i) = next_row(n, "W_dec").transpose();
  }
  return p;
}

}  // namespace eegpipe
