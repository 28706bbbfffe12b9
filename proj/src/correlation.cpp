#include "eegpipe/correlation.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include "eegpipe/error.hpp"
#include "eegpipe/text.hpp"

namespace eegpipe {

RepresentationMatrix build_representation(const Corpus& c, const BandMask& mask,
                                          const AeHyperParams& hp) {
  if (c.sessions.empty()) raise(ErrorCode::EmptyCorpus, "no sessions to encode");
  if (mask.empty()) raise(ErrorCode::EmptyMask, "band mask selects no bands");

  const std::size_t S = c.sessions.size();
  const Eigen::Index F =
      static_cast<Eigen::Index>(hp.hidden_units) * static_cast<Eigen::Index>(mask.count());

  RepresentationMatrix R;
  R.values.resize(F, static_cast<Eigen::Index>(S));
  R.session_ids.reserve(S);
  for (const Session& s : c.sessions) R.session_ids.push_back(s.session_id);

  // Sessions train independently (every AE starts from hp.seed), so a
  // work-stealing loop over pre-sized columns is deterministic.
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= S) return;
      try {
        const Eigen::MatrixXd data = select_bands(c.sessions[i], mask);
        auto [params, trace] = train_autoencoder(data, hp);
        R.values.col(static_cast<Eigen::Index>(i)) = session_representation(params);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  unsigned n_threads = std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(S));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return R;
}

PearsonResult pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) raise(ErrorCode::LengthMismatch, "pearson: length mismatch");
  if (x.size() < 2) raise(ErrorCode::TooShort, "pearson needs at least 2 components");

  const double mx = x.mean();
  const double my = y.mean();
  const Eigen::ArrayXd dx = x.array() - mx;
  const Eigen::ArrayXd dy = y.array() - my;
  const double sxx = (dx * dx).sum();
  const double syy = (dy * dy).sum();
  if (sxx <= 0.0 || syy <= 0.0) return {0.0, true};

  const double r = (dx * dy).sum() / std::sqrt(sxx * syy);
  return {std::clamp(r, -1.0, 1.0), false};
}

CorrelationMatrix correlation_matrix(const RepresentationMatrix& R) {
  const Eigen::Index S = R.values.cols();
  if (S < 2) raise(ErrorCode::TooFewSessions, "correlation needs at least 2 sessions");

  CorrelationMatrix M;
  M.session_ids = R.session_ids;
  M.values.resize(S, S);
  for (Eigen::Index i = 0; i < S; ++i) {
    const PearsonResult self = pearson(R.values.col(i), R.values.col(i));
    M.values(i, i) = self.constant_column ? 0.0 : 1.0;
    M.degenerate |= self.constant_column;
    for (Eigen::Index j = i + 1; j < S; ++j) {
      const PearsonResult p = pearson(R.values.col(i), R.values.col(j));
      M.values(i, j) = p.r;
      M.values(j, i) = p.r;
      M.degenerate |= p.constant_column;
    }
  }
  return M;
}

double mean_off_diagonal(const CorrelationMatrix& M) {
  const Eigen::Index S = M.values.rows();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < S; ++i)
    for (Eigen::Index j = 0; j < S; ++j)
      if (i != j) sum += M.values(i, j);
  return sum / static_cast<double>(S * (S - 1));
}

Rgb heatmap_color(double r) {
  const long t = std::lround(255.0 * std::abs(r));
  const int tt = static_cast<int>(std::min(t, 255L));
  if (r >= 0.0) return {255, 255 - tt, 255 - tt};
  return {255 - tt, 255 - tt, 255};
}

void write_correlation_csv(const CorrelationMatrix& M, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoFailure, "cannot write " + path.string());
  for (const std::string& id : M.session_ids) out << ',' << id;
  out << '\n';
  for (Eigen::Index i = 0; i < M.values.rows(); ++i) {
    out << M.session_ids[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < M.values.cols(); ++j)
      out << ',' << format_double(M.values(i, j));
    out << '\n';
  }
  if (!out) raise(ErrorCode::IoFailure, "write failed: " + path.string());
}

void write_correlation_ppm(const CorrelationMatrix& M, const std::filesystem::path& path) {
  constexpr int kCell = 32;  // pixels per matrix entry, both directions
  const Eigen::Index S = M.values.rows();

  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoFailure, "cannot write " + path.string());
  out << "P3\n" << S * kCell << ' ' << S * kCell << "\n255\n";

  std::string row_text;
  for (Eigen::Index i = 0; i < S; ++i) {
    // All kCell pixel rows of a cell row are identical; render once.
    row_text.clear();
    for (Eigen::Index j = 0; j < S; ++j) {
      const Rgb c = heatmap_color(M.values(i, j));
      std::string px = std::to_string(c.r) + ' ';
      px += std::to_string(c.g) + ' ';
      px += std::to_string(c.b);
      for (int k = 0; k < kCell; ++k) {
        if (!row_text.empty()) row_text += ' ';
        row_text += px;
      }
    }
    row_text += '\n';
    for (int k = 0; k < kCell; ++k) out << row_text;
  }
  if (!out) raise(ErrorCode::IoFailure, "write failed: " + path.string());
}

void write_representation_csv(const RepresentationMatrix& R, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoFailure, "cannot write " + path.string());
  out << "feature";
  for (const std::string& id : R.session_ids) out << ',' << id;
  out << '\n';
  for (Eigen::Index i = 0; i < R.values.rows(); ++i) {
    out << 'w' << i;
    for (Eigen::Index j = 0; j < R.values.cols(); ++j)
      out << ',' << format_double(R.values(i, j));
    out << '\n';
  }
  if (!out) raise(ErrorCode::IoFailure, "write failed: " + path.string());
}

RepresentationMatrix read_representation_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoFailure, "cannot read " + path.string());

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split(line, ','));
  }
  if (rows.size() < 2 || rows.front().size() < 2 || rows.front().front() != "feature")
    raise(ErrorCode::IoFailure, "malformed representation file: " + path.string());

  RepresentationMatrix R;
  const std::size_t S = rows.front().size() - 1;
  for (std::size_t j = 0; j < S; ++j) R.session_ids.emplace_back(trim(rows.front()[j + 1]));

  const std::size_t F = rows.size() - 1;
  R.values.resize(static_cast<Eigen::Index>(F), static_cast<Eigen::Index>(S));
  for (std::size_t i = 0; i < F; ++i) {
    if (rows[i + 1].size() != S + 1)
      raise(ErrorCode::IoFailure, "ragged representation row in " + path.string());
    for (std::size_t j = 0; j < S; ++j)
      R.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          parse_double_field(rows[i + 1][j + 1]);
  }
  return R;
}

}  // namespace eegpipe
