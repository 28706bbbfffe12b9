#include "eegpipe/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "eegpipe/correlation.hpp"
#include "eegpipe/error.hpp"
#include "eegpipe/gridsearch.hpp"
#include "eegpipe/session_io.hpp"
#include "eegpipe/text.hpp"

namespace eegpipe {

namespace {

std::filesystem::path data_dir(const ExperimentConfig& cfg) {
  return cfg.input_dir.empty() ? cfg.out_dir / "data" : cfg.input_dir;
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// Human summaries go to `log`; anything thrown below becomes exit code 1.
template <typename Fn>
int guarded(std::ostream& log, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    log << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
}

Corpus load_scaled_corpus(const ExperimentConfig& cfg) {
  const Corpus raw = load_corpus(data_dir(cfg));
  validate_corpus(raw);
  const Scaler sc = fit_scaler(raw, cfg.scaler);
  return apply_scaler(sc, raw);
}

ParamGrid selected_grid(const ExperimentConfig& cfg) {
  ParamGrid full = default_param_grid();
  if (cfg.grid_kinds.empty()) return full;
  ParamGrid g;
  for (const GridRow& row : full.rows)
    if (std::find(cfg.grid_kinds.begin(), cfg.grid_kinds.end(), row.kind) !=
        cfg.grid_kinds.end())
      g.rows.push_back(row);
  return g;
}

// Labels for the representation columns, looked up by session id so column
// order never has to match manifest order.
struct LabeledData {
  Dataset dataset;
  std::vector<std::size_t> columns;  // representation column per sample
};

LabeledData label_sessions(const ExperimentConfig& cfg, const RepresentationMatrix& R) {
  const Corpus corpus = load_corpus(data_dir(cfg));
  std::map<std::string, const Session*> by_id;
  for (const Session& s : corpus.sessions) by_id.emplace(s.session_id, &s);

  LabeledData out;
  std::vector<int> participant_ids;
  for (std::size_t j = 0; j < R.session_ids.size(); ++j) {
    const auto it = by_id.find(R.session_ids[j]);
    if (it == by_id.end())
      raise(ErrorCode::IoFailure,
            "session '" + R.session_ids[j] + "' is not in the corpus manifest");
    const Session& s = *it->second;
    if (cfg.task == ExperimentTask::SignalNoise) {
      out.columns.push_back(j);
      out.dataset.y.push_back(s.session_class == SessionClass::Signal ? 1 : 0);
    } else if (s.session_class == SessionClass::Signal) {
      out.columns.push_back(j);
      participant_ids.push_back(s.participant_id);
    }
  }

  if (cfg.task == ExperimentTask::SignalNoise) {
    out.dataset.label_names = {"noise", "signal"};
  } else {
    std::vector<int> unique = participant_ids;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (int pid : unique) out.dataset.label_names.push_back("p" + std::to_string(pid));
    for (int pid : participant_ids) {
      const auto it = std::lower_bound(unique.begin(), unique.end(), pid);
      out.dataset.y.push_back(static_cast<int>(it - unique.begin()));
    }
  }

  out.dataset.X.resize(static_cast<Eigen::Index>(out.columns.size()), R.values.rows());
  for (std::size_t i = 0; i < out.columns.size(); ++i)
    out.dataset.X.row(static_cast<Eigen::Index>(i)) =
        R.values.col(static_cast<Eigen::Index>(out.columns[i])).transpose();
  validate_dataset(out.dataset, /*for_fit=*/true);
  return out;
}

}  // namespace

int cmd_gen(const ExperimentConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    GeneratorConfig gen = cfg.gen;
    gen.master_seed = cfg.seed;
    validate_generator_config(gen);
    const Corpus corpus = generate_corpus(gen);
    const std::filesystem::path dir = cfg.out_dir / "data";
    save_corpus(corpus, dir);
    std::size_t signal = 0;
    for (const Session& s : corpus.sessions)
      if (s.session_class == SessionClass::Signal) ++signal;
    log << "gen: wrote " << corpus.sessions.size() << " sessions (" << signal
        << " signal, " << corpus.sessions.size() - signal << " noise) to "
        << dir.string() << "\n";
    return kExitOk;
  });
}

int cmd_encode(const ExperimentConfig& cfg, std::ostream& log) {
  return guarded(log, [&] {
    const Corpus corpus = load_scaled_corpus(cfg);
    AeHyperParams hp = cfg.ae;
    hp.seed = ae_stage_seed(cfg);
    const RepresentationMatrix R = build_representation(corpus, cfg.bands, hp);
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path path = cfg.out_dir / "representation.csv";
    write_representation_csv(R, path);
    log << "encode: " << R.values.rows() << "x" << R.values.cols()
        << " representation (" << cfg.bands.to_string() << ", hidden "
        << hp.hidden_units << ") -> " << path.string() << "\n";
    return kExitOk;
  });
}

int cmd_correlate(const ExperimentConfig& cfg, const CorrelateOptions& opt,
                  std::ostream& log) {
  return guarded(log, [&] {
    const std::filesystem::path repr =
        opt.repr_file.empty() ? cfg.out_dir / "representation.csv" : opt.repr_file;
    const RepresentationMatrix R = read_representation_csv(repr);
    const CorrelationMatrix M = correlation_matrix(R);
    const std::filesystem::path csv =
        opt.out_csv.empty() ? cfg.out_dir / "correlation.csv" : opt.out_csv;
    const std::filesystem::path ppm =
        opt.out_ppm.empty() ? cfg.out_dir / "correlation.ppm" : opt.out_ppm;
    std::filesystem::create_directories(csv.parent_path().empty() ? "." : csv.parent_path());
    std::filesystem::create_directories(ppm.parent_path().empty() ? "." : ppm.parent_path());
    write_correlation_csv(M, csv);
    write_correlation_ppm(M, ppm);
    log << "correlate: " << M.values.rows() << "x" << M.values.cols()
        << " matrix, mean off-diagonal r = " << format_double(mean_off_diagonal(M))
        << " -> " << csv.string() << ", " << ppm.string() << "\n";
    if (M.degenerate) {
      log << "correlate: warning: constant representation column(s); affected "
             "coefficients were set to 0\n";
      return kExitDegenerate;
    }
    return kExitOk;
  });
}

int cmd_search(const ExperimentConfig& cfg, std::ostream& log, int threads) {
  return guarded(log, [&] {
    const RepresentationMatrix R =
        read_representation_csv(cfg.out_dir / "representation.csv");
    const LabeledData data = label_sessions(cfg, R);
    const CvConfig cv{3, cv_stage_seed(cfg), true};
    const SearchResult result = grid_search(data.dataset, selected_grid(cfg), cv, threads);
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path path = cfg.out_dir / "report.csv";
    write_report_csv(result, path);

    if (result.ranked.empty())
      raise(ErrorCode::InvalidConfig, "classifier grid is empty");
    const CandidateResult& best = result.ranked.front();
    log << "search: " << result.ranked.size() << " candidates on "
        << data.dataset.X.rows() << " sessions -> " << path.string() << "\n";
    if (best.status == CandidateStatus::Ok) {
      log << "best: bands=" << cfg.bands.to_string() << " batch=" << cfg.ae.batch_size
          << " hidden=" << cfg.ae.hidden_units << " classifier=" << best.spec.text()
          << " mean=" << fixed3(best.mean_score) << " (std: " << fixed3(best.std_score)
          << ")\n";
    } else {
      log << "best: none (every candidate failed)\n";
    }
    return kExitOk;
  });
}

int cmd_e2e(const ExperimentConfig& cfg, std::ostream& log, int threads) {
  int rc = cmd_gen(cfg, log);
  if (rc != kExitOk) return rc;
  rc = cmd_encode(cfg, log);
  if (rc != kExitOk) return rc;
  const int corr = cmd_correlate(cfg, CorrelateOptions{}, log);
  if (corr != kExitOk && corr != kExitDegenerate) return corr;
  rc = cmd_search(cfg, log, threads);
  if (rc != kExitOk) return rc;
  return corr;
}

}  // namespace eegpipe
