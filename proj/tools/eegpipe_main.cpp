// eegpipe: synthetic EEG session pipeline.
//
//   eegpipe gen        write a synthetic corpus (session CSVs + manifest)
//   eegpipe encode     train one auto-encoder per session, save the
//                      flattened-weights representation matrix
//   eegpipe correlate  session-by-session Pearson matrix, CSV + PPM heatmap
//   eegpipe search     grid-search classifiers with stratified 3-fold CV
//   eegpipe e2e        all of the above with one master seed
//
// Every output is a pure function of the config file plus flags; rerunning
// with the same seed reproduces artifacts byte for byte.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eegpipe/bands.hpp"
#include "eegpipe/classifier.hpp"
#include "eegpipe/config.hpp"
#include "eegpipe/error.hpp"
#include "eegpipe/pipeline.hpp"
#include "eegpipe/text.hpp"

namespace {

using namespace eegpipe;

struct CliOverrides {
  std::string config_path;
  std::string task;
  std::uint64_t seed{};
  std::string out_dir;
  std::string input_dir;
  std::string bands;
  std::string grid;
  int hidden{}, epochs{}, batch{};
  int participants{}, sessions{}, noise{};
  int threads{1};
};

// Validators run during parsing, so bad values are usage errors (exit 64)
// rather than runtime failures.
std::string check_bands(const std::string& v) {
  try {
    BandMask::parse(v);
  } catch (const Error& e) {
    return std::string{e.what()};
  }
  return {};
}

std::string check_grid(const std::string& v) {
  try {
    if (v != "full")
      for (const std::string& name : split(v, ',')) kind_from_name(trim(name));
  } catch (const Error& e) {
    return std::string{e.what()};
  }
  return {};
}

ExperimentConfig assemble_config(const CLI::App& app, const CliOverrides& o) {
  ExperimentConfig cfg;
  if (app.count("--config")) {
    cfg = load_config(o.config_path);
    if (app.count("--task"))
      cfg.task = o.task == "participant" ? ExperimentTask::Participant
                                         : ExperimentTask::SignalNoise;
  } else if (app.count("--task") && o.task == "participant") {
    cfg = default_participant_config();
  } else {
    cfg = default_signal_noise_config();
  }

  if (app.count("--seed")) cfg.seed = o.seed;
  if (app.count("--out")) cfg.out_dir = o.out_dir;
  if (app.count("--input")) cfg.input_dir = o.input_dir;
  if (app.count("--bands")) cfg.bands = BandMask::parse(o.bands);
  if (app.count("--grid")) {
    cfg.grid_kinds.clear();
    if (o.grid != "full")
      for (const std::string& name : split(o.grid, ','))
        cfg.grid_kinds.push_back(kind_from_name(trim(name)));
  }
  if (app.count("--hidden")) cfg.ae.hidden_units = o.hidden;
  if (app.count("--epochs")) cfg.ae.epochs = o.epochs;
  if (app.count("--batch")) cfg.ae.batch_size = o.batch;
  if (app.count("--participants")) {
    cfg.gen.profiles.clear();
    for (int i = 0; i < o.participants; ++i)
      cfg.gen.profiles.push_back(formulaic_profile(i));
  }
  if (app.count("--sessions")) {
    cfg.gen.sessions_per_participant = o.sessions;
    for (ParticipantProfile& p : cfg.gen.profiles) p.sessions = 0;
  }
  if (app.count("--noise")) cfg.gen.noise_sessions = o.noise;

  validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic EEG session pipeline: generate, encode, correlate, classify."};
  app.require_subcommand(1);

  CliOverrides o;
  app.add_option("--config", o.config_path, "Config file (key = value lines)")
      ->check(CLI::ExistingFile);
  app.add_option("--task", o.task, "Experiment task (overrides preset/config)")
      ->check(CLI::IsMember({"signal_noise", "participant"}));
  app.add_option("--seed", o.seed, "Master seed (overrides config)");
  app.add_option("--out", o.out_dir, "Output directory (overrides config)");
  app.add_option("--input", o.input_dir, "Read sessions from this directory");
  app.add_option("--bands", o.bands, "Comma-separated band names, or 'all'")
      ->check(CLI::Validator(check_bands, "BANDS"));
  app.add_option("--grid", o.grid, "Classifier kinds to search, or 'full'")
      ->check(CLI::Validator(check_grid, "GRID"));
  app.add_option("--hidden", o.hidden, "Auto-encoder hidden units")
      ->check(CLI::PositiveNumber);
  app.add_option("--epochs", o.epochs, "Auto-encoder training epochs")
      ->check(CLI::PositiveNumber);
  app.add_option("--batch", o.batch, "Auto-encoder minibatch size")
      ->check(CLI::PositiveNumber);
  app.add_option("--participants", o.participants, "Generate this many participants")
      ->check(CLI::PositiveNumber);
  app.add_option("--sessions", o.sessions, "Signal sessions per participant")
      ->check(CLI::PositiveNumber);
  app.add_option("--noise", o.noise, "Number of noise sessions")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", o.threads, "Worker threads for the grid search (0 = auto)")
      ->check(CLI::NonNegativeNumber);

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic corpus");
  CLI::App* encode = app.add_subcommand("encode", "Train per-session auto-encoders");
  CLI::App* correlate =
      app.add_subcommand("correlate", "Correlation matrix + heatmap from a representation");
  CLI::App* search = app.add_subcommand("search", "Grid-search classifiers with 3-fold CV");
  CLI::App* e2e = app.add_subcommand("e2e", "Run gen, encode, correlate, and search");

  std::string repr_file, out_csv, out_ppm;
  correlate->add_option("--repr", repr_file, "Representation CSV to read");
  correlate->add_option("--out-csv", out_csv, "Correlation CSV path");
  correlate->add_option("--out-ppm", out_ppm, "Heatmap PPM path");

  for (CLI::App* sub : {gen, encode, correlate, search, e2e}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const ExperimentConfig cfg = assemble_config(app, o);
    if (gen->parsed()) return cmd_gen(cfg, std::cout);
    if (encode->parsed()) return cmd_encode(cfg, std::cout);
    if (correlate->parsed())
      return cmd_correlate(cfg, CorrelateOptions{repr_file, out_csv, out_ppm}, std::cout);
    if (search->parsed()) return cmd_search(cfg, std::cout, o.threads);
    return cmd_e2e(cfg, std::cout, o.threads);
  } catch (const Error& e) {
    std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
