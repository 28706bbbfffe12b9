#pragma once

#include <filesystem>
#include <iosfwd>

#include "eegpipe/config.hpp"

namespace eegpipe {

// Process exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;      // runtime / data error
inline constexpr int kExitDegenerate = 2;  // completed, but input was degenerate
inline constexpr int kExitUsage = 64;     // bad invocation

struct CorrelateOptions {
  std::filesystem::path repr_file;  // override representation location
  std::filesystem::path out_csv;
  std::filesystem::path out_ppm;
};

// Each command prints a short human summary to `log` and returns an exit
// code; errors are reported on the stream rather than thrown.
int cmd_gen(const ExperimentConfig& cfg, std::ostream& log);
int cmd_encode(const ExperimentConfig& cfg, std::ostream& log);
int cmd_correlate(const ExperimentConfig& cfg, const CorrelateOptions& opt, std::ostream& log);
int cmd_search(const ExperimentConfig& cfg, std::ostream& log, int threads = 1);
int cmd_e2e(const ExperimentConfig& cfg, std::ostream& log, int threads = 1);

}  // namespace eegpipe
