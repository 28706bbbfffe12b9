#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eegpipe/classifier.hpp"
#include "eegpipe/error.hpp"

namespace eegpipe {

// Hyper-parameter value lists per classifier kind, in declaration order. The
// expansion walks them like an odometer, last parameter fastest.
struct GridRow {
  ClassifierKind kind;
  std::vector<std::pair<std::string, std::vector<ParamValue>>> values;
};

struct ParamGrid {
  std::vector<GridRow> rows;
};

// The full default search space: all ten classifier kinds with their stock
// value lists (3247 candidates).
ParamGrid default_param_grid();

std::vector<ClassifierSpec> expand_grid(const ParamGrid& g);

struct CvConfig {
  int k{3};
  std::uint64_t seed{0};
  bool stratified{true};
};

// Fold id per sample. Within each class, indices are shuffled by one seeded
// rng and dealt round-robin; the dealing counter carries across classes so
// fold sizes stay within one of each other globally.
std::vector<int> stratified_folds(const std::vector<int>& y, int k, std::uint64_t seed);

enum class CandidateStatus {
  Ok,
  Failed,
};

struct CandidateResult {
  ClassifierSpec spec;
  CandidateStatus status{CandidateStatus::Ok};
  double mean_score{0.0};
  double std_score{0.0};  // population std over folds
  std::vector<double> fold_scores;
  std::optional<ErrorCode> error;
  std::string error_message;
};

// Fits on k-1 folds, scores accuracy on the held-out fold, for every fold;
// fit errors mark the candidate Failed instead of propagating.
CandidateResult cross_val_score(const ClassifierSpec& spec, const Dataset& d,
                                const CvConfig& cv);

struct SearchResult {
  // Sorted: Ok before Failed, then mean descending, then spec text ascending.
  std::vector<CandidateResult> ranked;
};

// Evaluates every candidate; identical output whether run on one thread or
// many (threads <= 0 picks the hardware count).
SearchResult grid_search(const Dataset& d, const ParamGrid& g, const CvConfig& cv,
                         int threads = 1);

// CSV: rank, kind, spec (quoted), mean_score, std_score, fold_scores
// (semicolon-joined), status.
void write_report_csv(const SearchResult& r, const std::filesystem::path& path);

}  // namespace eegpipe
