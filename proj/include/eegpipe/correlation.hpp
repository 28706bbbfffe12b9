#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eegpipe/autoencoder.hpp"
#include "eegpipe/bands.hpp"
#include "eegpipe/scaler.hpp"
#include "eegpipe/session.hpp"

namespace eegpipe {

// Feature-per-row, session-per-column matrix of flattened AE weights.
struct RepresentationMatrix {
  Eigen::MatrixXd values;  // F x S
  std::vector<std::string> session_ids;
};

struct CorrelationMatrix {
  Eigen::MatrixXd values;  // S x S, symmetric, entries in [-1, 1]
  std::vector<std::string> session_ids;
  bool degenerate{false};  // true when any constant column forced r := 0
};

// Trains one auto-encoder per session (all with hp.seed, so equal inputs give
// equal encodings) and stacks the flattened weights as columns. The corpus
// must already be scaled; mask selects the input bands.
RepresentationMatrix build_representation(const Corpus& c, const BandMask& mask,
                                          const AeHyperParams& hp);

struct PearsonResult {
  double r{0.0};
  bool constant_column{false};
};

// Population-moment Pearson correlation; r := 0 with the flag set when either
// vector is constant.
PearsonResult pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

CorrelationMatrix correlation_matrix(const RepresentationMatrix& R);

// Mean of the strictly off-diagonal entries.
double mean_off_diagonal(const CorrelationMatrix& M);

// CSV with a session-id header row and column; plain P3 PPM with one 32x32
// pixel cell per entry, blue (0,0,255) at r=-1 through white at 0 to red
// (255,0,0) at r=+1.
void write_correlation_csv(const CorrelationMatrix& M, const std::filesystem::path& path);
void write_correlation_ppm(const CorrelationMatrix& M, const std::filesystem::path& path);

// Cell color for one coefficient (exposed for tests).
struct Rgb {
  int r, g, b;
};
Rgb heatmap_color(double r);

void write_representation_csv(const RepresentationMatrix& R, const std::filesystem::path& path);
RepresentationMatrix read_representation_csv(const std::filesystem::path& path);

}  // namespace eegpipe
