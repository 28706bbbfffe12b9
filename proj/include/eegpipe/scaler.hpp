#pragma once

#include <array>

#include <Eigen/Dense>

#include "eegpipe/bands.hpp"
#include "eegpipe/session.hpp"

namespace eegpipe {

enum class ScalerMode {
  PerBandMinMax,  // min/max of each band over every event of the corpus
  FixedRange,     // the device's full range (0, 32767) for every band
};

// Maps raw band powers into [0,1] so no band dominates by sheer magnitude.
struct Scaler {
  ScalerMode mode{ScalerMode::PerBandMinMax};
  std::array<double, kBandCount> min{};
  std::array<double, kBandCount> max{};
};

Scaler fit_scaler(const Corpus& c, ScalerMode mode);

// p -> (p - min_b) / (max_b - min_b), clamped to [0,1]; a degenerate band
// (max == min) maps to 0 everywhere.
Corpus apply_scaler(const Scaler& sc, const Corpus& c);

// Event-per-row matrix of the selected bands, columns in ascending-frequency
// order. Expects a scaled session.
Eigen::MatrixXd select_bands(const Session& s, const BandMask& mask);

}  // namespace eegpipe
