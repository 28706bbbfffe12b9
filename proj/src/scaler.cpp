#include "eegpipe/scaler.hpp"

#include <algorithm>

#include "eegpipe/error.hpp"

namespace eegpipe {

Scaler fit_scaler(const Corpus& c, ScalerMode mode) {
  Scaler sc;
  sc.mode = mode;
  if (mode == ScalerMode::FixedRange) {
    sc.min.fill(0.0);
    sc.max.fill(kMaxRawPower);
    return sc;
  }
  if (c.sessions.empty()) raise(ErrorCode::EmptyCorpus, "cannot fit scaler on empty corpus");

  sc.min.fill(kMaxRawPower);
  sc.max.fill(0.0);
  for (const Session& s : c.sessions)
    for (const EegEvent& e : s.events)
      for (int b = 0; b < kBandCount; ++b) {
        sc.min[b] = std::min(sc.min[b], e.powers[b]);
        sc.max[b] = std::max(sc.max[b], e.powers[b]);
      }
  return sc;
}

Corpus apply_scaler(const Scaler& sc, const Corpus& c) {
  Corpus out = c;
  for (Session& s : out.sessions)
    for (EegEvent& e : s.events)
      for (int b = 0; b < kBandCount; ++b) {
        const double span = sc.max[b] - sc.min[b];
        if (span <= 0.0) {
          e.powers[b] = 0.0;  // information-free band
        } else {
          e.powers[b] = std::clamp((e.powers[b] - sc.min[b]) / span, 0.0, 1.0);
        }
      }
  return out;
}

Eigen::MatrixXd select_bands(const Session& s, const BandMask& mask) {
  if (mask.empty()) raise(ErrorCode::EmptyMask, "band mask selects no bands");
  const std::vector<Band> bands = mask.bands();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(s.events.size()),
                    static_cast<Eigen::Index>(bands.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = s.events[i].powers[static_cast<int>(bands[j])];
  return m;
}

}  // namespace eegpipe
