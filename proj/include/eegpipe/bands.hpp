#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eegpipe {

// The eight frequency bands emitted by the device's hardware FFT, in fixed
// order. This order is also the column order of the session file format.
enum class Band : int {
  Delta = 0,
  Theta,
  LowAlpha,
  HighAlpha,
  LowBeta,
  HighBeta,
  LowGamma,
  HighGamma,
};

inline constexpr int kBandCount = 8;

struct BandRange {
  double lo_hz;
  double hi_hz;
};

inline constexpr std::array<BandRange, kBandCount> kBandRanges{{
    {1.0, 3.0},    // Delta
    {4.0, 7.0},    // Theta
    {8.0, 9.0},    // LowAlpha
    {10.0, 12.0},  // HighAlpha
    {13.0, 17.0},  // LowBeta
    {18.0, 30.0},  // HighBeta
    {31.0, 40.0},  // LowGamma
    {41.0, 50.0},  // HighGamma
}};

inline constexpr std::array<std::string_view, kBandCount> kBandNames{
    "delta",    "theta",     "low_alpha", "high_alpha",
    "low_beta", "high_beta", "low_gamma", "high_gamma",
};

inline constexpr BandRange band_range(Band b) { return kBandRanges[static_cast<int>(b)]; }
inline constexpr std::string_view band_name(Band b) { return kBandNames[static_cast<int>(b)]; }

inline constexpr bool band_contains(Band b, double hz) {
  const BandRange r = band_range(b);
  return hz >= r.lo_hz && hz <= r.hi_hz;
}

std::optional<Band> band_from_name(std::string_view name);

// Subset of bands selected for analysis.
class BandMask {
 public:
  BandMask() = default;

  static BandMask all() {
    BandMask m;
    m.bits_ = 0xff;
    return m;
  }

  static BandMask of(std::initializer_list<Band> bands) {
    BandMask m;
    for (Band b : bands) m.set(b);
    return m;
  }

  // Parses a comma-separated list of band names, e.g. "delta,high_alpha".
  static BandMask parse(std::string_view text);

  void set(Band b, bool on = true) {
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << static_cast<int>(b));
    if (on)
      bits_ |= bit;
    else
      bits_ &= static_cast<std::uint8_t>(~bit);
  }

  bool contains(Band b) const { return (bits_ >> static_cast<int>(b)) & 1u; }
  bool empty() const { return bits_ == 0; }

  int count() const {
    int n = 0;
    for (int i = 0; i < kBandCount; ++i) n += (bits_ >> i) & 1u;
    return n;
  }

  // Selected bands in canonical (ascending frequency) order.
  std::vector<Band> bands() const {
    std::vector<Band> out;
    for (int i = 0; i < kBandCount; ++i)
      if ((bits_ >> i) & 1u) out.push_back(static_cast<Band>(i));
    return out;
  }

  std::string to_string() const;

  friend bool operator==(const BandMask&, const BandMask&) = default;

 private:
  std::uint8_t bits_{0};
};

}  // namespace eegpipe
