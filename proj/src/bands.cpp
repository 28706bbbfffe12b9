#include "eegpipe/bands.hpp"

#include "eegpipe/error.hpp"
#include "eegpipe/text.hpp"

namespace eegpipe {

std::optional<Band> band_from_name(std::string_view name) {
  for (int i = 0; i < kBandCount; ++i)
    if (name == kBandNames[i]) return static_cast<Band>(i);
  return std::nullopt;
}

BandMask BandMask::parse(std::string_view text) {
  BandMask m;
  for (const std::string& tok : split(text, ',')) {
    const std::string name{trim(tok)};
    if (name.empty()) continue;
    if (name == "all") return BandMask::all();
    const auto band = band_from_name(name);
    if (!band) raise(ErrorCode::InvalidConfig, "unknown band name: " + name);
    m.set(*band);
  }
  if (m.empty()) raise(ErrorCode::InvalidConfig, "band list selects no bands");
  return m;
}

std::string BandMask::to_string() const {
  std::string out;
  for (Band b : bands()) {
    if (!out.empty()) out += ',';
    out += band_name(b);
  }
  return out;
}

}  // namespace eegpipe
