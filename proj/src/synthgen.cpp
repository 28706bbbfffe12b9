#include "eegpipe/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eegpipe/error.hpp"
#include "eegpipe/rng.hpp"

namespace eegpipe {

void validate_generator_config(const GeneratorConfig& cfg) {
  if (cfg.profiles.empty())
    raise(ErrorCode::InvalidConfig, "generator needs at least one participant profile");
  if (cfg.sessions_per_participant < 0 || cfg.noise_sessions < 0)
    raise(ErrorCode::InvalidConfig, "session counts must be non-negative");
  if (!(cfg.primary_freq > 0.0) || !(cfg.secondary_freq > 0.0))
    raise(ErrorCode::InvalidConfig, "stimulus frequencies must be positive");
  for (const ParticipantProfile& p : cfg.profiles) {
    if (p.participant_id < 0)
      raise(ErrorCode::InvalidConfig, "participant ids must be non-negative");
    if (p.ssvep_gain < 1.0) raise(ErrorCode::InvalidConfig, "ssvep_gain must be >= 1");
    if (p.within_session_jitter < 0.0 || p.within_session_jitter >= 1.0 ||
        p.between_session_drift < 0.0 || p.between_session_drift >= 1.0)
      raise(ErrorCode::InvalidConfig, "jitter and drift must lie in [0, 1)");
    if (p.sessions < 0) raise(ErrorCode::InvalidConfig, "per-profile session count must be >= 0");
    for (double bp : p.base_power)
      if (!(bp > 0.0 && bp < kMaxRawPower))
        raise(ErrorCode::InvalidConfig, "base powers must lie in (0, 32767)");
  }
}

Session generate_signal_session(const ParticipantProfile& p, const GeneratorConfig& cfg,
                                int session_index) {
  Rng rng(derive_seed(cfg.master_seed,
                      {static_cast<std::uint64_t>(p.participant_id),
                       static_cast<std::uint64_t>(session_index)}));

  // One multiplicative drift per session, then one jitter factor per event;
  // exp of a zero-mean Gaussian keeps every power positive.
  const double drift =
      p.between_session_drift > 0.0 ? std::exp(p.between_session_drift * rng.normal()) : 1.0;

  Session s;
  s.session_id = "p" + std::to_string(p.participant_id) + "s" + std::to_string(session_index);
  s.participant_id = p.participant_id;
  s.session_class = SessionClass::Signal;
  s.events.reserve(kEventsPerSession);

  for (int i = 0; i < kEventsPerSession; ++i) {
    const double jitter =
        p.within_session_jitter > 0.0 ? std::exp(p.within_session_jitter * rng.normal()) : 1.0;
    EegEvent e;
    e.timestamp = static_cast<std::int64_t>(session_index) * 1000000 + i;
    e.primary_freq = cfg.primary_freq;
    e.secondary_freq = cfg.secondary_freq;
    for (int b = 0; b < kBandCount; ++b) {
      const Band band = static_cast<Band>(b);
      const bool boosted =
          band_contains(band, cfg.primary_freq) || band_contains(band, cfg.secondary_freq);
      const double gain = boosted ? p.ssvep_gain : 1.0;
      e.powers[b] = std::clamp(p.base_power[b] * gain * drift * jitter, 0.0, kMaxRawPower);
    }
    s.events.push_back(e);
  }
  return s;
}

Session generate_noise_session(const GeneratorConfig& cfg, int noise_index) {
  Rng rng(derive_seed(cfg.master_seed,
                      {fnv1a64("noise"), static_cast<std::uint64_t>(noise_index)}));

  Session s;
  s.session_id = "ns" + std::to_string(noise_index);
  s.participant_id = -1;
  s.session_class = SessionClass::Noise;
  s.events.reserve(kEventsPerSession);

  for (int i = 0; i < kEventsPerSession; ++i) {
    EegEvent e;
    e.timestamp = static_cast<std::int64_t>(noise_index) * 1000000 + i;
    e.primary_freq = cfg.primary_freq;
    e.secondary_freq = cfg.secondary_freq;
    for (int b = 0; b < kBandCount; ++b) e.powers[b] = rng.uniform(0.0, kMaxRawPower);
    s.events.push_back(e);
  }
  return s;
}

Corpus generate_corpus(const GeneratorConfig& cfg) {
  validate_generator_config(cfg);
  Corpus c;
  for (const ParticipantProfile& p : cfg.profiles) {
    const int count = p.sessions > 0 ? p.sessions : cfg.sessions_per_participant;
    for (int i = 0; i < count; ++i) c.sessions.push_back(generate_signal_session(p, cfg, i));
  }
  for (int i = 0; i < cfg.noise_sessions; ++i)
    c.sessions.push_back(generate_noise_session(cfg, i));
  return c;
}

}  // namespace eegpipe
