#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "eegpipe/session.hpp"

namespace eegpipe {

// How one synthetic participant looks on the device: a resting power level
// per band, a multiplicative boost on the bands hit by the flicker stimulus,
// and two log-normal variability knobs (within a session and between
// sessions).
struct ParticipantProfile {
  int participant_id{0};
  std::array<double, kBandCount> base_power{};
  double ssvep_gain{1.0};            // >= 1, applied to stimulus-adjacent bands
  double within_session_jitter{0.0};  // relative std, in [0, 1)
  double between_session_drift{0.0};  // relative std, in [0, 1)
  int sessions{0};                   // per-profile override; 0 = use global count
};

struct GeneratorConfig {
  std::vector<ParticipantProfile> profiles;
  int sessions_per_participant{8};
  int noise_sessions{8};
  double primary_freq{10.0};
  double secondary_freq{5.0};
  std::uint64_t master_seed{0};
};

void validate_generator_config(const GeneratorConfig& cfg);

// Deterministic in (cfg.master_seed, profile.participant_id, session_index).
// Band power = base * (gain if the band's range contains a stimulus
// frequency) * exp(drift) * exp(jitter_i), drift drawn once per session and
// jitter once per event, both zero-mean Gaussians; clamped to [0, 32767].
Session generate_signal_session(const ParticipantProfile& p, const GeneratorConfig& cfg,
                                int session_index);

// Powers i.i.d. uniform on [0, 32767]; deterministic in (master_seed,
// noise_index). No participant.
Session generate_noise_session(const GeneratorConfig& cfg, int noise_index);

// All signal sessions (profiles in order, then session index), then all noise
// sessions. Pure function of cfg.
Corpus generate_corpus(const GeneratorConfig& cfg);

}  // namespace eegpipe
