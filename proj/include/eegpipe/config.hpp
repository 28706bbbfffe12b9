#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "eegpipe/autoencoder.hpp"
#include "eegpipe/bands.hpp"
#include "eegpipe/classifier.hpp"
#include "eegpipe/scaler.hpp"
#include "eegpipe/synthgen.hpp"

namespace eegpipe {

enum class ExperimentTask {
  SignalNoise,   // noise detection: signal vs disconnected-electrode sessions
  Participant,   // identify which participant produced a signal session
};

// Everything one experiment run needs; no wall-clock or ambient state.
struct ExperimentConfig {
  ExperimentTask task{ExperimentTask::SignalNoise};
  BandMask bands{BandMask::all()};
  AeHyperParams ae;
  GeneratorConfig gen;
  ScalerMode scaler{ScalerMode::PerBandMinMax};
  std::vector<ClassifierKind> grid_kinds;  // empty = the full default grid
  std::uint64_t seed{42};
  std::filesystem::path out_dir{"out"};
  std::filesystem::path input_dir;  // when set, read sessions from here instead of generating
};

void validate_config(const ExperimentConfig& cfg);

// Derived stage seeds, so generator, auto-encoders, and CV never share a
// random stream.
std::uint64_t ae_stage_seed(const ExperimentConfig& cfg);
std::uint64_t cv_stage_seed(const ExperimentConfig& cfg);

// Flat "key = value" config file ('#' comments, blank lines ignored).
// Unknown keys are rejected. Participant profiles use indexed keys:
// profile.0.base_power = 900,700,520,480,400,330,240,180.
ExperimentConfig load_config(const std::filesystem::path& path);

// Built-in presets used when no --config is given.
ExperimentConfig default_signal_noise_config();
ExperimentConfig default_participant_config();

// A plausible device signature for participants beyond the built-in three.
ParticipantProfile formulaic_profile(int participant_id);

}  // namespace eegpipe
