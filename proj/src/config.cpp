#include "eegpipe/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <string>

#include "eegpipe/error.hpp"
#include "eegpipe/rng.hpp"
#include "eegpipe/text.hpp"

namespace eegpipe {

namespace {

// Three distinct device signatures with moderate variability; together they
// produce 9 + 9 + 8 = 26 signal sessions, the default corpus shape.
const std::array<ParticipantProfile, 3> kBuiltinProfiles{{
    {0, {900, 700, 520, 480, 400, 330, 240, 180}, 2.0, 0.1, 0.05, 9},
    {1, {1400, 950, 760, 600, 540, 420, 310, 230}, 1.8, 0.1, 0.05, 9},
    {2, {600, 1100, 840, 720, 470, 380, 280, 150}, 2.2, 0.1, 0.05, 8},
}};

GeneratorConfig default_generator() {
  GeneratorConfig gen;
  gen.profiles.assign(kBuiltinProfiles.begin(), kBuiltinProfiles.end());
  gen.sessions_per_participant = 8;
  gen.noise_sessions = 26;
  gen.primary_freq = 10.0;
  gen.secondary_freq = 5.0;
  return gen;
}

}  // namespace

ParticipantProfile formulaic_profile(int participant_id) {
  if (participant_id < static_cast<int>(kBuiltinProfiles.size()))
    return kBuiltinProfiles[static_cast<std::size_t>(participant_id)];
  ParticipantProfile p;
  p.participant_id = participant_id;
  for (int b = 0; b < kBandCount; ++b)
    p.base_power[static_cast<std::size_t>(b)] =
        400.0 + 150.0 * ((participant_id * 3 + b) % 8) + 37.0 * (participant_id % 50);
  p.ssvep_gain = 1.8 + 0.2 * (participant_id % 3);
  p.within_session_jitter = 0.1;
  p.between_session_drift = 0.05;
  p.sessions = 0;
  return p;
}

ExperimentConfig default_signal_noise_config() {
  ExperimentConfig cfg;
  cfg.task = ExperimentTask::SignalNoise;
  cfg.bands = BandMask::of({Band::Delta, Band::Theta, Band::LowAlpha, Band::HighAlpha,
                            Band::LowBeta, Band::HighBeta});
  cfg.ae.hidden_units = 5;
  cfg.ae.learning_rate = 0.1;
  cfg.ae.batch_size = 10;
  cfg.ae.epochs = 5000;  // desk-scale default; raise to 50000 for the long run
  cfg.ae.variant = AeVariant::Contractive;
  cfg.ae.level = 0.1;
  cfg.gen = default_generator();
  cfg.seed = 42;
  return cfg;
}

ExperimentConfig default_participant_config() {
  ExperimentConfig cfg;
  cfg.task = ExperimentTask::Participant;
  cfg.bands = BandMask::of({Band::Delta, Band::HighAlpha});
  cfg.ae.hidden_units = 2;
  cfg.ae.learning_rate = 0.1;
  cfg.ae.batch_size = 5;
  cfg.ae.epochs = 5000;
  cfg.ae.variant = AeVariant::Contractive;
  cfg.ae.level = 0.1;
  cfg.gen = default_generator();
  cfg.gen.noise_sessions = 0;  // this task sees signal sessions only
  cfg.seed = 42;
  return cfg;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.bands.empty()) raise(ErrorCode::InvalidConfig, "band mask selects no bands");
  if (cfg.out_dir.empty()) raise(ErrorCode::InvalidConfig, "output directory not set");
  if (!cfg.input_dir.empty() && !std::filesystem::exists(cfg.input_dir))
    raise(ErrorCode::InvalidConfig, "input directory does not exist: " + cfg.input_dir.string());
  validate_hyper_params(cfg.ae, cfg.bands.count());
  if (cfg.input_dir.empty()) validate_generator_config(cfg.gen);
}

std::uint64_t ae_stage_seed(const ExperimentConfig& cfg) {
  return derive_seed(cfg.seed, {fnv1a64("ae")});
}

std::uint64_t cv_stage_seed(const ExperimentConfig& cfg) {
  return derive_seed(cfg.seed, {fnv1a64("cv")});
}

namespace {

std::array<double, kBandCount> parse_power_list(const std::string& value) {
  const std::vector<std::string> parts = split(value, ',');
  if (parts.size() != kBandCount)
    raise(ErrorCode::InvalidConfig,
          "base_power needs " + std::to_string(kBandCount) + " values, got " +
              std::to_string(parts.size()));
  std::array<double, kBandCount> out{};
  for (int b = 0; b < kBandCount; ++b)
    out[static_cast<std::size_t>(b)] =
        parse_double_field(parts[static_cast<std::size_t>(b)], ErrorCode::InvalidConfig);
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true") return true;
  if (value == "false") return false;
  raise(ErrorCode::InvalidConfig, key + " must be true or false, got '" + value + "'");
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoFailure, "cannot read config " + path.string());

  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t{trim(line)};
    if (t.empty() || t.front() == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      raise(ErrorCode::InvalidConfig,
            path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    const std::string key{trim(t.substr(0, eq))};
    if (kv.contains(key))
      raise(ErrorCode::InvalidConfig,
            path.string() + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    kv[key] = trim(t.substr(eq + 1));
  }

  // Start from the task's preset so partial configs stay coherent.
  ExperimentConfig cfg;
  const auto task_it = kv.find("task");
  if (task_it != kv.end()) {
    if (task_it->second == "signal_noise")
      cfg = default_signal_noise_config();
    else if (task_it->second == "participant")
      cfg = default_participant_config();
    else
      raise(ErrorCode::InvalidConfig, "unknown task '" + task_it->second + "'");
  } else {
    cfg = default_signal_noise_config();
  }

  std::set<std::string> consumed{"task"};
  auto take = [&](const std::string& key) -> const std::string* {
    consumed.insert(key);
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  if (const std::string* v = take("bands")) cfg.bands = BandMask::parse(*v);
  if (const std::string* v = take("seed"))
    cfg.seed = static_cast<std::uint64_t>(parse_int_field(*v, ErrorCode::InvalidConfig));
  if (const std::string* v = take("out")) cfg.out_dir = *v;
  if (const std::string* v = take("input")) cfg.input_dir = *v;
  if (const std::string* v = take("scaler")) {
    if (*v == "per_band")
      cfg.scaler = ScalerMode::PerBandMinMax;
    else if (*v == "fixed")
      cfg.scaler = ScalerMode::FixedRange;
    else
      raise(ErrorCode::InvalidConfig, "scaler must be per_band or fixed");
  }
  if (const std::string* v = take("grid")) {
    cfg.grid_kinds.clear();
    if (*v != "full")
      for (const std::string& name : split(*v, ','))
        cfg.grid_kinds.push_back(kind_from_name(trim(name)));
  }

  if (const std::string* v = take("ae.hidden_units"))
    cfg.ae.hidden_units = static_cast<int>(parse_int_field(*v, ErrorCode::InvalidConfig));
  if (const std::string* v = take("ae.learning_rate"))
    cfg.ae.learning_rate = parse_double_field(*v, ErrorCode::InvalidConfig);
  if (const std::string* v = take("ae.batch_size"))
    cfg.ae.batch_size = static_cast<int>(parse_int_field(*v, ErrorCode::InvalidConfig));
  if (const std::string* v = take("ae.epochs"))
    cfg.ae.epochs = static_cast<int>(parse_int_field(*v, ErrorCode::InvalidConfig));
  if (const std::string* v = take("ae.variant")) {
    if (*v == "contractive")
      cfg.ae.variant = AeVariant::Contractive;
    else if (*v == "denoising")
      cfg.ae.variant = AeVariant::Denoising;
    else
      raise(ErrorCode::InvalidConfig, "ae.variant must be contractive or denoising");
  }
  if (const std::string* v = take("ae.level"))
    cfg.ae.level = parse_double_field(*v, ErrorCode::InvalidConfig);
  if (const std::string* v = take("ae.tied")) cfg.ae.tied = parse_bool(*v, "ae.tied");

  bool sessions_overridden = false;
  if (const std::string* v = take("gen.sessions_per_participant")) {
    cfg.gen.sessions_per_participant =
        static_cast<int>(parse_int_field(*v, ErrorCode::InvalidConfig));
    sessions_overridden = true;
  }
  if (const std::string* v = take("gen.noise_sessions"))
    cfg.gen.noise_sessions = static_cast<int>(parse_int_field(*v, ErrorCode::InvalidConfig));
  if (const std::string* v = take("gen.primary_freq"))
    cfg.gen.primary_freq = parse_double_field(*v, ErrorCode::InvalidConfig);
  if (const std::string* v = take("gen.secondary_freq"))
    cfg.gen.secondary_freq = parse_double_field(*v, ErrorCode::InvalidConfig);
  if (const std::string* v = take("gen.participants")) {
    const int n = static_cast<int>(parse_int_field(*v, ErrorCode::InvalidConfig));
    if (n < 1) raise(ErrorCode::InvalidConfig, "gen.participants must be >= 1");
    cfg.gen.profiles.clear();
    for (int i = 0; i < n; ++i) cfg.gen.profiles.push_back(formulaic_profile(i));
  }

  // Indexed profile overrides; a profile key replaces the preset list once.
  bool explicit_profiles = false;
  std::set<int> explicit_sessions;
  std::map<int, ParticipantProfile> profiles;
  for (const auto& [key, value] : kv) {
    if (!key.starts_with("profile.")) continue;
    consumed.insert(key);
    const std::size_t dot = key.find('.', 8);
    if (dot == std::string::npos)
      raise(ErrorCode::InvalidConfig, "malformed profile key '" + key + "'");
    const int index =
        static_cast<int>(parse_int_field(key.substr(8, dot - 8), ErrorCode::InvalidConfig));
    const std::string field = key.substr(dot + 1);

    explicit_profiles = true;
    ParticipantProfile& p = profiles.try_emplace(index, formulaic_profile(index)).first->second;
    p.participant_id = index;
    if (field == "base_power")
      p.base_power = parse_power_list(value);
    else if (field == "ssvep_gain")
      p.ssvep_gain = parse_double_field(value, ErrorCode::InvalidConfig);
    else if (field == "jitter")
      p.within_session_jitter = parse_double_field(value, ErrorCode::InvalidConfig);
    else if (field == "drift")
      p.between_session_drift = parse_double_field(value, ErrorCode::InvalidConfig);
    else if (field == "sessions") {
      p.sessions = static_cast<int>(parse_int_field(value, ErrorCode::InvalidConfig));
      explicit_sessions.insert(index);
    } else
      raise(ErrorCode::InvalidConfig, "unknown profile field '" + field + "'");
  }
  if (explicit_profiles) {
    cfg.gen.profiles.clear();
    for (const auto& [index, profile] : profiles) cfg.gen.profiles.push_back(profile);
  }
  // A global session count overrides preset per-profile exceptions, but not
  // ones set explicitly in this file.
  if (sessions_overridden)
    for (ParticipantProfile& p : cfg.gen.profiles)
      if (!explicit_sessions.contains(p.participant_id)) p.sessions = 0;

  for (const auto& [key, value] : kv)
    if (!consumed.contains(key))
      raise(ErrorCode::InvalidConfig, "unknown config key '" + key + "'");

  validate_config(cfg);
  return cfg;
}

}  // namespace eegpipe
