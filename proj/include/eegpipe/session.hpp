#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "eegpipe/bands.hpp"

namespace eegpipe {

inline constexpr int kEventsPerSession = 40;
inline constexpr double kMaxRawPower = 32767.0;

// One device reading: a timestamp, the stimulus frequencies active when the
// reading was taken, and one power value per band.
struct EegEvent {
  std::int64_t timestamp{0};  // seconds since epoch
  double primary_freq{0.0};   // Hz
  double secondary_freq{0.0};  // Hz
  std::array<double, kBandCount> powers{};

  friend bool operator==(const EegEvent&, const EegEvent&) = default;
};

enum class SessionClass : int {
  Noise = 0,
  Signal = 1,
};

// One recording: exactly kEventsPerSession events sharing the same stimulus
// frequencies, plus bookkeeping used by the experiments (who produced it and
// whether it is a real recording or synthetic noise).
struct Session {
  std::string session_id;
  int participant_id{-1};  // -1 means "no participant" (noise sessions)
  SessionClass session_class{SessionClass::Signal};
  std::vector<EegEvent> events;

  friend bool operator==(const Session&, const Session&) = default;
};

struct Corpus {
  std::vector<Session> sessions;
};

// Throws Error{InvalidSession} when the session violates the format contract:
// wrong event count, mismatched stimulus frequencies across events,
// non-positive frequencies, decreasing timestamps, or out-of-range powers.
void validate_session(const Session& s);

// Validates every session and requires at least one.
void validate_corpus(const Corpus& c);

}  // namespace eegpipe
