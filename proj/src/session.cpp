#include "eegpipe/session.hpp"

#include <cmath>
#include <string>
#include <unordered_set>

#include "eegpipe/error.hpp"

namespace eegpipe {

void validate_session(const Session& s) {
  if (s.events.size() != kEventsPerSession)
    raise(ErrorCode::InvalidSession,
          "session " + s.session_id + " has " + std::to_string(s.events.size()) +
              " events, expected " + std::to_string(kEventsPerSession));

  const EegEvent& first = s.events.front();
  // Negated comparisons so NaN frequencies fail too.
  if (!(first.primary_freq > 0.0) || !(first.secondary_freq > 0.0))
    raise(ErrorCode::InvalidSession, "session " + s.session_id + ": non-positive stimulus frequency");

  std::int64_t prev_ts = first.timestamp;
  for (std::size_t i = 0; i < s.events.size(); ++i) {
    const EegEvent& e = s.events[i];
    if (e.primary_freq != first.primary_freq || e.secondary_freq != first.secondary_freq)
      raise(ErrorCode::InvalidSession,
            "session " + s.session_id + ": stimulus frequencies differ at event " + std::to_string(i));
    if (e.timestamp < prev_ts)
      raise(ErrorCode::InvalidSession,
            "session " + s.session_id + ": timestamp decreases at event " + std::to_string(i));
    prev_ts = e.timestamp;
    for (int b = 0; b < kBandCount; ++b) {
      const double p = e.powers[b];
      if (!(p >= 0.0 && p <= kMaxRawPower))
        raise(ErrorCode::InvalidSession,
              "session " + s.session_id + ": power out of range at event " + std::to_string(i) +
                  ", band " + std::to_string(b));
    }
  }
}

void validate_corpus(const Corpus& c) {
  if (c.sessions.empty()) raise(ErrorCode::EmptyCorpus, "corpus has no sessions");
  std::unordered_set<std::string> ids;
  for (const Session& s : c.sessions) {
    validate_session(s);
    if (!ids.insert(s.session_id).second)
      raise(ErrorCode::InvalidSession, "duplicate session_id: " + s.session_id);
  }
}

}  // namespace eegpipe
