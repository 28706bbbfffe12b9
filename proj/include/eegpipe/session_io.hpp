#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "eegpipe/session.hpp"

namespace eegpipe {

// Session file format: ASCII CSV, no header, exactly kEventsPerSession lines
// of 11 comma-separated fields — timestamp, primary_freq, secondary_freq,
// then the 8 band powers in ascending-frequency order. Participant id and
// class are not part of the event rows; they travel in the corpus manifest.

// Parses a session body. session_id/participant_id/session_class are left at
// their defaults; callers fill them from the manifest.
Session parse_session(std::istream& in);
Session parse_session(const std::string& text);

void write_session(const Session& s, std::ostream& out);
std::string write_session(const Session& s);

// Filename convention: "<participant|noise>_<session_id>.csv" where the first
// token is "p<participant_id>" for signal sessions and "noise" otherwise.
std::string session_filename(const Session& s);

// Writes every session of the corpus into dir plus a manifest.csv with
// columns session_file, participant_id (−1 for noise), class (signal/noise).
void save_corpus(const Corpus& c, const std::filesystem::path& dir);

// Reads manifest.csv from dir and loads every referenced session file,
// restoring ids, participants, and classes. Sessions appear in manifest order.
Corpus load_corpus(const std::filesystem::path& dir);

}  // namespace eegpipe
