#include "eegpipe/session_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eegpipe/error.hpp"
#include "eegpipe/text.hpp"

namespace eegpipe {

namespace {

constexpr int kColumns = 3 + kBandCount;  // timestamp, two frequencies, 8 powers

std::vector<std::string> non_empty_tail_trimmed_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace

Session parse_session(std::istream& in) {
  const std::vector<std::string> lines = non_empty_tail_trimmed_lines(in);
  if (lines.size() != kEventsPerSession)
    raise(ErrorCode::WrongRowCount, "expected " + std::to_string(kEventsPerSession) +
                                        " rows, got " + std::to_string(lines.size()));

  Session s;
  s.events.reserve(kEventsPerSession);
  for (std::size_t row = 0; row < lines.size(); ++row) {
    const std::vector<std::string> fields = split(lines[row], ',');
    if (fields.size() != kColumns)
      raise(ErrorCode::WrongColumnCount, "row " + std::to_string(row) + " has " +
                                             std::to_string(fields.size()) + " columns, expected " +
                                             std::to_string(kColumns));
    EegEvent e;
    e.timestamp = parse_int_field(fields[0]);
    e.primary_freq = parse_double_field(fields[1]);
    e.secondary_freq = parse_double_field(fields[2]);
    for (int b = 0; b < kBandCount; ++b) {
      const double p = parse_double_field(fields[3 + b]);
      if (!(p >= 0.0 && p <= kMaxRawPower))
        raise(ErrorCode::PowerOutOfRange, "row " + std::to_string(row) + ", band " +
                                              std::to_string(b) + ": value " + fields[3 + b]);
      e.powers[b] = p;
    }
    s.events.push_back(e);
  }
  return s;
}

Session parse_session(const std::string& text) {
  std::istringstream in(text);
  return parse_session(in);
}

void write_session(const Session& s, std::ostream& out) {
  for (const EegEvent& e : s.events) {
    out << e.timestamp << ',' << format_double(e.primary_freq) << ','
        << format_double(e.secondary_freq);
    for (int b = 0; b < kBandCount; ++b) out << ',' << format_double(e.powers[b]);
    out << '\n';
  }
}

std::string write_session(const Session& s) {
  std::ostringstream out;
  write_session(s, out);
  return out.str();
}

std::string session_filename(const Session& s) {
  const std::string prefix =
      s.participant_id >= 0 ? "p" + std::to_string(s.participant_id) : "noise";
  return prefix + "_" + s.session_id + ".csv";
}

void save_corpus(const Corpus& c, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) raise(ErrorCode::IoFailure, "cannot create " + dir.string() + ": " + ec.message());

  std::ofstream manifest(dir / "manifest.csv");
  if (!manifest) raise(ErrorCode::IoFailure, "cannot write " + (dir / "manifest.csv").string());
  manifest << "session_file,participant_id,class\n";

  for (const Session& s : c.sessions) {
    const std::string fname = session_filename(s);
    std::ofstream out(dir / fname);
    if (!out) raise(ErrorCode::IoFailure, "cannot write " + (dir / fname).string());
    write_session(s, out);
    manifest << fname << ',' << s.participant_id << ','
             << (s.session_class == SessionClass::Signal ? "signal" : "noise") << '\n';
  }
}

Corpus load_corpus(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "manifest.csv";
  std::ifstream manifest(manifest_path);
  if (!manifest)
    raise(ErrorCode::EmptyCorpus, "no manifest.csv in '" + dir.string() + "'");

  std::vector<std::string> lines = non_empty_tail_trimmed_lines(manifest);
  if (lines.empty() || trim(lines.front()) != "session_file,participant_id,class")
    raise(ErrorCode::IoFailure, "malformed manifest header in " + manifest_path.string());
  if (lines.size() == 1) raise(ErrorCode::EmptyCorpus, "manifest lists no sessions");

  Corpus c;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split(lines[i], ',');
    if (fields.size() != 3)
      raise(ErrorCode::IoFailure, "malformed manifest row " + std::to_string(i));

    const std::string fname{trim(fields[0])};
    std::ifstream in(dir / fname);
    if (!in) raise(ErrorCode::IoFailure, "cannot read " + (dir / fname).string());

    Session s = parse_session(in);
    s.participant_id = static_cast<int>(parse_int_field(fields[1]));
    const std::string cls{trim(fields[2])};
    if (cls == "signal")
      s.session_class = SessionClass::Signal;
    else if (cls == "noise")
      s.session_class = SessionClass::Noise;
    else
      raise(ErrorCode::IoFailure, "unknown class '" + cls + "' in manifest row " + std::to_string(i));

    // "<prefix>_<session_id>.csv"
    const std::string stem = std::filesystem::path(fname).stem().string();
    const std::size_t sep = stem.find('_');
    s.session_id = sep == std::string::npos ? stem : stem.substr(sep + 1);
    c.sessions.push_back(std::move(s));
  }
  return c;
}

}  // namespace eegpipe
