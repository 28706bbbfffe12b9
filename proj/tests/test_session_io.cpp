#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eegpipe/error.hpp"
#include "eegpipe/rng.hpp"
#include "eegpipe/session.hpp"
#include "eegpipe/session_io.hpp"
#include "eegpipe/text.hpp"

using namespace eegpipe;

namespace {

Session random_session(Rng& rng, const std::string& id, int participant) {
  Session s;
  s.session_id = id;
  s.participant_id = participant;
  s.session_class = participant >= 0 ? SessionClass::Signal : SessionClass::Noise;
  std::int64_t t = 1000;
  for (int i = 0; i < kEventsPerSession; ++i) {
    EegEvent e;
    e.timestamp = t;
    t += 1 + static_cast<std::int64_t>(rng.bounded(3));
    e.primary_freq = 10.0;
    e.secondary_freq = 5.0;
    for (double& p : e.powers) p = rng.uniform(0.0, kMaxRawPower);
    s.events.push_back(e);
  }
  return s;
}

std::string make_body(int rows, int cols, double power = 100.0) {
  std::string body;
  for (int r = 0; r < rows; ++r) {
    body += std::to_string(r) + ",10,5";
    for (int c = 3; c < cols; ++c) body += "," + format_double(power);
    body += "\n";
  }
  return body;
}

ErrorCode code_of(const std::string& body) {
  try {
    parse_session(body);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoFailure;  // sentinel: "did not throw"
}

}  // namespace

TEST_CASE("parse/write round-trips random valid sessions exactly") {
  Rng rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const Session s = random_session(rng, "s" + std::to_string(trial), trial % 3);
    Session back = parse_session(write_session(s));
    back.session_id = s.session_id;  // metadata travels in the manifest
    back.participant_id = s.participant_id;
    back.session_class = s.session_class;
    CHECK(back == s);
  }
}

TEST_CASE("written sessions have 40 lines of 11 fields") {
  Rng rng(5);
  const std::string text = write_session(random_session(rng, "x", 0));
  std::istringstream in(text);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(split(line, ',').size() == 11);
  }
  CHECK(lines == kEventsPerSession);
}

TEST_CASE("a well-formed 40x11 body parses to 40 events") {
  const Session s = parse_session(make_body(40, 11));
  CHECK(s.events.size() == 40);
  CHECK(s.events.front().primary_freq == 10.0);
  CHECK(s.events.front().secondary_freq == 5.0);
  CHECK(s.events.front().powers[0] == 100.0);
}

TEST_CASE("malformed bodies raise the specific parse errors") {
  CHECK(code_of(make_body(39, 11)) == ErrorCode::WrongRowCount);
  CHECK(code_of(make_body(41, 11)) == ErrorCode::WrongRowCount);
  CHECK(code_of(make_body(40, 10)) == ErrorCode::WrongColumnCount);
  CHECK(code_of(make_body(40, 12)) == ErrorCode::WrongColumnCount);
  CHECK(code_of(make_body(40, 11, 40000.0)) == ErrorCode::PowerOutOfRange);
  CHECK(code_of(make_body(40, 11, -1.0)) == ErrorCode::PowerOutOfRange);

  std::string bad = make_body(40, 11);
  bad.replace(bad.find("100"), 3, "1x0");
  CHECK(code_of(bad) == ErrorCode::NonNumericField);
}

TEST_CASE("power exactly at the device limit is accepted") {
  const Session s = parse_session(make_body(40, 11, 32767.0));
  CHECK(s.events[0].powers[7] == 32767.0);
}

TEST_CASE("trailing newline and CRLF endings are tolerated") {
  std::string body = make_body(40, 11);
  CHECK(parse_session(body + "\n\n").events.size() == 40);
  std::string crlf;
  for (char c : body) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  CHECK(parse_session(crlf).events.size() == 40);
}

TEST_CASE("session filenames follow the participant/noise convention") {
  Rng rng(9);
  Session sig = random_session(rng, "a1", 4);
  CHECK(session_filename(sig) == "p4_a1.csv");
  Session noise = random_session(rng, "n7", -1);
  CHECK(session_filename(noise) == "noise_n7.csv");
}

TEST_CASE("corpus save/load round-trips with manifest metadata") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "eegpipe_test_corpus";
  std::filesystem::remove_all(dir);

  Rng rng(77);
  Corpus c;
  c.sessions.push_back(random_session(rng, "s0", 0));
  c.sessions.push_back(random_session(rng, "s1", 1));
  c.sessions.push_back(random_session(rng, "n0", -1));
  save_corpus(c, dir);

  CHECK(std::filesystem::exists(dir / "manifest.csv"));
  CHECK(std::filesystem::exists(dir / "p0_s0.csv"));
  CHECK(std::filesystem::exists(dir / "noise_n0.csv"));

  const Corpus back = load_corpus(dir);
  REQUIRE(back.sessions.size() == 3);
  CHECK(back.sessions[0] == c.sessions[0]);
  CHECK(back.sessions[1] == c.sessions[1]);
  CHECK(back.sessions[2] == c.sessions[2]);
  CHECK(back.sessions[2].participant_id == -1);
  CHECK(back.sessions[2].session_class == SessionClass::Noise);

  std::filesystem::remove_all(dir);
}

TEST_CASE("loading an empty directory reports an empty corpus") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "eegpipe_test_empty";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  try {
    load_corpus(dir);
    FAIL("expected EmptyCorpus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCorpus);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("a manifest with a header and no rows is an empty corpus") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "eegpipe_test_headeronly";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "manifest.csv") << "session_file,participant_id,class\n";
  try {
    load_corpus(dir);
    FAIL("expected EmptyCorpus");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCorpus);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("session validation rejects broken invariants") {
  Rng rng(13);
  Session good = random_session(rng, "ok", 0);
  CHECK_NOTHROW(validate_session(good));

  Session short_s = good;
  short_s.events.pop_back();
  CHECK_THROWS_AS(validate_session(short_s), Error);

  Session decreasing = good;
  decreasing.events[5].timestamp = decreasing.events[4].timestamp - 10;
  CHECK_THROWS_AS(validate_session(decreasing), Error);

  Session mixed_freq = good;
  mixed_freq.events[3].primary_freq = 11.0;
  CHECK_THROWS_AS(validate_session(mixed_freq), Error);

  Session hot = good;
  hot.events[0].powers[2] = 50000.0;
  CHECK_THROWS_AS(validate_session(hot), Error);
}

TEST_CASE("corpus validation wants unique non-empty ids") {
  Rng rng(14);
  Corpus c;
  c.sessions.push_back(random_session(rng, "dup", 0));
  c.sessions.push_back(random_session(rng, "dup", 1));
  CHECK_THROWS_AS(validate_corpus(c), Error);
  CHECK_THROWS_AS(validate_corpus(Corpus{}), Error);
}
