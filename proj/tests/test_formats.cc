// tests/test_formats.cc

// Copyright 2026  The diarpipe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <set>

#include "doctest.h"

#include "base/error.h"
#include "base/rng.h"
#include "formats/frame_labels.h"
#include "formats/interval.h"
#include "formats/rttm.h"
#include "support/generators.h"

namespace diar {
namespace {

// Millisecond-grid membership oracle: marks every ms covered by any interval
// and rebuilds the union from the marks.  Independent of the sweep code in
// interval.cc.
IntervalList MsGridUnion(const IntervalList &intervals, int horizon_ms) {
  std::vector<bool> covered(horizon_ms, false);
  for (const TimeInterval &iv : intervals) {
    int a = static_cast<int>(std::lround(iv.onset * 1000));
    int b = static_cast<int>(std::lround(iv.offset * 1000));
    for (int t = a; t < b && t < horizon_ms; ++t) covered[t] = true;
  }
  IntervalList out;
  int t = 0;
  while (t < horizon_ms) {
    if (!covered[t]) {
      ++t;
      continue;
    }
    int start = t;
    while (t < horizon_ms && covered[t]) ++t;
    out.emplace_back(start / 1000.0, t / 1000.0);
  }
  return out;
}

TEST_CASE("interval set operations") {
  IntervalList a = {{0.0, 2.0}, {3.0, 5.0}};
  IntervalList b = {{1.0, 4.0}};
  CHECK(IntervalUnion(a, b) == IntervalList{{0.0, 5.0}});
  CHECK(IntervalIntersection(a, b) == IntervalList{{1.0, 2.0}, {3.0, 4.0}});
  CHECK(IntervalDifference(a, b) == IntervalList{{0.0, 1.0}, {4.0, 5.0}});
  CHECK(TotalDuration(a) == doctest::Approx(4.0));
}

TEST_CASE("interval union matches ms-grid oracle on random input") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    IntervalList intervals;
    int n = 1 + rng.UniformInt(10);
    for (int i = 0; i < n; ++i) {
      int on = rng.UniformInt(9000);
      int len = 1 + rng.UniformInt(2000);
      intervals.emplace_back(on / 1000.0, (on + len) / 1000.0);
    }
    IntervalList merged = Coalesce(intervals);
    CHECK(merged == MsGridUnion(intervals, 12000));
  }
}

TEST_CASE("difference and intersection partition the left operand") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    IntervalList a, b;
    for (int i = 0; i < 5; ++i) {
      int on = rng.UniformInt(5000);
      a.emplace_back(on / 1000.0, (on + 1 + rng.UniformInt(1500)) / 1000.0);
      on = rng.UniformInt(5000);
      b.emplace_back(on / 1000.0, (on + 1 + rng.UniformInt(1500)) / 1000.0);
    }
    a = Coalesce(a);
    b = Coalesce(b);
    double inter = TotalDuration(IntervalIntersection(a, b));
    double diff = TotalDuration(IntervalDifference(a, b));
    CHECK(inter + diff == doctest::Approx(TotalDuration(a)).epsilon(1e-12));
  }
}

TEST_CASE("parse_rttm maps fields") {
  RttmDocument doc =
      ParseRttm("SPEAKER rec1 1 0.50 2.00 <NA> <NA> spkA <NA> <NA>\n");
  REQUIRE(doc.turns().size() == 1);
  const Turn &t = doc.turns()[0];
  CHECK(t.recording_id == "rec1");
  CHECK(t.speaker_id == "spkA");
  CHECK(t.interval.onset == doctest::Approx(0.5));
  CHECK(t.interval.offset == doctest::Approx(2.5));
}

TEST_CASE("parse_rttm empty text") {
  CHECK(ParseRttm("").turns().empty());
  CHECK(ParseRttm("\n\n").turns().empty());
}

TEST_CASE("parse_rttm merges same-speaker overlap") {
  // Union oracle: [0,2) U [1,3) = [0,3).
  RttmDocument doc = ParseRttm(
      "SPEAKER rec1 1 0 2 <NA> <NA> spkA <NA> <NA>\n"
      "SPEAKER rec1 1 1 2 <NA> <NA> spkA <NA> <NA>\n");
  REQUIRE(doc.turns().size() == 1);
  CHECK(doc.turns()[0].interval == TimeInterval(0.0, 3.0));
}

TEST_CASE("parse_rttm keeps touching same-speaker turns") {
  RttmDocument doc = ParseRttm(
      "SPEAKER rec1 1 0 1 <NA> <NA> spkA <NA> <NA>\n"
      "SPEAKER rec1 1 1 1 <NA> <NA> spkA <NA> <NA>\n");
  CHECK(doc.turns().size() == 2);
}

TEST_CASE("parse_rttm errors") {
  CHECK_THROWS_AS(ParseRttm("SPEAKER rec1 1 0.5\n"), MalformedLine);
  CHECK_THROWS_AS(ParseRttm("TURN rec1 1 0 1 <NA> <NA> a <NA> <NA>\n"),
                  MalformedLine);
  CHECK_THROWS_AS(ParseRttm("SPEAKER rec1 1 x 1 <NA> <NA> a <NA> <NA>\n"),
                  MalformedLine);
  CHECK_THROWS_AS(ParseRttm("SPEAKER rec1 1 0 0 <NA> <NA> a <NA> <NA>\n"),
                  NonPositiveDuration);
  CHECK_THROWS_AS(ParseRttm("SPEAKER rec1 1 0 -1 <NA> <NA> a <NA> <NA>\n"),
                  NonPositiveDuration);
  try {
    ParseRttm(
        "SPEAKER rec1 1 0 1 <NA> <NA> a <NA> <NA>\n"
        "SPEAKER rec1 1 0 bad <NA> <NA> a <NA> <NA>\n");
    CHECK(false);
  } catch (const ParseError &e) {
    CHECK(e.line_no() == 2);
  }
}

TEST_CASE("write_rttm format") {
  CHECK(WriteRttm(RttmDocument()) == "");
  RttmDocument doc(
      {Turn("rec1", "spkA", TimeInterval(0.5, 2.5))});
  CHECK(WriteRttm(doc) ==
        "SPEAKER rec1 1 0.500 2.000 <NA> <NA> spkA <NA> <NA>\n");
}

TEST_CASE("rttm round-trip is byte-identical (property)") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    RttmDocument doc = testing::RandomDocument(&rng, 100);
    std::string once = WriteRttm(doc);
    RttmDocument reparsed = ParseRttm(once);
    CHECK(WriteRttm(reparsed) == once);
    REQUIRE(reparsed.turns().size() == doc.turns().size());
    for (size_t i = 0; i < doc.turns().size(); ++i) {
      const Turn &x = doc.turns()[i], &y = reparsed.turns()[i];
      CHECK(x.recording_id == y.recording_id);
      CHECK(x.speaker_id == y.speaker_id);
      CHECK(std::abs(x.interval.onset - y.interval.onset) < 5e-4);
      CHECK(std::abs(x.interval.offset - y.interval.offset) < 5e-4);
    }
  }
}

TEST_CASE("normalization is idempotent") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    RttmDocument doc = testing::RandomDocument(&rng, 60);
    RttmDocument again(doc.turns());
    CHECK(again == doc);
  }
}

TEST_CASE("parse_uem basics") {
  UemDocument doc = ParseUem("rec1 1 0.0 10.0\n");
  REQUIRE(doc.Has("rec1"));
  CHECK(doc.RegionsFor("rec1") == IntervalList{{0.0, 10.0}});
  CHECK(ParseUem("").regions().empty());
}

TEST_CASE("parse_uem merges overlap") {
  UemDocument doc = ParseUem(
      "rec1 1 0 5\n"
      "rec1 1 4 10\n");
  CHECK(doc.RegionsFor("rec1") == IntervalList{{0.0, 10.0}});
}

TEST_CASE("parse_uem errors") {
  CHECK_THROWS_AS(ParseUem("rec1 1 0\n"), MalformedLine);
  CHECK_THROWS_AS(ParseUem("rec1 1 5 5\n"), OffsetNotAfterOnset);
  CHECK_THROWS_AS(ParseUem("rec1 1 6 5\n"), OffsetNotAfterOnset);
}

TEST_CASE("parse_tokens") {
  auto tokens = ParseTokens("rec1 10.0 11.0 [laugh]\n");
  REQUIRE(tokens.size() == 1);
  CHECK(tokens[0].recording_id == "rec1");
  CHECK(tokens[0].token == "[laugh]");
  CHECK(tokens[0].interval == TimeInterval(10.0, 11.0));
  CHECK_THROWS_AS(ParseTokens("rec1 11.0 10.0 [laugh]\n"),
                  OffsetNotAfterOnset);
}

TEST_CASE("turns_to_frames midpoint rule") {
  RttmDocument doc({Turn("rec1", "spkA", TimeInterval(0.0, 1.0))});
  FrameLabels labels =
      TurnsToFrames(doc, "rec1", 0.01, TimeInterval(0.0, 1.0));
  REQUIRE(labels.num_speakers() == 1);
  CHECK(labels.num_frames == 100);
  for (int f = 0; f < 100; ++f) CHECK(labels.activity[0][f]);
}

TEST_CASE("turns_to_frames empty document") {
  FrameLabels labels =
      TurnsToFrames(RttmDocument(), "rec1", 0.01, TimeInterval(0.0, 1.0));
  CHECK(labels.num_speakers() == 0);
  CHECK(labels.num_frames == 100);
  CHECK(labels.SpeechFrames() == 0);
}

TEST_CASE("turns_to_frames unknown recording") {
  RttmDocument doc({Turn("rec1", "spkA", TimeInterval(0.0, 1.0))});
  CHECK_THROWS_AS(
      TurnsToFrames(doc, "other", 0.01, TimeInterval(0.0, 1.0)),
      UnknownRecording);
}

TEST_CASE("turns_to_frames overlap matches midpoint oracle") {
  RttmDocument doc({Turn("rec1", "spkA", TimeInterval(0.0, 2.0)),
                    Turn("rec1", "spkB", TimeInterval(1.0, 3.0))});
  FrameLabels labels =
      TurnsToFrames(doc, "rec1", 0.1, TimeInterval(0.0, 3.0));
  REQUIRE(labels.num_speakers() == 2);
  CHECK(labels.num_frames == 30);
  // Oracle: per frame, test midpoint membership against the raw turn list.
  for (int f = 0; f < 30; ++f) {
    double mid = (f + 0.5) * 0.1;
    bool a = 0.0 <= mid && mid < 2.0;
    bool b = 1.0 <= mid && mid < 3.0;
    CHECK(labels.activity[0][f] == a);
    CHECK(labels.activity[1][f] == b);
  }
  for (int f = 10; f < 20; ++f) {
    CHECK(labels.activity[0][f]);
    CHECK(labels.activity[1][f]);
  }
}

TEST_CASE("frames_to_turns basics") {
  FrameLabels labels;
  labels.recording_id = "rec1";
  labels.frame_step = 0.1;
  labels.num_frames = 30;
  labels.speaker_ids = {"spkA"};
  labels.activity = {std::vector<bool>(30, false)};
  CHECK(FramesToTurns(labels, 0.0, 0.0).empty());

  for (int f = 10; f < 20; ++f) labels.activity[0][f] = true;
  RttmDocument doc = FramesToTurns(labels, 0.0, 0.0);
  REQUIRE(doc.turns().size() == 1);
  CHECK(doc.turns()[0].interval.onset == doctest::Approx(1.0));
  CHECK(doc.turns()[0].interval.offset == doctest::Approx(2.0));
}

TEST_CASE("frames_to_turns bridges gaps then drops short turns") {
  // Runs [0.0,1.0) and [1.05,2.0) at step 0.05: 1-frame gap of 0.05 s.
  FrameLabels labels;
  labels.recording_id = "rec1";
  labels.frame_step = 0.05;
  labels.num_frames = 40;
  labels.speaker_ids = {"spkA"};
  labels.activity = {std::vector<bool>(40, false)};
  for (int f = 0; f < 20; ++f) labels.activity[0][f] = true;
  for (int f = 21; f < 40; ++f) labels.activity[0][f] = true;

  RttmDocument split = FramesToTurns(labels, 0.0, 0.0);
  CHECK(split.turns().size() == 2);

  RttmDocument merged = FramesToTurns(labels, 0.0, 0.1);
  REQUIRE(merged.turns().size() == 1);
  CHECK(merged.turns()[0].interval == TimeInterval(0.0, 2.0));

  // A run of 2 frames (0.1 s) is dropped when min_turn is 0.2.
  FrameLabels tiny = labels;
  tiny.activity[0].assign(40, false);
  tiny.activity[0][5] = true;
  tiny.activity[0][6] = true;
  CHECK(FramesToTurns(tiny, 0.2, 0.0).empty());
  CHECK(FramesToTurns(tiny, 0.1, 0.0).turns().size() == 1);
}

TEST_CASE("turn/frame bridges are mutually inverse within one step") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    // Non-overlapping same-speaker turns on a 10 ms grid, gaps >= 2 frames so
    // bridging cannot glue distinct turns.
    std::vector<Turn> turns;
    int cursor_ms = 0;
    for (int i = 0; i < 6; ++i) {
      cursor_ms += 30 + 10 * rng.UniformInt(50);
      int len_ms = 30 + 10 * rng.UniformInt(100);
      turns.emplace_back("rec1", "spk" + std::to_string(i % 2),
                         TimeInterval(cursor_ms / 1000.0,
                                      (cursor_ms + len_ms) / 1000.0));
      cursor_ms += len_ms;
    }
    RttmDocument doc(turns);
    const double step = 0.01;
    FrameLabels labels =
        TurnsToFrames(doc, "rec1", step, TimeInterval(0.0, 30.0));
    RttmDocument back = FramesToTurns(labels, 0.0, 0.0);
    REQUIRE(back.turns().size() == doc.turns().size());
    for (size_t i = 0; i < doc.turns().size(); ++i) {
      CHECK(back.turns()[i].speaker_id == doc.turns()[i].speaker_id);
      CHECK(std::abs(back.turns()[i].interval.onset -
                     doc.turns()[i].interval.onset) <= step + 1e-9);
      CHECK(std::abs(back.turns()[i].interval.offset -
                     doc.turns()[i].interval.offset) <= step + 1e-9);
    }
  }
}

}  // namespace
}  // namespace diar
