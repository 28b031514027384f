// formats/rttm.h

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

#ifndef DIARPIPE_FORMATS_RTTM_H_
#define DIARPIPE_FORMATS_RTTM_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "formats/interval.h"

namespace diar {

// One attributed speech segment.
struct Turn {
  std::string recording_id;
  std::string speaker_id;
  TimeInterval interval;

  Turn() = default;
  Turn(std::string rec, std::string spk, TimeInterval iv)
      : recording_id(std::move(rec)),
        speaker_id(std::move(spk)),
        interval(iv) {}

  bool operator==(const Turn &other) const = default;
};

// Normalized collection of turns: sorted by (recording, onset, speaker),
// same-speaker strict overlaps merged.  Turns of one speaker may touch.
// Immutable after construction.
class RttmDocument {
 public:
  RttmDocument() = default;
  explicit RttmDocument(std::vector<Turn> turns);

  const std::vector<Turn> &turns() const { return turns_; }
  bool empty() const { return turns_.empty(); }

  std::vector<std::string> Recordings() const;
  bool HasRecording(const std::string &recording_id) const;
  std::vector<Turn> TurnsFor(const std::string &recording_id) const;
  std::vector<std::string> SpeakersFor(const std::string &recording_id) const;

  // Normalized interval list of one speaker's speech on one recording.
  IntervalList SpeakerSpeech(const std::string &recording_id,
                             const std::string &speaker_id) const;
  // Union of all speakers' speech on one recording.
  IntervalList RecordingSpeech(const std::string &recording_id) const;

  bool operator==(const RttmDocument &other) const = default;

 private:
  std::vector<Turn> turns_;
};

// Scoring regions per recording; regions disjoint and sorted.
class UemDocument {
 public:
  UemDocument() = default;
  explicit UemDocument(std::map<std::string, IntervalList> regions);

  const std::map<std::string, IntervalList> &regions() const {
    return regions_;
  }
  bool Has(const std::string &recording_id) const {
    return regions_.count(recording_id) > 0;
  }
  const IntervalList &RegionsFor(const std::string &recording_id) const;
  double TotalDurationAll() const;

 private:
  std::map<std::string, IntervalList> regions_;
};

struct TokenAnnotation {
  std::string recording_id;
  std::string token;
  TimeInterval interval;
};

// Parses RTTM SPEAKER records.  Throws MalformedLine / NonPositiveDuration
// with the 1-based line number.
RttmDocument ParseRttm(const std::string &text);

// One "SPEAKER <rec> 1 <onset> <dur> <NA> <NA> <spk> <NA> <NA>" line per turn,
// times with 3 decimals.  ParseRttm(WriteRttm(d)) == d for valid documents.
std::string WriteRttm(const RttmDocument &doc);

// Lines "<rec> 1 <onset> <offset>".  Throws MalformedLine /
// OffsetNotAfterOnset.
UemDocument ParseUem(const std::string &text);
std::string WriteUem(const UemDocument &doc);

// Lines "<rec> <onset> <offset> <token>".
std::vector<TokenAnnotation> ParseTokens(const std::string &text);

// Builds a UEM covering [0, duration) for each listed recording.
UemDocument UemCovering(const std::vector<std::pair<std::string, double>> &
                            recording_durations);

// Formats a time with 3 decimal places, the exchange resolution.
std::string FormatSeconds(double t);

}  // namespace diar

#endif  // DIARPIPE_FORMATS_RTTM_H_
