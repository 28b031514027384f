// formats/rttm.cc

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

#include "formats/rttm.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>

#include "base/error.h"

namespace diar {

namespace {

std::vector<std::string> SplitFields(const std::string &line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string f;
  while (in >> f) fields.push_back(f);
  return fields;
}

bool ParseDouble(const std::string &s, double *out) {
  try {
    size_t used = 0;
    *out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception &) {
    return false;
  }
}

bool TurnLess(const Turn &a, const Turn &b) {
  if (a.recording_id != b.recording_id) return a.recording_id < b.recording_id;
  if (a.interval.onset != b.interval.onset)
    return a.interval.onset < b.interval.onset;
  if (a.speaker_id != b.speaker_id) return a.speaker_id < b.speaker_id;
  return a.interval.offset < b.interval.offset;
}

// Merges strictly overlapping same-speaker turns; touching turns stay
// separate so that written documents round-trip unchanged.
std::vector<Turn> Normalize(std::vector<Turn> turns) {
  std::map<std::pair<std::string, std::string>, IntervalList> per_speaker;
  for (Turn &t : turns) {
    per_speaker[{t.recording_id, t.speaker_id}].push_back(t.interval);
  }
  std::vector<Turn> out;
  out.reserve(turns.size());
  for (auto &[key, intervals] : per_speaker) {
    for (const TimeInterval &iv : MergeOverlapping(std::move(intervals))) {
      out.emplace_back(key.first, key.second, iv);
    }
  }
  std::sort(out.begin(), out.end(), TurnLess);
  return out;
}

}  // namespace

RttmDocument::RttmDocument(std::vector<Turn> turns)
    : turns_(Normalize(std::move(turns))) {}

std::vector<std::string> RttmDocument::Recordings() const {
  std::vector<std::string> recs;
  for (const Turn &t : turns_) {
    if (recs.empty() || recs.back() != t.recording_id)
      recs.push_back(t.recording_id);
  }
  return recs;  // turns sorted by recording, so recs is sorted unique
}

bool RttmDocument::HasRecording(const std::string &recording_id) const {
  for (const Turn &t : turns_) {
    if (t.recording_id == recording_id) return true;
  }
  return false;
}

std::vector<Turn> RttmDocument::TurnsFor(
    const std::string &recording_id) const {
  std::vector<Turn> out;
  for (const Turn &t : turns_) {
    if (t.recording_id == recording_id) out.push_back(t);
  }
  return out;
}

std::vector<std::string> RttmDocument::SpeakersFor(
    const std::string &recording_id) const {
  std::set<std::string> speakers;
  for (const Turn &t : turns_) {
    if (t.recording_id == recording_id) speakers.insert(t.speaker_id);
  }
  return {speakers.begin(), speakers.end()};
}

IntervalList RttmDocument::SpeakerSpeech(const std::string &recording_id,
                                         const std::string &speaker_id) const {
  IntervalList out;
  for (const Turn &t : turns_) {
    if (t.recording_id == recording_id && t.speaker_id == speaker_id)
      out.push_back(t.interval);
  }
  return MergeOverlapping(std::move(out));
}

IntervalList RttmDocument::RecordingSpeech(
    const std::string &recording_id) const {
  IntervalList out;
  for (const Turn &t : turns_) {
    if (t.recording_id == recording_id) out.push_back(t.interval);
  }
  return Coalesce(std::move(out));
}

UemDocument::UemDocument(std::map<std::string, IntervalList> regions) {
  for (auto &[rec, intervals] : regions) {
    IntervalList merged = MergeOverlapping(std::move(intervals));
    if (!merged.empty()) regions_[rec] = std::move(merged);
  }
}

const IntervalList &UemDocument::RegionsFor(
    const std::string &recording_id) const {
  auto it = regions_.find(recording_id);
  if (it == regions_.end())
    throw UnknownRecording("no UEM regions for recording '" + recording_id +
                           "'");
  return it->second;
}

double UemDocument::TotalDurationAll() const {
  double total = 0.0;
  for (const auto &[rec, intervals] : regions_) total += TotalDuration(intervals);
  return total;
}

RttmDocument ParseRttm(const std::string &text) {
  std::vector<Turn> turns;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> fields = SplitFields(line);
    if (fields.empty()) continue;
    if (fields.size() < 9)
      throw MalformedLine(line_no, "expected >= 9 fields, got " +
                                       std::to_string(fields.size()));
    if (fields[0] != "SPEAKER")
      throw MalformedLine(line_no, "expected SPEAKER record, got '" +
                                       fields[0] + "'");
    double onset = 0.0, dur = 0.0;
    if (!ParseDouble(fields[3], &onset))
      throw MalformedLine(line_no, "non-numeric onset '" + fields[3] + "'");
    if (!ParseDouble(fields[4], &dur))
      throw MalformedLine(line_no, "non-numeric duration '" + fields[4] + "'");
    if (dur <= 0.0)
      throw NonPositiveDuration(line_no, "duration " + fields[4]);
    turns.emplace_back(fields[1], fields[7],
                       TimeInterval(onset, onset + dur));
  }
  return RttmDocument(std::move(turns));
}

std::string FormatSeconds(double t) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", t);
  return buf;
}

std::string WriteRttm(const RttmDocument &doc) {
  std::string out;
  for (const Turn &t : doc.turns()) {
    out += "SPEAKER " + t.recording_id + " 1 " +
           FormatSeconds(t.interval.onset) + " " +
           FormatSeconds(t.interval.duration()) + " <NA> <NA> " +
           t.speaker_id + " <NA> <NA>\n";
  }
  return out;
}

UemDocument ParseUem(const std::string &text) {
  std::map<std::string, IntervalList> regions;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> fields = SplitFields(line);
    if (fields.empty()) continue;
    if (fields.size() != 4)
      throw MalformedLine(line_no, "expected 4 fields, got " +
                                       std::to_string(fields.size()));
    double onset = 0.0, offset = 0.0;
    if (!ParseDouble(fields[2], &onset))
      throw MalformedLine(line_no, "non-numeric onset '" + fields[2] + "'");
    if (!ParseDouble(fields[3], &offset))
      throw MalformedLine(line_no, "non-numeric offset '" + fields[3] + "'");
    if (offset <= onset)
      throw OffsetNotAfterOnset(line_no,
                                fields[2] + " .. " + fields[3]);
    regions[fields[0]].emplace_back(onset, offset);
  }
  return UemDocument(std::move(regions));
}

std::string WriteUem(const UemDocument &doc) {
  std::string out;
  for (const auto &[rec, intervals] : doc.regions()) {
    for (const TimeInterval &iv : intervals) {
      out += rec + " 1 " + FormatSeconds(iv.onset) + " " +
             FormatSeconds(iv.offset) + "\n";
    }
  }
  return out;
}

std::vector<TokenAnnotation> ParseTokens(const std::string &text) {
  std::vector<TokenAnnotation> tokens;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> fields = SplitFields(line);
    if (fields.empty()) continue;
    if (fields.size() != 4)
      throw MalformedLine(line_no, "expected 4 fields, got " +
                                       std::to_string(fields.size()));
    double onset = 0.0, offset = 0.0;
    if (!ParseDouble(fields[1], &onset))
      throw MalformedLine(line_no, "non-numeric onset '" + fields[1] + "'");
    if (!ParseDouble(fields[2], &offset))
      throw MalformedLine(line_no, "non-numeric offset '" + fields[2] + "'");
    if (offset <= onset)
      throw OffsetNotAfterOnset(line_no, fields[1] + " .. " + fields[2]);
    if (fields[3].empty())
      throw MalformedLine(line_no, "empty token");
    tokens.push_back({fields[0], fields[3], TimeInterval(onset, offset)});
  }
  return tokens;
}

UemDocument UemCovering(
    const std::vector<std::pair<std::string, double>> &recording_durations) {
  std::map<std::string, IntervalList> regions;
  for (const auto &[rec, dur] : recording_durations) {
    regions[rec].emplace_back(0.0, dur);
  }
  return UemDocument(std::move(regions));
}

}  // namespace diar
