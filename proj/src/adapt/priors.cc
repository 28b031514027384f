// adapt/priors.cc

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

#include "adapt/priors.h"

#include <map>

#include "base/error.h"

namespace diar {

SpeakerPrior ExtractSpeakerPriors(const RttmDocument &diar,
                                  const std::string &recording_id,
                                  bool exclude_overlap) {
  std::map<std::string, IntervalList> speech;
  for (const Turn &turn : diar.TurnsFor(recording_id))
    speech[turn.speaker_id].push_back(turn.interval);
  if (speech.empty()) throw NoSpeechForRecording(recording_id);

  SpeakerPrior prior;
  prior.recording_id = recording_id;
  for (auto &entry : speech) entry.second = Coalesce(entry.second);
  if (!exclude_overlap) {
    prior.segments = std::move(speech);
    return prior;
  }
  for (const auto &entry : speech) {
    IntervalList others;
    for (const auto &other : speech) {
      if (other.first == entry.first) continue;
      for (const TimeInterval &iv : other.second) others.push_back(iv);
    }
    IntervalList kept = IntervalDifference(entry.second, Coalesce(others));
    if (!kept.empty()) prior.segments[entry.first] = kept;
  }
  if (prior.segments.empty()) throw AllSpeechOverlapped(recording_id);
  return prior;
}

}  // namespace diar
