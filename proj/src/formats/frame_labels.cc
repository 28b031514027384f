// formats/frame_labels.cc

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

#include "formats/frame_labels.h"

#include <cmath>

#include "base/error.h"

namespace diar {

int FrameLabels::SpeechFrames() const {
  int count = 0;
  for (int f = 0; f < num_frames; ++f) {
    for (const auto &row : activity) {
      if (row[f]) {
        ++count;
        break;
      }
    }
  }
  return count;
}

int FrameLabels::OverlapFrames() const {
  int count = 0;
  for (int f = 0; f < num_frames; ++f) {
    int active = 0;
    for (const auto &row : activity) {
      if (row[f]) ++active;
    }
    if (active >= 2) ++count;
  }
  return count;
}

int FrameCount(double duration, double frame_step) {
  if (duration <= 0.0) return 0;
  return static_cast<int>(std::ceil(duration / frame_step - 1e-9));
}

FrameLabels TurnsToFrames(const RttmDocument &doc,
                          const std::string &recording_id, double frame_step,
                          const TimeInterval &span) {
  if (frame_step <= 0.0) throw DiarError("frame_step must be > 0");
  if (!doc.empty() && !doc.HasRecording(recording_id))
    throw UnknownRecording("'" + recording_id + "' not in document");

  FrameLabels labels;
  labels.recording_id = recording_id;
  labels.frame_step = frame_step;
  labels.onset = span.onset;
  labels.num_frames = FrameCount(span.duration(), frame_step);
  labels.speaker_ids = doc.SpeakersFor(recording_id);
  labels.activity.assign(labels.speaker_ids.size(),
                         std::vector<bool>(labels.num_frames, false));

  for (size_t s = 0; s < labels.speaker_ids.size(); ++s) {
    IntervalList speech =
        doc.SpeakerSpeech(recording_id, labels.speaker_ids[s]);
    size_t i = 0;
    for (int f = 0; f < labels.num_frames; ++f) {
      double mid = span.onset + (f + 0.5) * frame_step;
      while (i < speech.size() && speech[i].offset <= mid) ++i;
      if (i < speech.size() && speech[i].Contains(mid))
        labels.activity[s][f] = true;
    }
  }
  return labels;
}

RttmDocument FramesToTurns(const FrameLabels &labels, double min_turn,
                           double max_gap) {
  std::vector<Turn> turns;
  const double step = labels.frame_step;
  for (int s = 0; s < labels.num_speakers(); ++s) {
    const auto &row = labels.activity[s];
    // Collect maximal true runs as [start_frame, end_frame) pairs.
    std::vector<std::pair<int, int>> runs;
    int f = 0;
    while (f < labels.num_frames) {
      if (!row[f]) {
        ++f;
        continue;
      }
      int start = f;
      while (f < labels.num_frames && row[f]) ++f;
      runs.emplace_back(start, f);
    }
    // Bridge gaps of at most max_gap.
    std::vector<std::pair<int, int>> bridged;
    for (const auto &run : runs) {
      if (!bridged.empty() &&
          (run.first - bridged.back().second) * step <= max_gap + 1e-9) {
        bridged.back().second = run.second;
      } else {
        bridged.push_back(run);
      }
    }
    for (const auto &[a, b] : bridged) {
      double dur = (b - a) * step;
      if (dur + 1e-9 < min_turn) continue;
      turns.emplace_back(labels.recording_id, labels.speaker_ids[s],
                         TimeInterval(labels.onset + a * step,
                                      labels.onset + b * step));
    }
  }
  return RttmDocument(std::move(turns));
}

}  // namespace diar
