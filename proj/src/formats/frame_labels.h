// formats/frame_labels.h

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

#ifndef DIARPIPE_FORMATS_FRAME_LABELS_H_
#define DIARPIPE_FORMATS_FRAME_LABELS_H_

#include <string>
#include <vector>

#include "formats/rttm.h"

namespace diar {

// Per-frame speaker-activity matrix at a fixed step.  Frame f covers
// [onset + f*step, onset + (f+1)*step); onset records where frame 0 starts so
// that the turn <-> frame bridges are mutually inverse.
struct FrameLabels {
  std::string recording_id;
  double frame_step = 0.01;
  double onset = 0.0;
  int num_frames = 0;
  std::vector<std::string> speaker_ids;           // unique
  std::vector<std::vector<bool>> activity;        // [num_speakers][num_frames]

  int num_speakers() const { return static_cast<int>(speaker_ids.size()); }

  // Number of frames with >= 1 active speaker / >= 2 active speakers.
  int SpeechFrames() const;
  int OverlapFrames() const;
};

// Number of step-sized frames covering a span, with a guard against
// floating-point spill at exact multiples.
int FrameCount(double duration, double frame_step);

// Frame membership is decided by the frame midpoint.  Speakers are the ones
// with turns on the recording, sorted.  An empty document yields a matrix with
// zero rows; a document that knows other recordings but not this one is a
// caller error.
FrameLabels TurnsToFrames(const RttmDocument &doc,
                          const std::string &recording_id, double frame_step,
                          const TimeInterval &span);

// Per speaker row, maximal true runs become turns; gaps <= max_gap are bridged
// first, then turns shorter than min_turn are dropped.
RttmDocument FramesToTurns(const FrameLabels &labels, double min_turn,
                           double max_gap);

}  // namespace diar

#endif  // DIARPIPE_FORMATS_FRAME_LABELS_H_
