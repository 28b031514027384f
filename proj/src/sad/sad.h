// sad/sad.h

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

#ifndef DIARPIPE_SAD_SAD_H_
#define DIARPIPE_SAD_SAD_H_

#include <string>
#include <vector>

#include "formats/rttm.h"

namespace diar {

// Framewise speech probability track for one recording.
struct SadPosterior {
  std::string recording_id;
  double frame_step = 0.01;
  std::vector<double> speech_prob;
};

struct SadFusionConfig {
  std::vector<double> weights;
  double decision_threshold = 0.5;
};

// Logistic of the z-scored log energy.  A constant stream has zero variance
// and maps to probability 0.5 everywhere.  Throws EmptyStream.
SadPosterior EnergySad(const std::vector<double> &energy,
                       const std::string &recording_id,
                       double frame_step = 0.01);

// Weighted per-frame probability average: sum(w_i p_i) / sum(w_i).  All
// systems must share recording, step and length.  Throws EmptyInput,
// LengthMismatch, StepMismatch, RecordingMismatch, ConfigInvalid (bad
// weights).
SadPosterior FuseSad(const std::vector<SadPosterior> &systems,
                     const SadFusionConfig &config);

// Thresholds the track, bridges silences shorter than min_silence, drops
// speech runs shorter than min_speech, and emits turns under a single
// placeholder speaker.  Repeating the pass with the same parameters is a
// no-op.
RttmDocument BinarizeAndSmooth(const SadPosterior &post, double threshold = 0.5,
                               double min_speech = 0.2,
                               double min_silence = 0.3,
                               const std::string &speaker_id = "speech");

// Posterior exchange format: header line "<recording> <frame_step>" then one
// probability per line.  Throws MalformedLine with 1-based line numbers.
SadPosterior ParseSadPosterior(const std::string &text);
std::string WriteSadPosterior(const SadPosterior &post);

}  // namespace diar

#endif  // DIARPIPE_SAD_SAD_H_
