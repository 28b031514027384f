// adapt/iss.h

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

#ifndef DIARPIPE_ADAPT_ISS_H_
#define DIARPIPE_ADAPT_ISS_H_

#include <cstdint>
#include <vector>

#include "adapt/backend.h"
#include "adapt/simulate.h"
#include "formats/rttm.h"

namespace diar {

struct IssConfig {
  int stages = 2;
  int mixture_count = 50;
  double mixture_duration = 8.0;
  SnrRange snr;
  double sad_threshold = 0.5;
  double min_speech = 0.2;
  double min_silence = 0.3;
  uint64_t seed = 0;
};

struct IssReport {
  // One hypothesis per completed stage; .back() is the returned document.
  std::vector<RttmDocument> stage_hypotheses;
};

// Iterative separation diarization.  Each stage simulates mixtures from the
// current speaker prior, adapts the separator on them, separates the session
// into two streams, and smooths each stream into one speaker's turns; both
// streams together form the stage hypothesis and seed the next stage's prior.
// Overlapped speech appears wherever both streams fire.
RttmDocument IssDiarize(const SessionFrames &frames,
                        const SpeakerPrior &initial_prior,
                        const Separator &separator, const IssConfig &config,
                        IssReport *report = nullptr);

}  // namespace diar

#endif  // DIARPIPE_ADAPT_ISS_H_
