// adapt/simulate.h

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

#ifndef DIARPIPE_ADAPT_SIMULATE_H_
#define DIARPIPE_ADAPT_SIMULATE_H_

#include <cstdint>
#include <vector>

#include "adapt/backend.h"

namespace diar {

struct SnrRange {
  double low_db = -5.0;
  double high_db = 5.0;
};

// Two-speaker mixture specs for separator training.  Each mixture places one
// source interval per speaker (truncated to the mixture duration) at a random
// offset with a gain drawn from snr_range.  Output is fully determined by
// seed.  Throws TooFewSpeakers unless the prior has >= 2 non-empty pools.
std::vector<MixtureSpec> SimulateMixtures(const SpeakerPrior &prior, int count,
                                          double duration,
                                          const SnrRange &snr, uint64_t seed);

struct DialogueConfig {
  double total_duration = 600.0;
  double pause_low = 0.3;
  double pause_high = 1.2;
  double overlap_prob = 0.2;
  double overlap_low = 0.2;
  double overlap_high = 1.0;
};

// Alternating-turn dialogue for activity-model training.  Speakers rotate
// (never the same twice in a row when more than one exists); consecutive
// turns either leave a pause or, with overlap_prob, overlap the previous
// turn's tail.  Throws EmptyPrior when the prior has no usable material.
MixtureSpec SimulateDialogue(const SpeakerPrior &prior,
                             const DialogueConfig &config, uint64_t seed);

}  // namespace diar

#endif  // DIARPIPE_ADAPT_SIMULATE_H_
