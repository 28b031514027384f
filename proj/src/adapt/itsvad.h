// adapt/itsvad.h

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

#ifndef DIARPIPE_ADAPT_ITSVAD_H_
#define DIARPIPE_ADAPT_ITSVAD_H_

#include <cstdint>
#include <vector>

#include "adapt/backend.h"
#include "adapt/simulate.h"
#include "adapt/tsvad.h"
#include "formats/rttm.h"

namespace diar {

struct ItsVadConfig {
  int iterations = 1;
  int dialogues_per_iteration = 2;
  DialogueConfig dialogue;
  TsVadDecodeConfig decode;
  uint64_t seed = 0;
};

struct ItsVadReport {
  // Every decode in order; .back() is the returned document.
  std::vector<RttmDocument> hypotheses;
  // Iterations where purification emptied the prior and the previous one was
  // kept instead.
  int degenerate_fallbacks = 0;
};

// Iterative target-speaker VAD.  Decode with profiles from the purified
// initial diarization, then per iteration: purify the decode against the
// previous hypothesis, rebuild the prior, simulate dialogues, adapt the
// estimator, re-extract profiles, decode again.  A purification that leaves
// no prior falls back to the previous one and is counted in the report.
RttmDocument ItsVadDiarize(const SessionFrames &frames,
                           const RttmDocument &init_diar,
                           const ActivityEstimator &estimator,
                           const ProfileExtractor &profile_extractor,
                           const ItsVadConfig &config,
                           ItsVadReport *report = nullptr);

}  // namespace diar

#endif  // DIARPIPE_ADAPT_ITSVAD_H_
