// adapt/priors.h

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

#ifndef DIARPIPE_ADAPT_PRIORS_H_
#define DIARPIPE_ADAPT_PRIORS_H_

#include <string>

#include "adapt/backend.h"
#include "formats/rttm.h"

namespace diar {

// Groups one recording's hypothesized turns into per-speaker source pools.
// With exclude_overlap, any instant where two or more speakers are active is
// removed from every speaker, and speakers left with nothing are dropped.
// Throws NoSpeechForRecording if the recording has no turns at all, and
// AllSpeechOverlapped if exclusion empties the prior.
SpeakerPrior ExtractSpeakerPriors(const RttmDocument &diar,
                                  const std::string &recording_id,
                                  bool exclude_overlap);

}  // namespace diar

#endif  // DIARPIPE_ADAPT_PRIORS_H_
