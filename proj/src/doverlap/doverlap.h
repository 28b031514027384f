// doverlap/doverlap.h

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

#ifndef DIARPIPE_DOVERLAP_DOVERLAP_H_
#define DIARPIPE_DOVERLAP_DOVERLAP_H_

#include <optional>
#include <string>
#include <vector>

#include "formats/rttm.h"

namespace diar {

// Overlap-aware rank-weighted label fusion across diarization hypotheses.
// Recordings fuse independently; everything here is deterministic.

struct SystemHypothesis {
  std::string name;
  RttmDocument doc;
  std::optional<double> weight;  // explicit weight; >= 0 when present
};

enum class CountRounding { kNearestEven, kFloor, kCeil };

struct FusionConfig {
  double rank_exponent = 1.0;
  CountRounding rounding = CountRounding::kNearestEven;
};

// Rounds the weighted speaker count estimate.  Half-to-even is the default
// rule; exact .5 ties take the even neighbor.
double RoundCount(double value, CountRounding rule);

// System weights for fusion, normalized to sum 1.  If every hypothesis
// carries an explicit weight those are normalized and returned.  Otherwise
// each system is scored by its mean error rate against all other systems as
// pseudo-references; systems are ranked ascending (best = rank 1, exact ties
// share a rank, names order the sort deterministically) and weighted
// proportionally to rank^(-rank_exponent).
// Throws TooFewSystems for < 2 systems, ConfigInvalid for a mix of explicit
// and absent weights, duplicate names, negative weights, or a non-finite
// exponent.  Scoring errors from degenerate pseudo-references propagate.
std::vector<double> RankSystems(const std::vector<SystemHypothesis> &hyps,
                                const UemDocument &uem,
                                const FusionConfig &config = {});

// Rewrites all hypotheses into one speaker namespace per recording.  The
// first system's labels seed the namespace; each later system's speakers are
// matched one-to-one to existing global speakers by maximal overlap time
// (exact assignment).  Speakers left unmatched, including those whose best
// match would overlap nothing, receive a fresh id derived from their source
// label.  Throws TooFewSystems for < 2 systems.
std::vector<SystemHypothesis> MapLabels(
    const std::vector<SystemHypothesis> &hyps);

// Label fusion proper.  Inputs must share a speaker namespace (MapLabels)
// and weights must be normalized.  The timeline is cut at every turn
// boundary; per atomic region the speaker count estimate is the weighted
// mean of per-system counts rounded per config, and the top-voted speakers
// fill it (vote = sum of asserting systems' weights, ties broken by name).
// Adjacent regions merge wherever a speaker persists.
// Throws UnnormalizedWeights if the weight vector does not match the system
// count or does not sum to 1.
RttmDocument DoverlapFuse(const std::vector<SystemHypothesis> &hyps,
                          const std::vector<double> &weights,
                          const FusionConfig &config = {});

}  // namespace diar

#endif  // DIARPIPE_DOVERLAP_DOVERLAP_H_
