// metrics/score.h

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

#ifndef DIARPIPE_METRICS_SCORE_H_
#define DIARPIPE_METRICS_SCORE_H_

#include <map>
#include <string>
#include <utility>

#include "formats/rttm.h"

namespace diar {

// Key for per-speaker results: (recording, reference speaker).
typedef std::pair<std::string, std::string> SpeakerKey;

struct DerBreakdown {
  double miss_pct = 0.0;
  double fa_pct = 0.0;
  double spkerr_pct = 0.0;
  double der_pct = 0.0;
  // Normalizer: total reference speaker time over scored regions, seconds.
  double scored_speaker_time = 0.0;
  // Optimal one-to-one mapping, reference speaker to hypothesis speaker.
  std::map<SpeakerKey, std::string> speaker_map;
};

struct JerResult {
  double jer_pct = 0.0;
  std::map<SpeakerKey, double> per_speaker;
};

struct SadError {
  double miss_pct = 0.0;
  double fa_pct = 0.0;
  double total_pct = 0.0;
};

// Diarization error rate with its miss / false-alarm / speaker-error split.
// The timeline is cut at every turn and region boundary; atomic regions
// within +-collar of a reference turn boundary are excluded, and regions
// with more than one reference speaker are excluded when score_overlap is
// false.  The speaker mapping maximizes correctly attributed time per
// recording (exact assignment).  Percentages normalize by total reference
// speaker time over scored regions; der_pct = miss + fa + spkerr.
// Throws UnknownRecording if hyp mentions a recording absent from uem,
// EmptyReferenceSpeech if the normalizer is zero.
DerBreakdown ScoreDer(const RttmDocument &ref, const RttmDocument &hyp,
                      const UemDocument &uem, double collar = 0.0,
                      bool score_overlap = true);

// Jaccard error rate.  Uses the ScoreDer speaker map (collar 0, overlap
// scored); per reference speaker i mapped to j,
// per_speaker = 100 * (1 - |time(i) ^ time(j)| / |time(i) v time(j)|)
// with times clipped to the scoring regions; unmapped speakers score 100;
// jer_pct is the unweighted mean.  Reference speakers with no time inside
// the scoring regions are excluded.
JerResult ScoreJer(const RttmDocument &ref, const RttmDocument &hyp,
                   const UemDocument &uem);

// Speech-activity error: miss = reference speech not covered by the
// hypothesis, fa = hypothesis speech outside reference speech, both within
// the scoring regions, normalized by total region duration.  Speaker labels
// in hyp_speech are ignored.  Throws EmptyUem.
SadError ScoreSad(const RttmDocument &ref, const RttmDocument &hyp_speech,
                  const UemDocument &uem);

}  // namespace diar

#endif  // DIARPIPE_METRICS_SCORE_H_
