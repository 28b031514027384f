// adapt/iss.cc

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

#include "adapt/iss.h"

#include <memory>
#include <string>

#include "adapt/priors.h"
#include "base/error.h"
#include "base/rng.h"

namespace diar {

RttmDocument IssDiarize(const SessionFrames &frames,
                        const SpeakerPrior &initial_prior,
                        const Separator &separator, const IssConfig &config,
                        IssReport *report) {
  if (config.stages < 1) throw ConfigInvalid("stages must be >= 1");

  SpeakerPrior prior = initial_prior;
  const Separator *current = &separator;
  std::unique_ptr<Separator> owned;
  RttmDocument hypothesis;
  for (int stage = 0; stage < config.stages; ++stage) {
    std::vector<MixtureSpec> mixtures =
        SimulateMixtures(prior, config.mixture_count, config.mixture_duration,
                         config.snr, MixSeed(config.seed, static_cast<uint64_t>(stage)));
    owned = current->Adapt(mixtures);
    current = owned.get();

    std::vector<SadPosterior> streams = current->Separate(frames);
    if (streams.size() != 2)
      throw SeparatorFailure("expected 2 streams, got " +
                             std::to_string(streams.size()));
    std::vector<Turn> turns;
    for (size_t k = 0; k < streams.size(); ++k) {
      RttmDocument stream_doc = BinarizeAndSmooth(
          streams[k], config.sad_threshold, config.min_speech,
          config.min_silence, "iss" + std::to_string(k));
      for (const Turn &turn : stream_doc.turns()) turns.push_back(turn);
    }
    hypothesis = RttmDocument(std::move(turns));
    if (report) report->stage_hypotheses.push_back(hypothesis);
    if (stage + 1 < config.stages)
      prior = ExtractSpeakerPriors(hypothesis, frames.recording_id,
                                   /*exclude_overlap=*/true);
  }
  return hypothesis;
}

}  // namespace diar
