// adapt/itsvad.cc

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

#include "adapt/itsvad.h"

#include <map>
#include <memory>
#include <string>

#include "adapt/priors.h"
#include "base/error.h"
#include "base/rng.h"

namespace diar {

namespace {

// Per-speaker intersection of two hypotheses for one recording.  Speakers
// missing from either side contribute nothing.
RttmDocument IntersectPerSpeaker(const RttmDocument &a, const RttmDocument &b,
                                 const std::string &recording_id) {
  std::map<std::string, IntervalList> left, right;
  for (const Turn &turn : a.TurnsFor(recording_id))
    left[turn.speaker_id].push_back(turn.interval);
  for (const Turn &turn : b.TurnsFor(recording_id))
    right[turn.speaker_id].push_back(turn.interval);
  std::vector<Turn> turns;
  for (const auto &entry : left) {
    auto it = right.find(entry.first);
    if (it == right.end()) continue;
    IntervalList common =
        IntervalIntersection(Coalesce(entry.second), Coalesce(it->second));
    for (const TimeInterval &iv : common)
      turns.emplace_back(recording_id, entry.first, iv);
  }
  return RttmDocument(std::move(turns));
}

std::vector<SpeakerProfile> ProfilesFromPrior(
    const ProfileExtractor &extractor, const SpeakerPrior &prior) {
  std::vector<SpeakerProfile> profiles;
  for (const auto &entry : prior.segments)
    profiles.push_back(extractor.Extract(entry.first, entry.second));
  return profiles;
}

SpeakerPrior PurifiedPrior(const RttmDocument &purified,
                           const std::string &recording_id) {
  try {
    return ExtractSpeakerPriors(purified, recording_id,
                                /*exclude_overlap=*/true);
  } catch (const NoSpeechForRecording &e) {
    throw DegeneratePrior(e.what());
  } catch (const AllSpeechOverlapped &e) {
    throw DegeneratePrior(e.what());
  }
}

}  // namespace

RttmDocument ItsVadDiarize(const SessionFrames &frames,
                           const RttmDocument &init_diar,
                           const ActivityEstimator &estimator,
                           const ProfileExtractor &profile_extractor,
                           const ItsVadConfig &config, ItsVadReport *report) {
  if (config.iterations < 1) throw ConfigInvalid("iterations must be >= 1");
  if (config.dialogues_per_iteration < 1)
    throw ConfigInvalid("dialogues_per_iteration must be >= 1");

  SpeakerPrior prior = ExtractSpeakerPriors(init_diar, frames.recording_id,
                                            /*exclude_overlap=*/true);
  const ActivityEstimator *current = &estimator;
  std::unique_ptr<ActivityEstimator> owned;

  RttmDocument previous = init_diar;
  RttmDocument decoded = TsVadDecode(
      frames, ProfilesFromPrior(profile_extractor, prior), *current,
      config.decode);
  if (report) report->hypotheses.push_back(decoded);

  for (int iter = 1; iter <= config.iterations; ++iter) {
    RttmDocument purified =
        IntersectPerSpeaker(decoded, previous, frames.recording_id);
    try {
      prior = PurifiedPrior(purified, frames.recording_id);
    } catch (const DegeneratePrior &) {
      // Keep the previous prior; the decode still proceeds.
      if (report) ++report->degenerate_fallbacks;
    }

    std::vector<MixtureSpec> dialogues;
    for (int d = 0; d < config.dialogues_per_iteration; ++d)
      dialogues.push_back(SimulateDialogue(
          prior, config.dialogue,
          MixSeed(config.seed,
                  static_cast<uint64_t>(iter) * 1000 +
                      static_cast<uint64_t>(d))));
    owned = current->Adapt(dialogues);
    current = owned.get();

    previous = decoded;
    decoded = TsVadDecode(frames, ProfilesFromPrior(profile_extractor, prior),
                          *current, config.decode);
    if (report) report->hypotheses.push_back(decoded);
  }
  return decoded;
}

}  // namespace diar
