// adapt/simulate.cc

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

#include "adapt/simulate.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "base/error.h"
#include "base/rng.h"

namespace diar {

namespace {

const double kMixtureFrameStep = 0.01;

std::vector<std::string> NonEmptyPools(const SpeakerPrior &prior) {
  std::vector<std::string> speakers;
  for (const auto &entry : prior.segments)
    if (!entry.second.empty()) speakers.push_back(entry.first);
  return speakers;
}

// Reference labels implied by the placed components, on the mixture's own
// timeline starting at 0.
FrameLabels PlacementReference(const MixtureSpec &spec,
                               const std::string &recording_id) {
  std::vector<Turn> turns;
  for (const MixtureComponent &comp : spec.components) {
    double length = comp.source.duration();
    turns.emplace_back(recording_id, comp.speaker_id,
                       TimeInterval(comp.placement_offset,
                                    comp.placement_offset + length));
  }
  RttmDocument doc(std::move(turns));
  return TurnsToFrames(doc, recording_id, kMixtureFrameStep,
                       TimeInterval(0.0, spec.duration));
}

}  // namespace

std::vector<MixtureSpec> SimulateMixtures(const SpeakerPrior &prior, int count,
                                          double duration,
                                          const SnrRange &snr, uint64_t seed) {
  std::vector<std::string> speakers = NonEmptyPools(prior);
  if (speakers.size() < 2)
    throw TooFewSpeakers(prior.recording_id + ": need 2 non-empty pools, have " +
                         std::to_string(speakers.size()));
  Rng rng(MixSeed(seed, "mixtures"));
  std::vector<MixtureSpec> specs;
  specs.reserve(count);
  for (int i = 0; i < count; ++i) {
    int a = rng.UniformInt(static_cast<int>(speakers.size()));
    int b = rng.UniformInt(static_cast<int>(speakers.size()) - 1);
    if (b >= a) ++b;
    double snr_db = snr.low_db + rng.Uniform() * (snr.high_db - snr.low_db);

    MixtureSpec spec;
    spec.duration = duration;
    int picked = 0;
    for (int idx : {a, b}) {
      const IntervalList &pool = prior.segments.at(speakers[idx]);
      const TimeInterval &src =
          pool[rng.UniformInt(static_cast<int>(pool.size()))];
      double length = std::min(src.duration(), duration);
      MixtureComponent comp;
      comp.speaker_id = speakers[idx];
      comp.source = TimeInterval(src.onset, src.onset + length);
      comp.placement_offset =
          length < duration ? rng.Uniform() * (duration - length) : 0.0;
      comp.gain = picked == 0 ? 1.0 : std::pow(10.0, snr_db / 20.0);
      spec.components.push_back(comp);
      ++picked;
    }
    spec.reference = PlacementReference(
        spec, prior.recording_id + "-mix" + std::to_string(i));
    specs.push_back(std::move(spec));
  }
  return specs;
}

MixtureSpec SimulateDialogue(const SpeakerPrior &prior,
                             const DialogueConfig &config, uint64_t seed) {
  std::vector<std::string> speakers = NonEmptyPools(prior);
  if (speakers.empty()) throw EmptyPrior(prior.recording_id);
  Rng rng(MixSeed(seed, "dialogue"));

  MixtureSpec spec;
  double cursor = 0.0;
  int prev = -1;
  while (cursor < config.total_duration) {
    int spk;
    if (speakers.size() == 1) {
      spk = 0;
    } else if (prev < 0) {
      spk = rng.UniformInt(static_cast<int>(speakers.size()));
    } else {
      spk = rng.UniformInt(static_cast<int>(speakers.size()) - 1);
      if (spk >= prev) ++spk;
    }
    const IntervalList &pool = prior.segments.at(speakers[spk]);
    const TimeInterval &src = pool[rng.UniformInt(static_cast<int>(pool.size()))];
    double length = src.duration();

    double onset;
    if (spec.components.empty()) {
      onset = 0.0;
    } else if (speakers.size() > 1 && rng.Bernoulli(config.overlap_prob)) {
      double prev_length = spec.components.back().source.duration();
      double overlap = config.overlap_low +
                       rng.Uniform() * (config.overlap_high -
                                        config.overlap_low);
      overlap = std::min(overlap, 0.5 * std::min(prev_length, length));
      onset = cursor - overlap;
    } else {
      onset = cursor + config.pause_low +
              rng.Uniform() * (config.pause_high - config.pause_low);
    }
    MixtureComponent comp;
    comp.speaker_id = speakers[spk];
    comp.source = src;
    comp.placement_offset = onset;
    comp.gain = 1.0;
    spec.components.push_back(comp);
    cursor = onset + length;
    prev = spk;
  }
  spec.duration = cursor;
  spec.reference =
      PlacementReference(spec, prior.recording_id + "-dialogue");
  return spec;
}

}  // namespace diar
