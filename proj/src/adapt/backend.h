// adapt/backend.h

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

#ifndef DIARPIPE_ADAPT_BACKEND_H_
#define DIARPIPE_ADAPT_BACKEND_H_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "formats/frame_labels.h"
#include "formats/interval.h"
#include "sad/sad.h"

namespace diar {

// Per-frame feature stream for one recording.  The toolkit never touches
// waveforms; model backends consume this stream instead.
struct SessionFrames {
  std::string recording_id;
  double frame_step = 0.01;
  std::vector<double> energy;

  int num_frames() const { return static_cast<int>(energy.size()); }
};

// Per-speaker pools of source material for simulation, keyed by speaker id.
// Within a speaker the intervals are disjoint and sorted; pools built with
// overlap exclusion share no instant across speakers.
struct SpeakerPrior {
  std::string recording_id;
  std::map<std::string, IntervalList> segments;
};

struct MixtureComponent {
  std::string speaker_id;
  TimeInterval source;
  double placement_offset = 0.0;
  double gain = 1.0;
};

// A simulated mixture or dialogue: source placements plus the frame-level
// reference implied by them.  Every component lies within [0, duration).
struct MixtureSpec {
  std::vector<MixtureComponent> components;
  double duration = 0.0;
  FrameLabels reference;
};

struct SpeakerProfile {
  std::string speaker_id;
  Eigen::VectorXd vector;
  double total_voice = 0.0;
};

// Two-stream source separation front end.  Adapt returns a refined instance
// trained on the given mixtures; the receiver is unchanged.
class Separator {
 public:
  virtual ~Separator() = default;
  virtual std::vector<SadPosterior> Separate(
      const SessionFrames &frames) const = 0;
  virtual std::unique_ptr<Separator> Adapt(
      const std::vector<MixtureSpec> &mixtures) const = 0;
};

// Target-speaker activity model: given per-speaker profiles, produces one
// posterior row per profile, in profile order.  Adapt returns a refined
// instance trained on the given dialogues.
class ActivityEstimator {
 public:
  virtual ~ActivityEstimator() = default;
  virtual Eigen::MatrixXd Posteriors(
      const SessionFrames &frames,
      const std::vector<SpeakerProfile> &profiles) const = 0;
  virtual std::unique_ptr<ActivityEstimator> Adapt(
      const std::vector<MixtureSpec> &dialogues) const = 0;
};

// Produces a speaker profile from that speaker's attributed segments.
class ProfileExtractor {
 public:
  virtual ~ProfileExtractor() = default;
  virtual SpeakerProfile Extract(const std::string &speaker_id,
                                 const IntervalList &segments) const = 0;
};

}  // namespace diar

#endif  // DIARPIPE_ADAPT_BACKEND_H_
