// adapt/tsvad.cc

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

#include "adapt/tsvad.h"

#include <algorithm>
#include <string>

#include "base/error.h"
#include "base/rng.h"
#include "formats/frame_labels.h"

namespace diar {

namespace {

// Seed for the shipped dummy-profile pool; fixed so decodes are reproducible
// across runs and machines.
const uint64_t kDummyPoolSeed = 0x64756d6d79ULL;

SpeakerProfile DummyProfile(int index, int dim) {
  SpeakerProfile profile;
  profile.speaker_id = "dummy" + std::to_string(index);
  profile.total_voice = 0.0;
  Rng rng(MixSeed(kDummyPoolSeed, static_cast<uint64_t>(index)));
  profile.vector.resize(dim);
  for (int i = 0; i < dim; ++i) profile.vector[i] = rng.Normal();
  double norm = profile.vector.norm();
  if (norm > 0.0) profile.vector /= norm;
  return profile;
}

}  // namespace

std::vector<double> MedianFilterRow(const std::vector<double> &row,
                                    int window) {
  if (window <= 1) return row;
  const int n = static_cast<int>(row.size());
  const int half = window / 2;
  std::vector<double> out(n);
  std::vector<double> scratch;
  for (int f = 0; f < n; ++f) {
    int lo = std::max(0, f - half);
    int hi = std::min(n - 1, f + half);
    scratch.assign(row.begin() + lo, row.begin() + hi + 1);
    size_t mid = scratch.size() / 2;
    std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
    out[f] = scratch[mid];
  }
  return out;
}

RttmDocument TsVadDecode(const SessionFrames &frames,
                         const std::vector<SpeakerProfile> &profiles,
                         const ActivityEstimator &estimator,
                         const TsVadDecodeConfig &config) {
  if (profiles.empty()) throw EmptyProfiles(frames.recording_id);
  if (config.num_nodes < 1)
    throw ConfigInvalid("num_nodes must be >= 1");
  if (config.activity_threshold <= 0.0 || config.activity_threshold >= 1.0)
    throw ConfigInvalid("activity_threshold must be in (0, 1)");
  if (config.median_filter < 1 || config.median_filter % 2 == 0)
    throw ConfigInvalid("median_filter must be a positive odd window");

  std::vector<SpeakerProfile> retained = profiles;
  std::stable_sort(retained.begin(), retained.end(),
                   [](const SpeakerProfile &a, const SpeakerProfile &b) {
                     if (a.total_voice != b.total_voice)
                       return a.total_voice > b.total_voice;
                     return a.speaker_id < b.speaker_id;
                   });
  if (static_cast<int>(retained.size()) > config.num_nodes)
    retained.resize(config.num_nodes);

  std::vector<SpeakerProfile> nodes = retained;
  int dim = static_cast<int>(retained[0].vector.size());
  for (int i = 0; static_cast<int>(nodes.size()) < config.num_nodes; ++i)
    nodes.push_back(DummyProfile(i, dim));

  Eigen::MatrixXd post = estimator.Posteriors(frames, nodes);
  if (post.rows() != config.num_nodes ||
      post.cols() != frames.num_frames())
    throw EstimatorFailure(
        "posterior shape " + std::to_string(post.rows()) + "x" +
        std::to_string(post.cols()) + ", expected " +
        std::to_string(config.num_nodes) + "x" +
        std::to_string(frames.num_frames()));

  FrameLabels labels;
  labels.recording_id = frames.recording_id;
  labels.frame_step = frames.frame_step;
  labels.onset = 0.0;
  labels.num_frames = frames.num_frames();
  for (size_t s = 0; s < retained.size(); ++s) {
    std::vector<double> row(labels.num_frames);
    for (int f = 0; f < labels.num_frames; ++f)
      row[f] = post(static_cast<int>(s), f);
    row = MedianFilterRow(row, config.median_filter);
    std::vector<bool> active(labels.num_frames);
    for (int f = 0; f < labels.num_frames; ++f)
      active[f] = row[f] >= config.activity_threshold;
    labels.speaker_ids.push_back(retained[s].speaker_id);
    labels.activity.push_back(std::move(active));
  }
  return FramesToTurns(labels, 0.0, 0.0);
}

}  // namespace diar
