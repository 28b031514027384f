// synthlab/synthlab.h

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

#ifndef DIARPIPE_SYNTHLAB_SYNTHLAB_H_
#define DIARPIPE_SYNTHLAB_SYNTHLAB_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "adapt/backend.h"
#include "clustering/embedding.h"
#include "formats/frame_labels.h"
#include "formats/rttm.h"

namespace diar {

// Ambient embedding dimension.  High on purpose: the session-PCA energy rule
// keeps the smallest leading eigenvector set covering 30% of total variance,
// and only when the isotropic noise mass rivals the speaker scatter does that
// rule retain the full between-speaker subspace.  At dim 256, with balanced
// turn-taking and orthonormal speaker directions, it does for 2-4 speakers
// at noise levels down to roughly 0.05; well below that the rule collapses
// to one component and nearby speakers can merge.
const int kSynthEmbeddingDim = 256;

const double kSynthFrameStep = 0.01;

struct SynthSessionSpec {
  int num_speakers = 2;
  double duration = 120.0;
  double overlap_ratio = 0.0;
  double noise_level = 0.1;
  uint64_t seed = 0;
  std::string recording_id;  // empty: "synth<seed>"
};

struct SynthSession {
  SynthSessionSpec spec;
  std::string recording_id;
  std::vector<std::string> speaker_ids;
  std::vector<Eigen::VectorXd> directions;  // unit mean per speaker

  RttmDocument reference;
  FrameLabels truth;  // step 0.01 from time 0
  std::vector<Embedding> embeddings;
  std::vector<int> embedding_speaker;  // index into speaker_ids
  SessionFrames frames;                // log-energy-consistent feature stream
};

// Fully seeded synthetic session.  All turn boundaries lie on the 10 ms frame
// grid so the turn <-> frame bridges are exact.  Turn-taking is steered to
// land the overlapped-speech fraction within 0.05 of spec.overlap_ratio.
// Throws InfeasibleOverlap for a positive ratio with one speaker.
SynthSession GenSession(const SynthSessionSpec &spec);

// Fraction of total speech time (union over speakers) during which >= 2
// speakers are active, measured on the frame grid.
double MeasuredOverlapRatio(const FrameLabels &truth);

struct CorruptionConfig {
  double boundary_jitter_sd = 0.2;  // seconds, snapped back to the grid
  double drop_prob = 0.05;
  double relabel_prob = 0.05;
  double spurious_per_minute = 0.5;
};

// Seeded degradation of a reference diarization: boundary jitter, dropped and
// relabeled turns, spurious short turns.  Used to build system ensembles with
// known error structure.
RttmDocument CorruptHypothesis(const RttmDocument &reference,
                               const std::string &recording_id,
                               const CorruptionConfig &config, uint64_t seed);

}  // namespace diar

#endif  // DIARPIPE_SYNTHLAB_SYNTHLAB_H_
