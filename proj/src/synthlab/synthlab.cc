// synthlab/synthlab.cc

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

#include "synthlab/synthlab.h"

#include <algorithm>
#include <cmath>

#include "base/error.h"
#include "base/rng.h"

namespace diar {

namespace {

double Snap(double seconds) {
  return std::round(seconds / kSynthFrameStep) * kSynthFrameStep;
}

// Grid-aligned turn length / pause draws, in whole frames.
double DrawLength(Rng *rng) {
  return (200 + rng->UniformInt(401)) * kSynthFrameStep;  // 2.00 .. 6.00 s
}

double DrawPause(Rng *rng) {
  return (30 + rng->UniformInt(91)) * kSynthFrameStep;  // 0.30 .. 1.20 s
}

}  // namespace

double MeasuredOverlapRatio(const FrameLabels &truth) {
  int speech = truth.SpeechFrames();
  if (speech == 0) return 0.0;
  return static_cast<double>(truth.OverlapFrames()) / speech;
}

SynthSession GenSession(const SynthSessionSpec &spec) {
  if (spec.num_speakers < 1) throw ConfigInvalid("num_speakers must be >= 1");
  if (spec.overlap_ratio < 0.0 || spec.overlap_ratio >= 1.0)
    throw ConfigInvalid("overlap_ratio must be in [0, 1)");
  if (spec.num_speakers == 1 && spec.overlap_ratio > 0.0)
    throw InfeasibleOverlap("one speaker cannot overlap itself");
  if (spec.noise_level < 0.0) throw ConfigInvalid("noise_level must be >= 0");
  if (spec.duration <= 0.0) throw ConfigInvalid("duration must be > 0");

  SynthSession session;
  session.spec = spec;
  session.recording_id = spec.recording_id.empty()
                             ? "synth" + std::to_string(spec.seed)
                             : spec.recording_id;

  // Speaker directions: a random orthonormal frame.  Orthogonality caps the
  // top between-speaker eigenvalue at the largest per-speaker share, which
  // keeps the PCA energy rule from collapsing to one component at low noise;
  // random non-orthogonal directions wobble enough to cross that line.
  Rng dir_rng(MixSeed(spec.seed, "directions"));
  for (int s = 0; s < spec.num_speakers; ++s) {
    session.speaker_ids.push_back("spk" + std::to_string(s));
    Eigen::VectorXd dir(kSynthEmbeddingDim);
    for (int i = 0; i < kSynthEmbeddingDim; ++i) dir[i] = dir_rng.Normal();
    for (const Eigen::VectorXd &other : session.directions)
      dir -= dir.dot(other) * other;
    dir /= dir.norm();
    session.directions.push_back(dir);
  }

  // Turn-taking.  Overlap is steered: each turn overlaps the previous one by
  // exactly the amount that moves the running overlap fraction to the target,
  // capped at 80% of the shorter of the two turns.
  Rng turn_rng(MixSeed(spec.seed, "turns"));
  std::vector<Turn> turns;
  double cursor = 0.0;
  double speech_sum = 0.0;   // sum of turn lengths
  double overlap_sum = 0.0;  // time covered twice
  double prev_length = 0.0;
  int prev = -1;
  // Floor selection keeps per-speaker speech balanced; a lopsided session
  // concentrates variance on one axis and defeats the PCA energy rule at low
  // noise levels.
  std::vector<double> voice(spec.num_speakers, 0.0);
  const double target = spec.overlap_ratio;
  while (cursor < spec.duration) {
    int spk;
    if (spec.num_speakers == 1) {
      spk = 0;
    } else {
      // Uniform choice among the least-voiced speakers, excluding the
      // previous one.
      double floor_voice = 1e300;
      for (int s = 0; s < spec.num_speakers; ++s)
        if (s != prev) floor_voice = std::min(floor_voice, voice[s]);
      std::vector<int> candidates;
      for (int s = 0; s < spec.num_speakers; ++s)
        if (s != prev && voice[s] <= floor_voice + 1e-9) candidates.push_back(s);
      spk = candidates[turn_rng.UniformInt(
          static_cast<int>(candidates.size()))];
    }
    double length = DrawLength(&turn_rng);
    double onset;
    if (prev < 0) {
      onset = 0.0;
    } else if (target > 0.0) {
      // Solve (overlap_sum + ov) = target * (speech_sum + length -
      // overlap_sum - ov) for ov, then clamp to what the two turns allow.
      double want =
          target * (speech_sum + length) / (1.0 + target) - overlap_sum;
      double cap = 0.8 * std::min(prev_length, length);
      double ov = Snap(std::clamp(want, 0.0, cap));
      if (ov > 0.0) {
        onset = Snap(cursor - ov);
        overlap_sum += cursor - onset;
      } else {
        onset = Snap(cursor + DrawPause(&turn_rng));
      }
    } else {
      onset = Snap(cursor + DrawPause(&turn_rng));
    }
    turns.emplace_back(session.recording_id, session.speaker_ids[spk],
                       TimeInterval(onset, Snap(onset + length)));
    speech_sum += turns.back().interval.duration();
    voice[spk] += turns.back().interval.duration();
    cursor = turns.back().interval.offset;
    prev_length = turns.back().interval.duration();
    prev = spk;
  }
  session.reference = RttmDocument(turns);

  double extent = Snap(cursor);
  session.truth = TurnsToFrames(session.reference, session.recording_id,
                                kSynthFrameStep, TimeInterval(0.0, extent));

  // Embeddings: each turn is cut into ~0.5 s subsegments; a tail under 0.5 s
  // is absorbed into the final chunk.  Short chunks keep the per-session
  // sample count well above the retained PCA dimensionality, which keeps
  // projected noise variances close to their nominal values.
  Rng emb_rng(MixSeed(spec.seed, "embeddings"));
  for (const Turn &turn : turns) {
    int spk = 0;
    while (session.speaker_ids[spk] != turn.speaker_id) ++spk;
    double t = turn.interval.onset;
    while (t < turn.interval.offset) {
      double remaining = turn.interval.offset - t;
      double chunk = std::min(0.5, remaining);
      if (remaining - chunk > 0.0 && remaining - chunk < 0.5)
        chunk = remaining;
      Embedding e;
      e.recording_id = session.recording_id;
      e.source_interval = TimeInterval(t, t + chunk);
      e.vector = session.directions[spk];
      for (int i = 0; i < kSynthEmbeddingDim; ++i)
        e.vector[i] += spec.noise_level * emb_rng.Normal();
      session.embeddings.push_back(std::move(e));
      session.embedding_speaker.push_back(spk);
      t += chunk;
    }
  }

  // Feature stream: 20 dB log-energy gap between speech and silence frames.
  Rng energy_rng(MixSeed(spec.seed, "energy"));
  session.frames.recording_id = session.recording_id;
  session.frames.frame_step = kSynthFrameStep;
  session.frames.energy.resize(session.truth.num_frames);
  std::vector<bool> any(session.truth.num_frames, false);
  for (const auto &row : session.truth.activity)
    for (int f = 0; f < session.truth.num_frames; ++f)
      if (row[f]) any[f] = true;
  for (int f = 0; f < session.truth.num_frames; ++f) {
    double log_e = (any[f] ? std::log(100.0) : 0.0) + 0.2 * energy_rng.Normal();
    session.frames.energy[f] = std::exp(log_e);
  }
  return session;
}

RttmDocument CorruptHypothesis(const RttmDocument &reference,
                               const std::string &recording_id,
                               const CorruptionConfig &config, uint64_t seed) {
  Rng rng(MixSeed(seed, "corrupt"));
  std::vector<Turn> ref_turns = reference.TurnsFor(recording_id);
  if (ref_turns.empty()) return RttmDocument();
  std::vector<std::string> speakers = reference.SpeakersFor(recording_id);
  std::vector<Turn> out;
  double extent = 0.0;
  for (const Turn &turn : ref_turns) {
    extent = std::max(extent, turn.interval.offset);
    if (rng.Bernoulli(config.drop_prob)) continue;
    double onset =
        Snap(turn.interval.onset + config.boundary_jitter_sd * rng.Normal());
    double offset =
        Snap(turn.interval.offset + config.boundary_jitter_sd * rng.Normal());
    onset = std::max(0.0, onset);
    if (offset < onset + 0.1) offset = Snap(onset + 0.1);
    std::string speaker = turn.speaker_id;
    if (speakers.size() > 1 && rng.Bernoulli(config.relabel_prob)) {
      int pick = rng.UniformInt(static_cast<int>(speakers.size()) - 1);
      std::vector<std::string> others;
      for (const std::string &s : speakers)
        if (s != turn.speaker_id) others.push_back(s);
      speaker = others[pick];
    }
    out.emplace_back(recording_id, speaker, TimeInterval(onset, offset));
  }
  int spurious =
      static_cast<int>(std::floor(extent / 60.0 * config.spurious_per_minute));
  for (int i = 0; i < spurious; ++i) {
    double onset = Snap(rng.Uniform() * extent);
    double length = Snap(0.5 + rng.Uniform() * 1.5);
    const std::string &speaker =
        speakers[rng.UniformInt(static_cast<int>(speakers.size()))];
    out.emplace_back(recording_id, speaker,
                     TimeInterval(onset, onset + length));
  }
  return RttmDocument(std::move(out));
}

}  // namespace diar
