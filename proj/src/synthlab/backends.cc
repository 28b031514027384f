// synthlab/backends.cc

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

#include "synthlab/backends.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "base/rng.h"

namespace diar {

namespace {

// Corruption operates on 0.5 s blocks so that errors survive the decoder's
// short median filter instead of vanishing as single-frame blips.
const int kCorruptionBlockFrames = 50;

double CorruptionAmplitude(double fidelity) {
  return 0.8 * std::max(0.0, 1.0 - fidelity);
}

std::vector<double> CorruptedRow(const std::vector<bool> &mask, int num_frames,
                                 double amp, uint64_t seed,
                                 const std::string &tag, int row) {
  std::vector<double> out(num_frames);
  int num_blocks = (num_frames + kCorruptionBlockFrames - 1) /
                   kCorruptionBlockFrames;
  uint64_t row_seed = MixSeed(MixSeed(seed, tag), static_cast<uint64_t>(row));
  for (int b = 0; b < num_blocks; ++b) {
    Rng rng(MixSeed(row_seed, static_cast<uint64_t>(b)));
    double shift = amp * rng.Normal();
    int lo = b * kCorruptionBlockFrames;
    int hi = std::min(num_frames, lo + kCorruptionBlockFrames);
    for (int f = lo; f < hi; ++f) {
      double base =
          (f < static_cast<int>(mask.size()) && mask[f]) ? 1.0 : 0.0;
      out[f] = std::clamp(base + shift, 0.0, 1.0);
    }
  }
  return out;
}

std::vector<bool> TruthRow(const SynthSession &session,
                           const std::string &speaker_id) {
  for (int s = 0; s < session.truth.num_speakers(); ++s)
    if (session.truth.speaker_ids[s] == speaker_id)
      return session.truth.activity[s];
  return std::vector<bool>(session.truth.num_frames, false);
}

std::vector<bool> AnySpeechRow(const SynthSession &session) {
  std::vector<bool> any(session.truth.num_frames, false);
  for (const auto &row : session.truth.activity)
    for (int f = 0; f < session.truth.num_frames; ++f)
      if (row[f]) any[f] = true;
  return any;
}

// Per-speaker intervals where that speaker is active and nobody else is.
std::vector<IntervalList> AloneIntervals(const SynthSession &session) {
  std::vector<IntervalList> alone;
  for (const std::string &id : session.speaker_ids) {
    IntervalList own = session.reference.SpeakerSpeech(session.recording_id, id);
    IntervalList others;
    for (const std::string &other_id : session.speaker_ids) {
      if (other_id == id) continue;
      for (const TimeInterval &iv :
           session.reference.SpeakerSpeech(session.recording_id, other_id))
        others.push_back(iv);
    }
    alone.push_back(IntervalDifference(own, Coalesce(others)));
  }
  return alone;
}

}  // namespace

double MaterialPurity(const SynthSession &session,
                      const std::vector<MixtureSpec> &specs) {
  std::vector<IntervalList> alone = AloneIntervals(session);
  double total = 0.0, matched = 0.0;
  for (const MixtureSpec &spec : specs) {
    for (const MixtureComponent &comp : spec.components) {
      double length = comp.source.duration();
      if (length <= 0.0) continue;
      total += length;
      double best = 0.0;
      IntervalList src = {comp.source};
      for (const IntervalList &a : alone)
        best = std::max(best, TotalDuration(IntervalIntersection(a, src)));
      matched += best;
    }
  }
  return total > 0.0 ? matched / total : 0.0;
}

std::vector<SadPosterior> OracleSeparator::Separate(
    const SessionFrames &frames) const {
  // The two longest-voiced true speakers, in id order; a missing second
  // speaker becomes an everywhere-silent stream.
  std::vector<std::pair<double, std::string>> by_voice;
  for (const std::string &id : session_->speaker_ids)
    by_voice.emplace_back(
        -TotalDuration(
            session_->reference.SpeakerSpeech(session_->recording_id, id)),
        id);
  std::sort(by_voice.begin(), by_voice.end());
  std::vector<std::string> chosen;
  for (size_t i = 0; i < by_voice.size() && chosen.size() < 2; ++i)
    chosen.push_back(by_voice[i].second);
  std::sort(chosen.begin(), chosen.end());

  double amp = CorruptionAmplitude(fidelity_);
  std::vector<SadPosterior> streams;
  for (int k = 0; k < 2; ++k) {
    std::vector<bool> mask =
        k < static_cast<int>(chosen.size())
            ? TruthRow(*session_, chosen[k])
            : std::vector<bool>(session_->truth.num_frames, false);
    SadPosterior stream;
    stream.recording_id = frames.recording_id;
    stream.frame_step = frames.frame_step;
    stream.speech_prob = CorruptedRow(mask, frames.num_frames(), amp,
                                      session_->spec.seed, "separator", k);
    streams.push_back(std::move(stream));
  }
  return streams;
}

std::unique_ptr<Separator> OracleSeparator::Adapt(
    const std::vector<MixtureSpec> &mixtures) const {
  double purity = MaterialPurity(*session_, mixtures);
  double refined = std::min(1.0, fidelity_ + adapt_step_ * purity);
  return std::make_unique<OracleSeparator>(session_, refined, adapt_step_);
}

Eigen::MatrixXd OracleActivityEstimator::Posteriors(
    const SessionFrames &frames,
    const std::vector<SpeakerProfile> &profiles) const {
  const int rows = static_cast<int>(profiles.size());
  const int cols = frames.num_frames();
  double amp = CorruptionAmplitude(fidelity_);
  Eigen::MatrixXd post(rows, cols);
  for (int r = 0; r < rows; ++r) {
    // The profile binds to the direction it points at; a profile aligned with
    // no speaker (a dummy) gets the silent mask.
    int best = -1;
    double best_cos = 0.5;
    double norm = profiles[r].vector.norm();
    if (norm > 0.0) {
      for (size_t s = 0; s < session_->directions.size(); ++s) {
        double c = session_->directions[s].dot(profiles[r].vector) / norm;
        if (c > best_cos) {
          best_cos = c;
          best = static_cast<int>(s);
        }
      }
    }
    std::vector<bool> mask =
        best >= 0 ? TruthRow(*session_, session_->speaker_ids[best])
                  : std::vector<bool>(cols, false);
    std::vector<double> row = CorruptedRow(mask, cols, amp,
                                           session_->spec.seed, "activity", r);
    for (int f = 0; f < cols; ++f) post(r, f) = row[f];
  }
  return post;
}

std::unique_ptr<ActivityEstimator> OracleActivityEstimator::Adapt(
    const std::vector<MixtureSpec> &dialogues) const {
  double purity = MaterialPurity(*session_, dialogues);
  double refined = std::min(1.0, fidelity_ + adapt_step_ * purity);
  return std::make_unique<OracleActivityEstimator>(session_, refined,
                                                   adapt_step_);
}

SpeakerProfile OracleProfileExtractor::Extract(
    const std::string &speaker_id, const IntervalList &segments) const {
  SpeakerProfile profile;
  profile.speaker_id = speaker_id;
  profile.total_voice = TotalDuration(Coalesce(segments));
  profile.vector = Eigen::VectorXd::Zero(kSynthEmbeddingDim);
  double weight_sum = 0.0;
  IntervalList claimed = Coalesce(segments);
  for (size_t s = 0; s < session_->speaker_ids.size(); ++s) {
    double w = TotalDuration(IntervalIntersection(
        session_->reference.SpeakerSpeech(session_->recording_id,
                                          session_->speaker_ids[s]),
        claimed));
    profile.vector += w * session_->directions[s];
    weight_sum += w;
  }
  if (weight_sum > 0.0) profile.vector /= weight_sum;
  return profile;
}

SadPosterior OracleSadPosterior(const SynthSession &session, double fidelity) {
  SadPosterior post;
  post.recording_id = session.recording_id;
  post.frame_step = session.truth.frame_step;
  post.speech_prob =
      CorruptedRow(AnySpeechRow(session), session.truth.num_frames,
                   CorruptionAmplitude(fidelity), session.spec.seed, "sad", 0);
  return post;
}

OracleBackends MakeOracleBackends(const SynthSession &session, double fidelity,
                                  double adapt_step) {
  OracleBackends backends;
  backends.separator =
      std::make_unique<OracleSeparator>(&session, fidelity, adapt_step);
  backends.estimator =
      std::make_unique<OracleActivityEstimator>(&session, fidelity, adapt_step);
  backends.profiles = std::make_unique<OracleProfileExtractor>(&session);
  backends.sad = OracleSadPosterior(session, fidelity);
  return backends;
}

}  // namespace diar
