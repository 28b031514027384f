// synthlab/backends.h

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

#ifndef DIARPIPE_SYNTHLAB_BACKENDS_H_
#define DIARPIPE_SYNTHLAB_BACKENDS_H_

#include <memory>
#include <vector>

#include "adapt/backend.h"
#include "synthlab/synthlab.h"

namespace diar {

// Ground-truth-backed model backends.  Outputs are the true masks corrupted
// by seeded block noise of amplitude 0.8 * (1 - fidelity); fidelity 1 is
// exact.  Adapt() returns a copy whose fidelity grew by adapt_step scaled by
// the purity of the adaptation material (the fraction that is genuinely
// single-speaker in the session truth), capped at 1.  All backends hold a
// pointer to the session, which must outlive them.

class OracleSeparator : public Separator {
 public:
  OracleSeparator(const SynthSession *session, double fidelity,
                  double adapt_step)
      : session_(session), fidelity_(fidelity), adapt_step_(adapt_step) {}

  std::vector<SadPosterior> Separate(
      const SessionFrames &frames) const override;
  std::unique_ptr<Separator> Adapt(
      const std::vector<MixtureSpec> &mixtures) const override;

  double fidelity() const { return fidelity_; }

 private:
  const SynthSession *session_;
  double fidelity_;
  double adapt_step_;
};

class OracleActivityEstimator : public ActivityEstimator {
 public:
  OracleActivityEstimator(const SynthSession *session, double fidelity,
                          double adapt_step)
      : session_(session), fidelity_(fidelity), adapt_step_(adapt_step) {}

  Eigen::MatrixXd Posteriors(
      const SessionFrames &frames,
      const std::vector<SpeakerProfile> &profiles) const override;
  std::unique_ptr<ActivityEstimator> Adapt(
      const std::vector<MixtureSpec> &dialogues) const override;

  double fidelity() const { return fidelity_; }

 private:
  const SynthSession *session_;
  double fidelity_;
  double adapt_step_;
};

// Time-weighted mean of the true speaker directions over the claimed
// segments; silence contributes nothing.
class OracleProfileExtractor : public ProfileExtractor {
 public:
  explicit OracleProfileExtractor(const SynthSession *session)
      : session_(session) {}

  SpeakerProfile Extract(const std::string &speaker_id,
                         const IntervalList &segments) const override;

 private:
  const SynthSession *session_;
};

// Speech posterior for the whole session: the any-speaker mask under the same
// corruption model.
SadPosterior OracleSadPosterior(const SynthSession &session, double fidelity);

// Purity of simulated material against the session truth: the average over
// source time of whether some single speaker is active alone there.
double MaterialPurity(const SynthSession &session,
                      const std::vector<MixtureSpec> &specs);

struct OracleBackends {
  std::unique_ptr<Separator> separator;
  std::unique_ptr<ActivityEstimator> estimator;
  std::unique_ptr<ProfileExtractor> profiles;
  SadPosterior sad;
};

OracleBackends MakeOracleBackends(const SynthSession &session, double fidelity,
                                  double adapt_step);

}  // namespace diar

#endif  // DIARPIPE_SYNTHLAB_BACKENDS_H_
