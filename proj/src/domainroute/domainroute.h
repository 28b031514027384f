// domainroute/domainroute.h

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

#ifndef DIARPIPE_DOMAINROUTE_DOMAINROUTE_H_
#define DIARPIPE_DOMAINROUTE_DOMAINROUTE_H_

#include <map>
#include <string>
#include <vector>

#include "Eigen/Dense"
#include "formats/interval.h"

namespace diar {

// Conversational domain of a recording.  Enum order is the canonical order
// and serves as the formal last-resort tie break everywhere.
enum class DomainLabel {
  kAudiobooks,
  kBroadcastInterview,
  kClinical,
  kCourt,
  kCts,
  kMaptask,
  kMeeting,
  kRestaurant,
  kSocioField,
  kSocioLab,
  kWebvideo,
};

inline constexpr int kNumDomains = 11;

// All labels in enum order.
const std::vector<DomainLabel> &AllDomains();

// Canonical upper-case name, e.g. "BROADCAST_INTERVIEW".
std::string DomainLabelName(DomainLabel domain);

// Inverse of DomainLabelName.  Throws UnknownDomain for anything else.
DomainLabel ParseDomainLabel(const std::string &name);

// Which front end a session is processed with.
enum class RouteStrategy {
  kClusteringOnly,
  kSingleSpeakerSad,
  kIss,
  kItsVad,
};

std::string RouteStrategyName(RouteStrategy strategy);

// Inverse of RouteStrategyName.  Throws ConfigInvalid for anything else.
RouteStrategy ParseRouteStrategy(const std::string &name);

// Per-domain processing decision.  iteration_count is the number of
// refinement stages and must be 0 unless the strategy iterates.
struct RoutePlan {
  RouteStrategy strategy = RouteStrategy::kClusteringOnly;
  int iteration_count = 0;
  std::vector<std::string> fusion_members;

  bool operator==(const RoutePlan &other) const = default;
};

using RouteTable = std::map<DomainLabel, RoutePlan>;

// Cuts [0, duration) into consecutive fixed-length chunks.  A final partial
// chunk shorter than chunk/2 is merged into the previous one; a session
// shorter than chunk/2 still yields its single partial chunk.  The result
// tiles [0, duration) exactly.  Throws ConfigInvalid unless
// duration > 0 and chunk > 0.
std::vector<TimeInterval> ChunkSession(double duration, double chunk = 10.0);

// Session-level label from per-chunk predictions: the plurality label; on a
// count tie, the tied label whose winning count was completed at the
// earliest chunk index; then enum order.  Appending one more copy of the
// winner, or of any single non-winning label, never changes the winner.
// Throws EmptyPredictions.
DomainLabel VoteSessionDomain(const std::vector<DomainLabel> &predictions);

// Looks up the plan for a domain.  Throws UnknownDomain when the table has
// no entry, ConfigInvalid when the stored plan is malformed (negative
// iteration count, or iterations on a non-iterating strategy).
RoutePlan Route(DomainLabel domain, const RouteTable &table);

// Covers all 11 domains: RESTAURANT and WEBVIDEO keep the plain clustering
// output, AUDIOBOOKS is single-speaker so only speech detection runs, CTS
// runs two-stage separation, everything else one round of iterative
// activity-model refinement.
RouteTable DefaultRouteTable();

// Chunk-level domain classifier interface.  Implementations must be pure
// and deterministic.
class DomainClassifier {
 public:
  virtual ~DomainClassifier() = default;
  virtual DomainLabel Classify(const Eigen::VectorXd &features) const = 0;
};

// Desk-scale default classifier: per-label mean feature vector, predict by
// nearest centroid (squared Euclidean), distance ties broken by enum order.
class NearestCentroidClassifier : public DomainClassifier {
 public:
  // Replaces the model with per-label means of the examples.  Throws
  // ConfigInvalid on an empty list or inconsistent feature dimensions.
  void Fit(const std::vector<std::pair<DomainLabel, Eigen::VectorXd>> &examples);

  // Throws ConfigInvalid before Fit or on a dimension mismatch.
  DomainLabel Classify(const Eigen::VectorXd &features) const override;

  const std::map<DomainLabel, Eigen::VectorXd> &centroids() const {
    return centroids_;
  }

 private:
  std::map<DomainLabel, Eigen::VectorXd> centroids_;
};

// Summary of the per-frame energies whose frame midpoint falls inside the
// chunk: mean, standard deviation, minimum, maximum, mean absolute
// successive difference.  A chunk containing no frame midpoints yields the
// zero vector.  Throws ConfigInvalid unless frame_step > 0.
Eigen::VectorXd ChunkFeatures(const std::vector<double> &frame_energy,
                              const TimeInterval &chunk, double frame_step);

// Chunks the session, classifies each chunk from its energy statistics and
// votes.  Throws ConfigInvalid on bad durations (via ChunkSession) and
// whatever the classifier throws.
DomainLabel ClassifySession(const DomainClassifier &classifier,
                            const std::vector<double> &frame_energy,
                            double frame_step, double duration,
                            double chunk = 10.0);

}  // namespace diar

#endif  // DIARPIPE_DOMAINROUTE_DOMAINROUTE_H_
