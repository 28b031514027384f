// domainroute/domainroute.cc

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

#include "domainroute/domainroute.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "base/error.h"

namespace diar {

namespace {

const char *const kDomainNames[kNumDomains] = {
    "AUDIOBOOKS", "BROADCAST_INTERVIEW", "CLINICAL",    "COURT",
    "CTS",        "MAPTASK",             "MEETING",     "RESTAURANT",
    "SOCIO_FIELD", "SOCIO_LAB",          "WEBVIDEO",
};

const char *const kStrategyNames[4] = {
    "CLUSTERING_ONLY",
    "SINGLE_SPEAKER_SAD",
    "ISS",
    "ITS_VAD",
};

bool Iterates(RouteStrategy strategy) {
  return strategy == RouteStrategy::kIss || strategy == RouteStrategy::kItsVad;
}

}  // namespace

const std::vector<DomainLabel> &AllDomains() {
  static const std::vector<DomainLabel> kAll = [] {
    std::vector<DomainLabel> all;
    for (int i = 0; i < kNumDomains; ++i)
      all.push_back(static_cast<DomainLabel>(i));
    return all;
  }();
  return kAll;
}

std::string DomainLabelName(DomainLabel domain) {
  return kDomainNames[static_cast<int>(domain)];
}

DomainLabel ParseDomainLabel(const std::string &name) {
  for (int i = 0; i < kNumDomains; ++i)
    if (name == kDomainNames[i]) return static_cast<DomainLabel>(i);
  throw UnknownDomain("not a domain label: \"" + name + "\"");
}

std::string RouteStrategyName(RouteStrategy strategy) {
  return kStrategyNames[static_cast<int>(strategy)];
}

RouteStrategy ParseRouteStrategy(const std::string &name) {
  for (int i = 0; i < 4; ++i)
    if (name == kStrategyNames[i]) return static_cast<RouteStrategy>(i);
  throw ConfigInvalid("not a route strategy: \"" + name + "\"");
}

std::vector<TimeInterval> ChunkSession(double duration, double chunk) {
  if (!(duration > 0.0)) throw ConfigInvalid("session duration must be > 0");
  if (!(chunk > 0.0)) throw ConfigInvalid("chunk length must be > 0");

  std::vector<TimeInterval> chunks;
  int full = static_cast<int>(std::floor(duration / chunk + 1e-9));
  double tail = duration - full * chunk;
  if (tail < 1e-9) tail = 0.0;
  for (int k = 0; k < full; ++k)
    chunks.emplace_back(k * chunk, (k + 1) * chunk);
  if (tail > 0.0 && (tail >= chunk / 2.0 || chunks.empty())) {
    chunks.emplace_back(full * chunk, duration);
  } else if (!chunks.empty()) {
    // Short tail: absorb it; zero tail: pin the end to duration exactly.
    chunks.back().offset = duration;
  }
  return chunks;
}

DomainLabel VoteSessionDomain(const std::vector<DomainLabel> &predictions) {
  if (predictions.empty())
    throw EmptyPredictions("no chunk predictions to vote over");

  std::map<DomainLabel, int> count;
  for (DomainLabel label : predictions) ++count[label];
  int best = 0;
  for (const auto &entry : count) best = std::max(best, entry.second);

  // Among tied labels, prefer the one that completed its winning count
  // first.  Completion indices are distinct, so the final enum-order break
  // (map order plus strict <) is formal only.
  DomainLabel winner = DomainLabel::kAudiobooks;
  int earliest = std::numeric_limits<int>::max();
  for (const auto &entry : count) {
    if (entry.second != best) continue;
    int seen = 0;
    int completed = -1;
    for (int i = 0; i < static_cast<int>(predictions.size()); ++i) {
      if (predictions[i] != entry.first) continue;
      if (++seen == best) {
        completed = i;
        break;
      }
    }
    if (completed < earliest) {
      earliest = completed;
      winner = entry.first;
    }
  }
  return winner;
}

RoutePlan Route(DomainLabel domain, const RouteTable &table) {
  auto it = table.find(domain);
  if (it == table.end())
    throw UnknownDomain("no route for " + DomainLabelName(domain));
  const RoutePlan &plan = it->second;
  if (plan.iteration_count < 0)
    throw ConfigInvalid("negative iteration count for " +
                        DomainLabelName(domain));
  if (plan.iteration_count != 0 && !Iterates(plan.strategy))
    throw ConfigInvalid("iterations on non-iterating strategy for " +
                        DomainLabelName(domain));
  return plan;
}

RouteTable DefaultRouteTable() {
  RouteTable table;
  for (DomainLabel domain : AllDomains())
    table[domain] = RoutePlan{RouteStrategy::kItsVad, 1, {}};
  table[DomainLabel::kRestaurant] = RoutePlan{RouteStrategy::kClusteringOnly, 0, {}};
  table[DomainLabel::kWebvideo] = RoutePlan{RouteStrategy::kClusteringOnly, 0, {}};
  table[DomainLabel::kAudiobooks] =
      RoutePlan{RouteStrategy::kSingleSpeakerSad, 0, {}};
  table[DomainLabel::kCts] = RoutePlan{RouteStrategy::kIss, 2, {}};
  return table;
}

void NearestCentroidClassifier::Fit(
    const std::vector<std::pair<DomainLabel, Eigen::VectorXd>> &examples) {
  if (examples.empty()) throw ConfigInvalid("no training examples");
  const Eigen::Index dim = examples.front().second.size();
  std::map<DomainLabel, Eigen::VectorXd> sums;
  std::map<DomainLabel, int> counts;
  for (const auto &[label, feature] : examples) {
    if (feature.size() != dim)
      throw ConfigInvalid("inconsistent feature dimensions");
    auto it = sums.find(label);
    if (it == sums.end())
      it = sums.emplace(label, Eigen::VectorXd::Zero(dim)).first;
    it->second += feature;
    ++counts[label];
  }
  centroids_.clear();
  for (auto &[label, sum] : sums) centroids_[label] = sum / counts[label];
}

DomainLabel NearestCentroidClassifier::Classify(
    const Eigen::VectorXd &features) const {
  if (centroids_.empty()) throw ConfigInvalid("classifier not fitted");
  DomainLabel best = centroids_.begin()->first;
  double best_dist = std::numeric_limits<double>::infinity();
  for (const auto &[label, centroid] : centroids_) {
    if (centroid.size() != features.size())
      throw ConfigInvalid("feature dimension mismatch");
    double dist = (features - centroid).squaredNorm();
    // Strict < keeps the smallest enum value on exact ties (map order).
    if (dist < best_dist) {
      best_dist = dist;
      best = label;
    }
  }
  return best;
}

Eigen::VectorXd ChunkFeatures(const std::vector<double> &frame_energy,
                              const TimeInterval &chunk, double frame_step) {
  if (!(frame_step > 0.0)) throw ConfigInvalid("frame step must be > 0");
  double sum = 0.0, sumsq = 0.0, diff = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  int n = 0;
  bool have_prev = false;
  double prev = 0.0;
  for (int i = 0; i < static_cast<int>(frame_energy.size()); ++i) {
    double mid = (i + 0.5) * frame_step;
    if (!chunk.Contains(mid)) {
      have_prev = false;
      continue;
    }
    double e = frame_energy[i];
    sum += e;
    sumsq += e * e;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    if (have_prev) diff += std::abs(e - prev);
    prev = e;
    have_prev = true;
    ++n;
  }
  Eigen::VectorXd features = Eigen::VectorXd::Zero(5);
  if (n == 0) return features;
  double mean = sum / n;
  double var = std::max(0.0, sumsq / n - mean * mean);
  features << mean, std::sqrt(var), lo, hi, n > 1 ? diff / (n - 1) : 0.0;
  return features;
}

DomainLabel ClassifySession(const DomainClassifier &classifier,
                            const std::vector<double> &frame_energy,
                            double frame_step, double duration, double chunk) {
  std::vector<DomainLabel> predictions;
  for (const TimeInterval &piece : ChunkSession(duration, chunk))
    predictions.push_back(
        classifier.Classify(ChunkFeatures(frame_energy, piece, frame_step)));
  return VoteSessionDomain(predictions);
}

}  // namespace diar
