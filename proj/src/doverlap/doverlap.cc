// doverlap/doverlap.cc

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

#include "doverlap/doverlap.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <Eigen/Dense>

#include "base/error.h"
#include "metrics/assignment.h"
#include "metrics/score.h"

namespace diar {

namespace {

// Active membership test against a coalesced interval list.
bool ActiveAt(const IntervalList &intervals, double t) {
  for (const TimeInterval &iv : intervals) {
    if (iv.onset > t) break;
    if (iv.Contains(t)) return true;
  }
  return false;
}

// Per-speaker coalesced speech for one recording of one system.
std::map<std::string, IntervalList> SpeechBySpeaker(
    const RttmDocument &doc, const std::string &recording_id) {
  std::map<std::string, IntervalList> result;
  for (const std::string &spk : doc.SpeakersFor(recording_id))
    result[spk] = doc.SpeakerSpeech(recording_id, spk);
  return result;
}

std::string FreshId(const std::string &wanted,
                    const std::set<std::string> &taken) {
  if (taken.count(wanted) == 0) return wanted;
  int suffix = 2;
  while (true) {
    std::string candidate = wanted + "_" + std::to_string(suffix);
    if (taken.count(candidate) == 0) return candidate;
    ++suffix;
  }
}

}  // namespace

double RoundCount(double value, CountRounding rule) {
  switch (rule) {
    case CountRounding::kFloor:
      return std::floor(value);
    case CountRounding::kCeil:
      return std::ceil(value);
    case CountRounding::kNearestEven:
      break;
  }
  double base = std::floor(value);
  double frac = value - base;
  if (frac > 0.5) return base + 1.0;
  if (frac < 0.5) return base;
  return std::fmod(base, 2.0) == 0.0 ? base : base + 1.0;
}

std::vector<double> RankSystems(const std::vector<SystemHypothesis> &hyps,
                                const UemDocument &uem,
                                const FusionConfig &config) {
  size_t n = hyps.size();
  if (n < 2) throw TooFewSystems("need at least 2 systems to rank");
  if (!std::isfinite(config.rank_exponent) || config.rank_exponent < 0.0)
    throw ConfigInvalid("rank_exponent must be finite and >= 0");
  std::set<std::string> names;
  for (const SystemHypothesis &hyp : hyps)
    if (!names.insert(hyp.name).second)
      throw ConfigInvalid("duplicate system name: " + hyp.name);

  size_t with_weight = 0;
  for (const SystemHypothesis &hyp : hyps)
    if (hyp.weight.has_value()) ++with_weight;
  if (with_weight == n) {
    double sum = 0.0;
    for (const SystemHypothesis &hyp : hyps) {
      if (*hyp.weight < 0.0)
        throw ConfigInvalid("negative weight for system " + hyp.name);
      sum += *hyp.weight;
    }
    if (sum <= 0.0) throw ConfigInvalid("explicit weights sum to zero");
    std::vector<double> weights;
    for (const SystemHypothesis &hyp : hyps) weights.push_back(*hyp.weight / sum);
    return weights;
  }
  if (with_weight != 0)
    throw ConfigInvalid("weights must be given for all systems or none");

  // Mean error against every other system as pseudo-reference.
  std::vector<double> mean_der(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      mean_der[i] += ScoreDer(hyps[j].doc, hyps[i].doc, uem).der_pct;
    }
    mean_der[i] /= static_cast<double>(n - 1);
  }

  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (mean_der[a] != mean_der[b]) return mean_der[a] < mean_der[b];
    return hyps[a].name < hyps[b].name;
  });
  // Competition ranking: exact score ties share the lowest rank of the run.
  std::vector<int> rank(n, 0);
  for (size_t k = 0; k < n; ++k) {
    if (k > 0 && mean_der[order[k]] == mean_der[order[k - 1]])
      rank[order[k]] = rank[order[k - 1]];
    else
      rank[order[k]] = static_cast<int>(k) + 1;
  }

  std::vector<double> weights(n, 0.0);
  double sum = 0.0;
  for (size_t i = 0; i < n; ++i) {
    weights[i] = std::pow(static_cast<double>(rank[i]), -config.rank_exponent);
    sum += weights[i];
  }
  for (double &w : weights) w /= sum;
  return weights;
}

std::vector<SystemHypothesis> MapLabels(
    const std::vector<SystemHypothesis> &hyps) {
  if (hyps.size() < 2) throw TooFewSystems("need at least 2 systems to map");

  // Per recording: accumulated speech per global speaker, and taken names.
  std::map<std::string, std::map<std::string, IntervalList>> global;
  std::map<std::string, std::set<std::string>> taken;

  std::vector<SystemHypothesis> result;
  for (size_t k = 0; k < hyps.size(); ++k) {
    const SystemHypothesis &hyp = hyps[k];
    // Per (recording, speaker) target label for this system.
    std::map<std::string, std::map<std::string, std::string>> target;
    for (const std::string &rec : hyp.doc.Recordings()) {
      std::map<std::string, IntervalList> own = SpeechBySpeaker(hyp.doc, rec);
      std::map<std::string, IntervalList> &seen = global[rec];
      std::set<std::string> &used = taken[rec];

      std::vector<std::string> own_names, global_names;
      for (const auto &entry : own) own_names.push_back(entry.first);
      for (const auto &entry : seen) global_names.push_back(entry.first);

      std::vector<int> match(own_names.size(), -1);
      if (!global_names.empty() && k > 0) {
        Eigen::MatrixXd overlap(own_names.size(), global_names.size());
        for (size_t s = 0; s < own_names.size(); ++s)
          for (size_t g = 0; g < global_names.size(); ++g)
            overlap(static_cast<int>(s), static_cast<int>(g)) = TotalDuration(
                IntervalIntersection(own.at(own_names[s]),
                                     seen.at(global_names[g])));
        match = MaxWeightAssignment(overlap);
      }

      for (size_t s = 0; s < own_names.size(); ++s) {
        std::string label = match[s] >= 0 ? global_names[match[s]]
                                          : FreshId(own_names[s], used);
        target[rec][own_names[s]] = label;
        used.insert(label);
        IntervalList merged = seen[label];
        const IntervalList &add = own.at(own_names[s]);
        merged.insert(merged.end(), add.begin(), add.end());
        seen[label] = Coalesce(std::move(merged));
      }
    }

    std::vector<Turn> turns;
    for (const Turn &turn : hyp.doc.turns())
      turns.emplace_back(turn.recording_id,
                         target.at(turn.recording_id).at(turn.speaker_id),
                         turn.interval);
    SystemHypothesis mapped;
    mapped.name = hyp.name;
    mapped.doc = RttmDocument(std::move(turns));
    mapped.weight = hyp.weight;
    result.push_back(std::move(mapped));
  }
  return result;
}

RttmDocument DoverlapFuse(const std::vector<SystemHypothesis> &hyps,
                          const std::vector<double> &weights,
                          const FusionConfig &config) {
  if (weights.size() != hyps.size())
    throw UnnormalizedWeights("weight count does not match system count");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw UnnormalizedWeights("negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-6)
    throw UnnormalizedWeights("weights sum to " + std::to_string(sum));

  std::set<std::string> recordings;
  for (const SystemHypothesis &hyp : hyps)
    for (const std::string &rec : hyp.doc.Recordings()) recordings.insert(rec);

  std::vector<Turn> fused;
  for (const std::string &rec : recordings) {
    std::vector<std::map<std::string, IntervalList>> speech;
    std::vector<double> boundaries;
    for (const SystemHypothesis &hyp : hyps) {
      speech.push_back(SpeechBySpeaker(hyp.doc, rec));
      for (const auto &entry : speech.back())
        for (const TimeInterval &iv : entry.second) {
          boundaries.push_back(iv.onset);
          boundaries.push_back(iv.offset);
        }
    }
    std::sort(boundaries.begin(), boundaries.end());
    boundaries.erase(std::unique(boundaries.begin(), boundaries.end()),
                     boundaries.end());

    std::map<std::string, IntervalList> out;
    for (size_t b = 0; b + 1 < boundaries.size(); ++b) {
      double onset = boundaries[b], offset = boundaries[b + 1];
      if (offset <= onset) continue;
      double mid = 0.5 * (onset + offset);

      double estimate = 0.0;
      std::map<std::string, double> votes;
      for (size_t i = 0; i < hyps.size(); ++i) {
        int count = 0;
        for (const auto &entry : speech[i])
          if (ActiveAt(entry.second, mid)) {
            ++count;
            votes[entry.first] += weights[i];
          }
        estimate += weights[i] * count;
      }
      int want = static_cast<int>(RoundCount(estimate, config.rounding));
      if (want <= 0) continue;

      std::vector<std::pair<std::string, double>> ranked(votes.begin(),
                                                         votes.end());
      std::sort(ranked.begin(), ranked.end(),
                [](const auto &a, const auto &b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
                });
      if (want > static_cast<int>(ranked.size()))
        want = static_cast<int>(ranked.size());
      for (int s = 0; s < want; ++s)
        out[ranked[s].first].emplace_back(onset, offset);
    }

    for (auto &entry : out)
      for (const TimeInterval &iv : Coalesce(entry.second))
        fused.emplace_back(rec, entry.first, iv);
  }
  return RttmDocument(std::move(fused));
}

}  // namespace diar
