// postproc/postproc.cc

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

#include "postproc/postproc.h"

#include <algorithm>
#include <utility>

#include "base/error.h"

namespace diar {

RttmDocument AssignLaughter(const RttmDocument &diar,
                            const std::vector<TokenAnnotation> &tokens,
                            const LaughterConfig &config,
                            LaughterReport *report) {
  LaughterReport counts;

  // Token spans per recording; subtracted from the evidence so that turns
  // added for one token can never recruit speakers for another.
  std::map<std::string, IntervalList> token_union;
  for (const TokenAnnotation &token : tokens)
    if (token.token == config.token)
      token_union[token.recording_id].push_back(token.interval);
  for (auto &[rec, list] : token_union) list = Coalesce(std::move(list));

  std::vector<Turn> turns = diar.turns();
  for (const TokenAnnotation &token : tokens) {
    if (token.token != config.token) continue;
    const std::string &rec = token.recording_id;
    const IntervalList window = {
        TimeInterval(token.interval.onset - config.neighborhood,
                     token.interval.offset + config.neighborhood)};
    bool assigned = false;
    for (const std::string &speaker : diar.SpeakersFor(rec)) {
      IntervalList evidence = IntervalDifference(
          diar.SpeakerSpeech(rec, speaker), token_union[rec]);
      if (TotalDuration(IntervalIntersection(evidence, window)) <= 0.0)
        continue;
      turns.emplace_back(rec, speaker, token.interval);
      assigned = true;
      ++counts.added_turns;
    }
    if (assigned)
      ++counts.assigned_tokens;
    else
      ++counts.orphan_tokens;
  }

  if (report != nullptr) *report = counts;
  return RttmDocument(std::move(turns));
}

std::map<std::string, PerDomainDer> PerDomainScores(
    const std::map<std::string, RttmDocument> &candidates,
    const RttmDocument &dev_ref, const UemDocument &dev_uem,
    const DomainMap &domain_of) {
  std::map<DomainLabel, std::vector<std::string>> members;
  for (const auto &[rec, domain] : domain_of) members[domain].push_back(rec);

  auto restrict = [](const RttmDocument &doc,
                     const std::vector<std::string> &recs) {
    std::vector<Turn> turns;
    for (const std::string &rec : recs)
      for (const Turn &turn : doc.TurnsFor(rec)) turns.push_back(turn);
    return RttmDocument(std::move(turns));
  };

  std::map<std::string, PerDomainDer> scores;
  for (const auto &[domain, recs] : members) {
    std::map<std::string, IntervalList> regions;
    for (const std::string &rec : recs)
      if (dev_uem.Has(rec)) regions[rec] = dev_uem.RegionsFor(rec);
    UemDocument uem(std::move(regions));
    RttmDocument ref = restrict(dev_ref, recs);
    for (const auto &[name, doc] : candidates)
      scores[name][domain] = ScoreDer(ref, restrict(doc, recs), uem);
  }
  return scores;
}

RttmDocument SelectPerDomain(
    const std::map<std::string, RttmDocument> &candidates,
    const std::map<std::string, PerDomainDer> &dev_scores,
    const DomainMap &domain_of, SelectionManifest *manifest) {
  std::map<DomainLabel, std::vector<std::string>> members;
  for (const auto &[rec, domain] : domain_of) members[domain].push_back(rec);

  SelectionManifest chosen;
  for (const auto &[domain, recs] : members) {
    const std::string *best = nullptr;
    double best_der = 0.0;
    // dev_scores iterates in name order, so strict < is the name tie break.
    for (const auto &[name, per_domain] : dev_scores) {
      auto it = per_domain.find(domain);
      if (it == per_domain.end()) continue;
      if (best == nullptr || it->second.der_pct < best_der) {
        best = &name;
        best_der = it->second.der_pct;
      }
    }
    if (best == nullptr)
      throw ConfigInvalid("no dev score for domain " + DomainLabelName(domain));
    chosen[domain] = DomainChoice{*best, best_der};
  }

  std::vector<Turn> turns;
  for (const auto &[domain, choice] : chosen) {
    auto cand = candidates.find(choice.system);
    if (cand == candidates.end())
      throw ConfigInvalid("selected system " + choice.system +
                          " has no candidate document");
    for (const std::string &rec : members[domain]) {
      if (!cand->second.HasRecording(rec))
        throw UncoveredRecording("recording " + rec + " missing from " +
                                 choice.system);
      for (const Turn &turn : cand->second.TurnsFor(rec))
        turns.push_back(turn);
    }
  }

  if (manifest != nullptr) *manifest = std::move(chosen);
  return RttmDocument(std::move(turns));
}

}  // namespace diar
