// postproc/postproc.h

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

#ifndef DIARPIPE_POSTPROC_POSTPROC_H_
#define DIARPIPE_POSTPROC_POSTPROC_H_

#include <map>
#include <string>
#include <vector>

#include "domainroute/domainroute.h"
#include "formats/rttm.h"
#include "metrics/score.h"

namespace diar {

struct LaughterConfig {
  // Speech within this many seconds of a token counts a speaker as a
  // neighbor.
  double neighborhood = 2.0;
  // Only annotations whose token equals this string are applied; others are
  // skipped silently.
  std::string token = "[laugh]";
};

struct LaughterReport {
  // Tokens that gained at least one speaker.
  int assigned_tokens = 0;
  // Tokens with no speaker in the neighborhood; these leave the output
  // unchanged.
  int orphan_tokens = 0;
  // Turns added before normalization, one per (token, neighbor) pair.
  int added_turns = 0;
};

// Gives each matching token's interval to every speaker with speech inside
// [onset - neighborhood, offset + neighborhood) on that recording.  The
// token intervals themselves never count as neighborhood evidence, so
// applying the same token set to the output again is a no-op.  Existing
// turns are never removed or shortened.
RttmDocument AssignLaughter(const RttmDocument &diar,
                            const std::vector<TokenAnnotation> &tokens,
                            const LaughterConfig &config = {},
                            LaughterReport *report = nullptr);

// recording id -> domain.
using DomainMap = std::map<std::string, DomainLabel>;

// domain -> dev-set error breakdown of one system.
using PerDomainDer = std::map<DomainLabel, DerBreakdown>;

// Scores each candidate against the dev reference once per domain: the
// recordings of one domain form one scoring unit (collar 0, overlap
// scored).  Only domains present in domain_of appear; recordings absent
// from domain_of are not scored.  Errors propagate from the scorer.
std::map<std::string, PerDomainDer> PerDomainScores(
    const std::map<std::string, RttmDocument> &candidates,
    const RttmDocument &dev_ref, const UemDocument &dev_uem,
    const DomainMap &domain_of);

struct DomainChoice {
  std::string system;
  double der_pct = 0.0;

  bool operator==(const DomainChoice &other) const = default;
};

// Which system supplied each domain, with its dev score.
using SelectionManifest = std::map<DomainLabel, DomainChoice>;

// Per domain, picks the candidate with the lowest dev DER (ties by system
// name) and composes the output from each recording's selected system.
// Recordings not listed in domain_of are dropped.  Throws ConfigInvalid
// when a domain has no scored candidate, UncoveredRecording when the
// selected system has no turns for one of its domain's recordings.
RttmDocument SelectPerDomain(
    const std::map<std::string, RttmDocument> &candidates,
    const std::map<std::string, PerDomainDer> &dev_scores,
    const DomainMap &domain_of, SelectionManifest *manifest = nullptr);

}  // namespace diar

#endif  // DIARPIPE_POSTPROC_POSTPROC_H_
