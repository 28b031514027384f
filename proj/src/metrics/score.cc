// metrics/score.cc

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

#include "metrics/score.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "base/error.h"
#include "metrics/assignment.h"

namespace diar {

namespace {

constexpr double kTimeEps = 1e-12;

// One atomic scoring region: duration and the active speaker index sets.
struct Region {
  double duration = 0.0;
  std::vector<int> ref_active;
  std::vector<int> hyp_active;
};

struct RecordingRegions {
  std::vector<std::string> ref_speakers;
  std::vector<std::string> hyp_speakers;
  std::vector<Region> regions;
};

// Cuts the scored timeline of one recording into atomic regions on which the
// active reference and hypothesis speaker sets are constant.
RecordingRegions CutRegions(const RttmDocument &ref, const RttmDocument &hyp,
                            const std::string &recording_id,
                            const IntervalList &uem_regions, double collar,
                            bool score_overlap) {
  RecordingRegions out;
  out.ref_speakers = ref.SpeakersFor(recording_id);
  out.hyp_speakers = hyp.SpeakersFor(recording_id);

  std::vector<Turn> ref_turns = ref.TurnsFor(recording_id);
  std::vector<Turn> hyp_turns = hyp.TurnsFor(recording_id);

  IntervalList scored = uem_regions;
  if (collar > 0.0) {
    IntervalList zones;
    for (const Turn &t : ref_turns) {
      zones.emplace_back(t.interval.onset - collar, t.interval.onset + collar);
      zones.emplace_back(t.interval.offset - collar,
                         t.interval.offset + collar);
    }
    scored = IntervalDifference(scored, Coalesce(zones));
  }
  if (scored.empty()) return out;

  std::vector<double> cuts;
  for (const TimeInterval &iv : scored) {
    cuts.push_back(iv.onset);
    cuts.push_back(iv.offset);
  }
  for (const Turn &t : ref_turns) {
    cuts.push_back(t.interval.onset);
    cuts.push_back(t.interval.offset);
  }
  for (const Turn &t : hyp_turns) {
    cuts.push_back(t.interval.onset);
    cuts.push_back(t.interval.offset);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto speaker_index = [](const std::vector<std::string> &speakers,
                          const std::string &id) {
    return static_cast<int>(std::lower_bound(speakers.begin(), speakers.end(),
                                             id) -
                            speakers.begin());
  };

  size_t scored_idx = 0;
  for (size_t c = 0; c + 1 < cuts.size(); ++c) {
    double t0 = cuts[c], t1 = cuts[c + 1];
    if (t1 - t0 <= kTimeEps) continue;
    double mid = 0.5 * (t0 + t1);
    while (scored_idx < scored.size() && scored[scored_idx].offset <= mid)
      ++scored_idx;
    if (scored_idx >= scored.size() || mid < scored[scored_idx].onset)
      continue;

    Region region;
    region.duration = t1 - t0;
    for (const Turn &t : ref_turns)
      if (t.interval.Contains(mid))
        region.ref_active.push_back(
            speaker_index(out.ref_speakers, t.speaker_id));
    for (const Turn &t : hyp_turns)
      if (t.interval.Contains(mid))
        region.hyp_active.push_back(
            speaker_index(out.hyp_speakers, t.speaker_id));
    std::sort(region.ref_active.begin(), region.ref_active.end());
    region.ref_active.erase(
        std::unique(region.ref_active.begin(), region.ref_active.end()),
        region.ref_active.end());
    std::sort(region.hyp_active.begin(), region.hyp_active.end());
    region.hyp_active.erase(
        std::unique(region.hyp_active.begin(), region.hyp_active.end()),
        region.hyp_active.end());

    if (!score_overlap && region.ref_active.size() > 1) continue;
    out.regions.push_back(std::move(region));
  }
  return out;
}

}  // namespace

DerBreakdown ScoreDer(const RttmDocument &ref, const RttmDocument &hyp,
                      const UemDocument &uem, double collar,
                      bool score_overlap) {
  if (collar < 0.0) throw DiarError("collar must be nonnegative");
  for (const std::string &rec : hyp.Recordings())
    if (!uem.Has(rec))
      throw UnknownRecording("hypothesis recording not in scoring regions: " +
                             rec);

  DerBreakdown out;
  double miss_time = 0.0, fa_time = 0.0, spkerr_time = 0.0, ref_time = 0.0;

  for (const auto &[rec, regions_for_rec] : uem.regions()) {
    RecordingRegions cut =
        CutRegions(ref, hyp, rec, regions_for_rec, collar, score_overlap);
    const int num_ref = static_cast<int>(cut.ref_speakers.size());
    const int num_hyp = static_cast<int>(cut.hyp_speakers.size());

    // Correctly attributable time per (ref, hyp) speaker pair.
    Eigen::MatrixXd co_time = Eigen::MatrixXd::Zero(num_ref, num_hyp);
    for (const Region &region : cut.regions)
      for (int r : region.ref_active)
        for (int h : region.hyp_active) co_time(r, h) += region.duration;

    std::vector<int> ref_to_hyp = MaxWeightAssignment(co_time);
    for (int r = 0; r < num_ref; ++r)
      if (ref_to_hyp[r] >= 0)
        out.speaker_map[{rec, cut.ref_speakers[r]}] =
            cut.hyp_speakers[ref_to_hyp[r]];

    for (const Region &region : cut.regions) {
      const double d = region.duration;
      const int nr = static_cast<int>(region.ref_active.size());
      const int nh = static_cast<int>(region.hyp_active.size());
      int matched = 0;
      for (int r : region.ref_active) {
        int h = ref_to_hyp[r];
        if (h >= 0 && std::binary_search(region.hyp_active.begin(),
                                         region.hyp_active.end(), h))
          ++matched;
      }
      miss_time += d * std::max(nr - nh, 0);
      fa_time += d * std::max(nh - nr, 0);
      spkerr_time += d * (std::min(nr, nh) - matched);
      ref_time += d * nr;
    }
  }

  if (ref_time <= kTimeEps)
    throw EmptyReferenceSpeech("no reference speaker time in scored regions");

  out.scored_speaker_time = ref_time;
  out.miss_pct = 100.0 * miss_time / ref_time;
  out.fa_pct = 100.0 * fa_time / ref_time;
  out.spkerr_pct = 100.0 * spkerr_time / ref_time;
  out.der_pct = out.miss_pct + out.fa_pct + out.spkerr_pct;
  return out;
}

JerResult ScoreJer(const RttmDocument &ref, const RttmDocument &hyp,
                   const UemDocument &uem) {
  DerBreakdown der = ScoreDer(ref, hyp, uem, 0.0, true);

  JerResult out;
  double sum = 0.0;
  for (const auto &[rec, uem_regions] : uem.regions()) {
    for (const std::string &spk : ref.SpeakersFor(rec)) {
      IntervalList ref_speech =
          IntervalIntersection(ref.SpeakerSpeech(rec, spk), uem_regions);
      if (TotalDuration(ref_speech) <= kTimeEps) continue;
      double per = 100.0;
      auto it = der.speaker_map.find({rec, spk});
      if (it != der.speaker_map.end()) {
        IntervalList hyp_speech = IntervalIntersection(
            hyp.SpeakerSpeech(rec, it->second), uem_regions);
        double inter =
            TotalDuration(IntervalIntersection(ref_speech, hyp_speech));
        double uni = TotalDuration(IntervalUnion(ref_speech, hyp_speech));
        per = 100.0 * (1.0 - inter / uni);
      }
      out.per_speaker[{rec, spk}] = per;
      sum += per;
    }
  }
  if (out.per_speaker.empty())
    throw EmptyReferenceSpeech("no reference speaker time in scored regions");
  out.jer_pct = sum / static_cast<double>(out.per_speaker.size());
  return out;
}

SadError ScoreSad(const RttmDocument &ref, const RttmDocument &hyp_speech,
                  const UemDocument &uem) {
  double uem_total = uem.TotalDurationAll();
  if (uem.regions().empty() || uem_total <= kTimeEps)
    throw EmptyUem("scoring regions are empty");

  double miss_time = 0.0, fa_time = 0.0;
  for (const auto &[rec, uem_regions] : uem.regions()) {
    IntervalList ref_sp =
        IntervalIntersection(ref.RecordingSpeech(rec), uem_regions);
    IntervalList hyp_sp =
        IntervalIntersection(hyp_speech.RecordingSpeech(rec), uem_regions);
    miss_time += TotalDuration(IntervalDifference(ref_sp, hyp_sp));
    fa_time += TotalDuration(IntervalDifference(hyp_sp, ref_sp));
  }

  SadError out;
  out.miss_pct = 100.0 * miss_time / uem_total;
  out.fa_pct = 100.0 * fa_time / uem_total;
  out.total_pct = out.miss_pct + out.fa_pct;
  return out;
}

}  // namespace diar
