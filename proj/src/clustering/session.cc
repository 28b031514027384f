// clustering/session.cc

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

#include "clustering/session.h"

#include <algorithm>
#include <map>

#include "base/error.h"
#include "clustering/pca.h"

namespace diar {

RttmDocument ClusterSession(const std::vector<Embedding> &embeddings,
                            const PldaModel &in_plda,
                            const PldaModel &out_plda,
                            const AhcConfig &ahc_cfg,
                            const BhmmConfig &bhmm_cfg, double alpha,
                            ClusterSessionReport *report) {
  if (embeddings.empty()) throw EmptyInput("no embeddings for session");
  const std::string &rec = embeddings[0].recording_id;
  for (const Embedding &e : embeddings)
    if (e.recording_id != rec)
      throw RecordingMismatch("session spans multiple recordings");

  std::vector<Embedding> ordered(embeddings);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Embedding &a, const Embedding &b) {
                     if (a.source_interval.onset != b.source_interval.onset)
                       return a.source_interval.onset < b.source_interval.onset;
                     return a.source_interval.offset < b.source_interval.offset;
                   });

  ClusterLabels labels;
  int pca_kept = 0;
  int ahc_clusters = 0;
  if (ordered.size() == 1) {
    labels.assignment = {0};
    labels.num_clusters = 1;
    pca_kept = ordered[0].dim();
    ahc_clusters = 1;
  } else {
    SessionPca pca = ConversationPca(ordered, ahc_cfg.target_energy);
    pca_kept = pca.kept;
    PldaModel in_proj = ProjectPldaModel(in_plda, pca);
    PldaModel out_proj = ProjectPldaModel(out_plda, pca);
    Eigen::MatrixXd scores = InterpolatePldaScores(
        PldaScoreMatrix(in_proj, pca.projected),
        PldaScoreMatrix(out_proj, pca.projected), alpha);
    ClusterLabels initial = Ahc(scores, ahc_cfg);
    ahc_clusters = initial.num_clusters;
    labels = BhmmResegment(pca.projected, in_proj, initial, bhmm_cfg).labels;
  }

  if (report != nullptr) {
    report->pca_kept = pca_kept;
    report->ahc_clusters = ahc_clusters;
    report->final_clusters = labels.num_clusters;
  }

  std::map<int, IntervalList> by_label;
  for (size_t t = 0; t < ordered.size(); ++t)
    by_label[labels.assignment[t]].push_back(ordered[t].source_interval);
  std::vector<Turn> turns;
  for (const auto &[label, intervals] : by_label)
    for (const TimeInterval &iv : Coalesce(intervals))
      turns.emplace_back(rec, "spk" + std::to_string(label), iv);
  return RttmDocument(std::move(turns));
}

}  // namespace diar
