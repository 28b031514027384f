// clustering/session.h

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

#ifndef DIARPIPE_CLUSTERING_SESSION_H_
#define DIARPIPE_CLUSTERING_SESSION_H_

#include <vector>

#include "clustering/ahc.h"
#include "clustering/bhmm.h"
#include "clustering/embedding.h"
#include "clustering/plda.h"
#include "formats/rttm.h"

namespace diar {

struct ClusterSessionReport {
  int pca_kept = 0;
  int ahc_clusters = 0;
  int final_clusters = 0;
};

// Full clustering pass over one recording's embeddings: session projection,
// in/out-domain scoring with interpolation weight alpha, agglomeration, HMM
// resegmentation, then labels mapped back to the source intervals (speakers
// "spk0", "spk1", ...).  Throws EmptyInput, RecordingMismatch, plus stage
// errors.
RttmDocument ClusterSession(const std::vector<Embedding> &embeddings,
                            const PldaModel &in_plda,
                            const PldaModel &out_plda,
                            const AhcConfig &ahc_cfg,
                            const BhmmConfig &bhmm_cfg, double alpha,
                            ClusterSessionReport *report = nullptr);

}  // namespace diar

#endif  // DIARPIPE_CLUSTERING_SESSION_H_
