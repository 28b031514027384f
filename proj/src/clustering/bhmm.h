// clustering/bhmm.h

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

#ifndef DIARPIPE_CLUSTERING_BHMM_H_
#define DIARPIPE_CLUSTERING_BHMM_H_

#include <vector>

#include "clustering/ahc.h"
#include "clustering/embedding.h"
#include "clustering/plda.h"

namespace diar {

struct BhmmConfig {
  int max_iters = 7;
  double smoothing_factor = 4.0;
  int lda_dim = 512;
  double loop_probability = 0.99;
};

struct BhmmResult {
  ClusterLabels labels;
  // Tempered data log-likelihood recorded at each iteration's E step;
  // non-decreasing while no state is dropped.
  std::vector<double> objective;
  int iterations = 0;
};

// HMM resegmentation of a time-ordered embedding sequence.  Embeddings are
// whitened by the model's within covariance (and optionally projected to
// lda_dim); each initial cluster becomes a state with a spherical Gaussian
// emission at its mean, log-likelihoods divided by smoothing_factor.  Runs
// max_iters EM iterations (forward-backward E step, responsibility-weighted
// mean M step); states with under one frame of total responsibility are
// dropped.  Labels are the argmax marginal posterior, renumbered by first
// appearance.  Throws EmptyInput, LengthMismatch, DimensionMismatch,
// NonPositiveDefiniteWithin.
BhmmResult BhmmResegment(const std::vector<Embedding> &embeddings,
                         const PldaModel &model, const ClusterLabels &init,
                         const BhmmConfig &config);

}  // namespace diar

#endif  // DIARPIPE_CLUSTERING_BHMM_H_
