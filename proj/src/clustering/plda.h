// clustering/plda.h

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

#ifndef DIARPIPE_CLUSTERING_PLDA_H_
#define DIARPIPE_CLUSTERING_PLDA_H_

#include <vector>

#include <Eigen/Dense>

#include "clustering/embedding.h"

namespace diar {

// Two-covariance speaker model: x = mean + y + e with y ~ N(0, between_cov)
// and e ~ N(0, within_cov).
struct PldaModel {
  Eigen::VectorXd mean;
  Eigen::MatrixXd between_cov;
  Eigen::MatrixXd within_cov;

  int dim() const { return static_cast<int>(mean.size()); }
};

// Pairwise same-vs-different speaker log-likelihood ratios:
// entry (i,j) = log p(e_i, e_j | same) - log p(e_i, e_j | different).
// Symmetric; the diagonal is defined by the same formula and ignored by
// consumers.  Throws DimensionMismatch, NonSymmetricMatrix,
// NonPositiveDefiniteWithin.
Eigen::MatrixXd PldaScoreMatrix(const PldaModel &model,
                                const std::vector<Embedding> &embeddings);

// alpha * in_domain + (1 - alpha) * out_domain.  Throws ShapeMismatch.
Eigen::MatrixXd InterpolatePldaScores(const Eigen::MatrixXd &in_domain,
                                      const Eigen::MatrixXd &out_domain,
                                      double alpha);

}  // namespace diar

#endif  // DIARPIPE_CLUSTERING_PLDA_H_
