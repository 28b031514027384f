// clustering/pca.h

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

#ifndef DIARPIPE_CLUSTERING_PCA_H_
#define DIARPIPE_CLUSTERING_PCA_H_

#include <vector>

#include <Eigen/Dense>

#include "clustering/embedding.h"
#include "clustering/plda.h"

namespace diar {

// Session-dependent principal subspace.
struct SessionPca {
  Eigen::VectorXd mean;         // session mean, original space
  Eigen::MatrixXd basis;        // dim x kept, orthonormal columns
  Eigen::VectorXd eigenvalues;  // all dim values, descending
  int kept = 0;
  std::vector<Embedding> projected;
};

// Eigendecomposes the within-session covariance and keeps the smallest
// leading component set whose eigenvalue mass reaches target_energy of the
// total; embeddings are centered on the session mean and projected.
// target_energy >= 1 keeps every component.  All embeddings identical keeps
// one component by convention.  Throws DegenerateCovariance (< 2
// embeddings), DimensionMismatch.
SessionPca ConversationPca(const std::vector<Embedding> &embeddings,
                           double target_energy);

// Carries a model into the projected space: mean -> basis^T (mean - session
// mean), covariances -> basis^T C basis.
PldaModel ProjectPldaModel(const PldaModel &model, const SessionPca &pca);

}  // namespace diar

#endif  // DIARPIPE_CLUSTERING_PCA_H_
