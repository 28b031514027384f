// clustering/pca.cc

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

#include "clustering/pca.h"

#include "base/error.h"

namespace diar {

SessionPca ConversationPca(const std::vector<Embedding> &embeddings,
                           double target_energy) {
  if (embeddings.size() < 2)
    throw DegenerateCovariance(
        "need at least 2 embeddings for a session covariance");
  if (target_energy <= 0.0)
    throw ConfigInvalid("target energy must be positive");
  const int d = embeddings[0].dim();
  for (const Embedding &e : embeddings)
    if (e.dim() != d)
      throw DimensionMismatch("embeddings have mixed dimensions");

  const int n = static_cast<int>(embeddings.size());
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i) x.row(i) = embeddings[i].vector.transpose();
  Eigen::VectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean.transpose();
  Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n);

  // Ascending from Eigen; flip to descending.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  Eigen::VectorXd values = eig.eigenvalues().reverse();
  Eigen::MatrixXd vectors = eig.eigenvectors().rowwise().reverse();

  SessionPca out;
  out.mean = mean;
  out.eigenvalues = values;

  double total = 0.0;
  for (int i = 0; i < d; ++i) total += std::max(values[i], 0.0);
  if (total <= 1e-12) {
    // All embeddings numerically identical: keep one component.
    out.kept = 1;
  } else if (target_energy >= 1.0) {
    out.kept = d;
  } else {
    double acc = 0.0;
    out.kept = d;
    for (int i = 0; i < d; ++i) {
      acc += std::max(values[i], 0.0);
      if (acc >= target_energy * total - 1e-12) {
        out.kept = i + 1;
        break;
      }
    }
  }

  out.basis = vectors.leftCols(out.kept);
  out.projected.reserve(n);
  for (const Embedding &e : embeddings) {
    Embedding p;
    p.recording_id = e.recording_id;
    p.source_interval = e.source_interval;
    p.vector = out.basis.transpose() * (e.vector - mean);
    out.projected.push_back(std::move(p));
  }
  return out;
}

PldaModel ProjectPldaModel(const PldaModel &model, const SessionPca &pca) {
  if (model.dim() != pca.basis.rows())
    throw DimensionMismatch("model dimension does not match projection");
  PldaModel out;
  out.mean = pca.basis.transpose() * (model.mean - pca.mean);
  out.between_cov = pca.basis.transpose() * model.between_cov * pca.basis;
  out.within_cov = pca.basis.transpose() * model.within_cov * pca.basis;
  return out;
}

}  // namespace diar
