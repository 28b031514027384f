// clustering/plda.cc

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

#include "clustering/plda.h"

#include <cmath>

#include "base/error.h"

namespace diar {

namespace {

void CheckSymmetric(const Eigen::MatrixXd &m, const char *what) {
  if (m.rows() != m.cols())
    throw NonSymmetricMatrix(std::string(what) + " is not square");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw NonSymmetricMatrix(std::string(what) + " is not symmetric");
}

double LogDetFromLlt(const Eigen::LLT<Eigen::MatrixXd> &llt) {
  return 2.0 * Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
}

}  // namespace

Eigen::MatrixXd PldaScoreMatrix(const PldaModel &model,
                                const std::vector<Embedding> &embeddings) {
  const int d = model.dim();
  if (model.between_cov.rows() != d || model.between_cov.cols() != d ||
      model.within_cov.rows() != d || model.within_cov.cols() != d)
    throw DimensionMismatch("model covariances do not match mean dimension");
  CheckSymmetric(model.within_cov, "within covariance");
  CheckSymmetric(model.between_cov, "between covariance");
  for (const Embedding &e : embeddings)
    if (e.dim() != d)
      throw DimensionMismatch("embedding dimension does not match model");

  Eigen::LLT<Eigen::MatrixXd> llt_w(model.within_cov);
  if (llt_w.info() != Eigen::Success)
    throw NonPositiveDefiniteWithin("within covariance is not positive "
                                    "definite");
  // total = between + within (different-speaker marginal); wide = within +
  // 2 between (sum-coordinate covariance of a same-speaker pair).
  Eigen::MatrixXd total = model.between_cov + model.within_cov;
  Eigen::MatrixXd wide = model.within_cov + 2.0 * model.between_cov;
  Eigen::LLT<Eigen::MatrixXd> llt_total(total);
  Eigen::LLT<Eigen::MatrixXd> llt_wide(wide);
  if (llt_total.info() != Eigen::Success || llt_wide.info() != Eigen::Success)
    throw NonPositiveDefiniteWithin(
        "between covariance is not positive semidefinite");

  const int n = static_cast<int>(embeddings.size());
  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(n, n);
  if (n == 0) return scores;

  Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd wide_inv = llt_wide.solve(eye);
  Eigen::MatrixXd within_inv = llt_w.solve(eye);
  Eigen::MatrixXd total_inv = llt_total.solve(eye);

  // Block inverse of the same-speaker pair covariance [[T, B], [B, T]]:
  // diagonal block 0.5 (wide_inv + within_inv), off block
  // 0.5 (wide_inv - within_inv); its log det is logdet(wide)
  // + logdet(within).
  Eigen::MatrixXd diag_block = 0.5 * (wide_inv + within_inv) - total_inv;
  Eigen::MatrixXd cross_block = 0.5 * (wide_inv - within_inv);
  double log_det_gap =
      LogDetFromLlt(llt_wide) + LogDetFromLlt(llt_w) -
      2.0 * LogDetFromLlt(llt_total);

  Eigen::MatrixXd phi(n, d);
  for (int i = 0; i < n; ++i)
    phi.row(i) = (embeddings[i].vector - model.mean).transpose();

  Eigen::VectorXd quad = (phi * diag_block).cwiseProduct(phi).rowwise().sum();
  Eigen::MatrixXd cross = phi * cross_block * phi.transpose();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      scores(i, j) = -0.5 * (quad[i] + quad[j]) - cross(i, j) -
                     0.5 * log_det_gap;
  // Exact symmetry despite summation order differences.
  scores = 0.5 * (scores + scores.transpose()).eval();
  return scores;
}

Eigen::MatrixXd InterpolatePldaScores(const Eigen::MatrixXd &in_domain,
                                      const Eigen::MatrixXd &out_domain,
                                      double alpha) {
  if (in_domain.rows() != out_domain.rows() ||
      in_domain.cols() != out_domain.cols())
    throw ShapeMismatch("score matrices have different shapes");
  if (alpha < 0.0 || alpha > 1.0)
    throw ConfigInvalid("interpolation weight must lie in [0,1]");
  return alpha * in_domain + (1.0 - alpha) * out_domain;
}

}  // namespace diar
