// clustering/bhmm.cc

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

#include "clustering/bhmm.h"

#include <cmath>
#include <limits>

#include "base/error.h"

namespace diar {

namespace {

double LogSumExp(const Eigen::VectorXd &v) {
  double m = v.maxCoeff();
  if (!std::isfinite(m)) return m;
  return m + std::log((v.array() - m).exp().sum());
}

struct HmmState {
  Eigen::MatrixXd means;   // K x d
  double log_self = 0.0;
  double log_switch = 0.0;
};

// One forward-backward pass; returns the data log-likelihood and fills the
// marginal posteriors gamma (T x K).
double ForwardBackward(const Eigen::MatrixXd &phi, const HmmState &hmm,
                       double smoothing, Eigen::MatrixXd *gamma) {
  const int t_len = static_cast<int>(phi.rows());
  const int num_states = static_cast<int>(hmm.means.rows());

  Eigen::MatrixXd emis(t_len, num_states);
  for (int k = 0; k < num_states; ++k)
    emis.col(k) = -0.5 / smoothing *
                  (phi.rowwise() - hmm.means.row(k)).rowwise().squaredNorm();

  const double log_init = -std::log(static_cast<double>(num_states));
  Eigen::MatrixXd alpha(t_len, num_states), beta(t_len, num_states);
  alpha.row(0) = emis.row(0).array() + log_init;
  Eigen::VectorXd scratch(num_states);
  for (int t = 1; t < t_len; ++t) {
    for (int k = 0; k < num_states; ++k) {
      for (int j = 0; j < num_states; ++j)
        scratch[j] = alpha(t - 1, j) +
                     (j == k ? hmm.log_self : hmm.log_switch);
      alpha(t, k) = emis(t, k) + LogSumExp(scratch);
    }
  }
  double loglik = LogSumExp(alpha.row(t_len - 1));

  beta.row(t_len - 1).setZero();
  for (int t = t_len - 2; t >= 0; --t) {
    for (int j = 0; j < num_states; ++j) {
      for (int k = 0; k < num_states; ++k)
        scratch[k] = (j == k ? hmm.log_self : hmm.log_switch) +
                     emis(t + 1, k) + beta(t + 1, k);
      beta(t, j) = LogSumExp(scratch);
    }
  }

  gamma->resize(t_len, num_states);
  for (int t = 0; t < t_len; ++t)
    for (int k = 0; k < num_states; ++k)
      (*gamma)(t, k) = std::exp(alpha(t, k) + beta(t, k) - loglik);
  return loglik;
}

}  // namespace

BhmmResult BhmmResegment(const std::vector<Embedding> &embeddings,
                         const PldaModel &model, const ClusterLabels &init,
                         const BhmmConfig &config) {
  const int t_len = static_cast<int>(embeddings.size());
  if (t_len == 0) throw EmptyInput("no embeddings to resegment");
  if (static_cast<int>(init.assignment.size()) != t_len)
    throw LengthMismatch("initial labels do not match embedding count");
  if (init.num_clusters < 1) throw EmptyInput("initial labels are empty");
  if (config.max_iters < 1 || config.smoothing_factor <= 0.0 ||
      config.loop_probability <= 0.0 || config.loop_probability >= 1.0)
    throw ConfigInvalid("bad resegmentation parameters");
  const int d = model.dim();
  for (const Embedding &e : embeddings)
    if (e.dim() != d)
      throw DimensionMismatch("embedding dimension does not match model");

  Eigen::LLT<Eigen::MatrixXd> llt(model.within_cov);
  if (llt.info() != Eigen::Success)
    throw NonPositiveDefiniteWithin(
        "within covariance is not positive definite");

  // Whiten so within-speaker scatter is spherical.
  Eigen::MatrixXd phi(t_len, d);
  for (int t = 0; t < t_len; ++t)
    phi.row(t) =
        llt.matrixL().solve(embeddings[t].vector - model.mean).transpose();

  if (config.lda_dim < d) {
    Eigen::VectorXd mean = phi.colwise().mean();
    Eigen::MatrixXd centered = phi.rowwise() - mean.transpose();
    Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(t_len);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    Eigen::MatrixXd basis =
        eig.eigenvectors().rowwise().reverse().leftCols(config.lda_dim);
    phi = (centered * basis).eval();
  }
  const int p = static_cast<int>(phi.cols());

  // States from initial clusters.
  std::vector<int> state_ids(init.num_clusters);
  HmmState hmm;
  hmm.means = Eigen::MatrixXd::Zero(init.num_clusters, p);
  {
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(init.num_clusters);
    for (int t = 0; t < t_len; ++t) {
      hmm.means.row(init.assignment[t]) += phi.row(t);
      counts[init.assignment[t]] += 1.0;
    }
    for (int k = 0; k < init.num_clusters; ++k) {
      if (counts[k] > 0.0) hmm.means.row(k) /= counts[k];
      state_ids[k] = k;
    }
  }

  BhmmResult out;
  Eigen::MatrixXd gamma;
  for (int iter = 0; iter < config.max_iters; ++iter) {
    int num_states = static_cast<int>(hmm.means.rows());
    if (num_states > 1) {
      hmm.log_self = std::log(config.loop_probability);
      hmm.log_switch =
          std::log((1.0 - config.loop_probability) / (num_states - 1));
    } else {
      hmm.log_self = 0.0;
      hmm.log_switch = -std::numeric_limits<double>::infinity();
    }
    out.objective.push_back(
        ForwardBackward(phi, hmm, config.smoothing_factor, &gamma));

    Eigen::VectorXd occupancy = gamma.colwise().sum();
    std::vector<int> survivors;
    for (int k = 0; k < num_states; ++k)
      if (occupancy[k] >= 1.0) survivors.push_back(k);
    if (survivors.empty()) {
      int best = 0;
      occupancy.maxCoeff(&best);
      survivors.push_back(best);
    }
    if (static_cast<int>(survivors.size()) < num_states) {
      Eigen::MatrixXd kept_gamma(t_len, survivors.size());
      Eigen::MatrixXd kept_means(survivors.size(), p);
      std::vector<int> kept_ids;
      for (size_t s = 0; s < survivors.size(); ++s) {
        kept_gamma.col(s) = gamma.col(survivors[s]);
        kept_means.row(s) = hmm.means.row(survivors[s]);
        kept_ids.push_back(state_ids[survivors[s]]);
      }
      // Renormalize responsibilities over the surviving states.
      for (int t = 0; t < t_len; ++t) {
        double row_sum = kept_gamma.row(t).sum();
        if (row_sum > 0.0) kept_gamma.row(t) /= row_sum;
      }
      gamma = kept_gamma;
      hmm.means = kept_means;
      state_ids = kept_ids;
      occupancy = gamma.colwise().sum();
    }

    for (int k = 0; k < static_cast<int>(hmm.means.rows()); ++k)
      if (occupancy[k] > 0.0)
        hmm.means.row(k) = (gamma.col(k).transpose() * phi) / occupancy[k];
  }

  // Final posteriors under the last parameter set.
  {
    int num_states = static_cast<int>(hmm.means.rows());
    if (num_states > 1) {
      hmm.log_self = std::log(config.loop_probability);
      hmm.log_switch =
          std::log((1.0 - config.loop_probability) / (num_states - 1));
    } else {
      hmm.log_self = 0.0;
      hmm.log_switch = -std::numeric_limits<double>::infinity();
    }
    ForwardBackward(phi, hmm, config.smoothing_factor, &gamma);
  }

  out.iterations = config.max_iters;
  out.labels.assignment.resize(t_len);
  std::vector<int> relabel(hmm.means.rows(), -1);
  int next = 0;
  for (int t = 0; t < t_len; ++t) {
    int best = 0;
    gamma.row(t).maxCoeff(&best);
    if (relabel[best] < 0) relabel[best] = next++;
    out.labels.assignment[t] = relabel[best];
  }
  out.labels.num_clusters = next;
  return out;
}

}  // namespace diar
