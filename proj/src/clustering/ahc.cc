// clustering/ahc.cc

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

#include "clustering/ahc.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "base/error.h"

namespace diar {

double CalibrateAhcThreshold(const std::vector<double> &scores) {
  if (scores.size() < 2)
    throw EmptyInput("need at least 2 scores to calibrate");
  std::vector<double> sorted(scores);
  std::sort(sorted.begin(), sorted.end());
  const int m = static_cast<int>(sorted.size());

  std::vector<double> prefix(m + 1, 0.0), prefix_sq(m + 1, 0.0);
  for (int i = 0; i < m; ++i) {
    prefix[i + 1] = prefix[i] + sorted[i];
    prefix_sq[i + 1] = prefix_sq[i] + sorted[i] * sorted[i];
  }
  auto sse = [&](int lo, int hi) {  // [lo, hi)
    double n = hi - lo;
    double s = prefix[hi] - prefix[lo];
    return (prefix_sq[hi] - prefix_sq[lo]) - s * s / n;
  };

  int best_k = 1;
  double best_sse = std::numeric_limits<double>::infinity();
  for (int k = 1; k < m; ++k) {
    double v = sse(0, k) + sse(k, m);
    if (v < best_sse - 1e-15) {
      best_sse = v;
      best_k = k;
    }
  }
  double low_center = prefix[best_k] / best_k;
  double high_center = (prefix[m] - prefix[best_k]) / (m - best_k);
  return 0.5 * (low_center + high_center);
}

ClusterLabels Ahc(const Eigen::MatrixXd &scores, const AhcConfig &config) {
  const int n = static_cast<int>(scores.rows());
  if (n == 0) throw EmptyInput("no items to cluster");
  if (scores.cols() != n)
    throw NonSymmetricMatrix("score matrix is not square");
  double scale = std::max(1.0, scores.cwiseAbs().maxCoeff());
  if ((scores - scores.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw NonSymmetricMatrix("score matrix is not symmetric");

  ClusterLabels out;
  out.assignment.assign(n, 0);
  if (n == 1) {
    out.num_clusters = 1;
    return out;
  }

  std::vector<double> off_diag;
  off_diag.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) off_diag.push_back(scores(i, j));
  double lo = *std::min_element(off_diag.begin(), off_diag.end());
  double hi = *std::max_element(off_diag.begin(), off_diag.end());
  if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) {
    // Degenerate spread: no split exists, saturate to one cluster.
    out.num_clusters = 1;
    return out;
  }
  double stop = CalibrateAhcThreshold(off_diag) + config.threshold_bias;

  // Cross-score sums between active clusters; linkage = sum / (|a| |b|).
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> size(n, 1);
  std::vector<bool> active(n, true);
  Eigen::MatrixXd cross = scores;

  for (int merges = 0; merges < n - 1; ++merges) {
    int best_i = -1, best_j = -1;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        double linkage =
            cross(i, j) / (static_cast<double>(size[i]) * size[j]);
        if (linkage > best + 1e-15) {
          best = linkage;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_i < 0 || best < stop) break;
    // Merge j into i; cross sums are additive.
    for (int k = 0; k < n; ++k) {
      if (!active[k] || k == best_i || k == best_j) continue;
      double sum = cross(best_i, k) + cross(best_j, k);
      cross(best_i, k) = sum;
      cross(k, best_i) = sum;
    }
    size[best_i] += size[best_j];
    active[best_j] = false;
    parent[best_j] = best_i;
  }

  auto root = [&](int v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  std::vector<int> label_of(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = root(i);
    if (label_of[r] < 0) label_of[r] = next++;
    out.assignment[i] = label_of[r];
  }
  out.num_clusters = next;
  return out;
}

}  // namespace diar
