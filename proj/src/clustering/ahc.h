// clustering/ahc.h

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

#ifndef DIARPIPE_CLUSTERING_AHC_H_
#define DIARPIPE_CLUSTERING_AHC_H_

#include <vector>

#include <Eigen/Dense>

namespace diar {

struct AhcConfig {
  double threshold_bias = 0.5;
  // Eigenvalue-mass fraction kept by the session projection upstream.
  double target_energy = 0.3;
};

struct ClusterLabels {
  std::vector<int> assignment;  // dense ids in [0, num_clusters)
  int num_clusters = 0;
};

// Midpoint between the two centers of the best 2-center split of the
// off-diagonal score values (minimum within-group sum of squares over the
// sorted sequence).  Requires at least 2 values.
double CalibrateAhcThreshold(const std::vector<double> &scores);

// Average-linkage agglomeration on a symmetric similarity matrix.  Merging
// stops when the best pair's linkage falls below calibrated_threshold +
// threshold_bias.  Degenerate score spreads (all off-diagonal values equal,
// including n <= 2) collapse to one cluster.  Throws NonSymmetricMatrix.
ClusterLabels Ahc(const Eigen::MatrixXd &scores, const AhcConfig &config);

}  // namespace diar

#endif  // DIARPIPE_CLUSTERING_AHC_H_
