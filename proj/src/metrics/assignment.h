// metrics/assignment.h

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

#ifndef DIARPIPE_METRICS_ASSIGNMENT_H_
#define DIARPIPE_METRICS_ASSIGNMENT_H_

#include <vector>

#include <Eigen/Dense>

namespace diar {

// Maximum-weight one-to-one assignment between rows and columns of a
// nonnegative weight matrix.  Returns, per row, the assigned column or -1.
// Pairs whose weight is zero are left unassigned.  Exact (Hungarian
// algorithm), O(n^3) in max(rows, cols).
std::vector<int> MaxWeightAssignment(const Eigen::MatrixXd &weight);

}  // namespace diar

#endif  // DIARPIPE_METRICS_ASSIGNMENT_H_
