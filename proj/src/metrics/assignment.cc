// metrics/assignment.cc

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

#include "metrics/assignment.h"

#include <limits>

namespace diar {

std::vector<int> MaxWeightAssignment(const Eigen::MatrixXd &weight) {
  const int rows = static_cast<int>(weight.rows());
  const int cols = static_cast<int>(weight.cols());
  if (rows == 0 || cols == 0) return std::vector<int>(rows, -1);

  // Pad to square and convert maximization to minimization; the pad cost is
  // zero so padded cells never beat a genuine positive weight.
  const int n = std::max(rows, cols);
  const double max_w = weight.maxCoeff();
  std::vector<std::vector<double>> cost(n + 1,
                                        std::vector<double>(n + 1, max_w));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) cost[i + 1][j + 1] = max_w - weight(i, j);

  // Potentials form of the Hungarian algorithm; p[j] is the row matched to
  // column j, column 0 is the virtual root.
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0], j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(rows, -1);
  for (int j = 1; j <= n; ++j) {
    int i = p[j];
    if (i >= 1 && i <= rows && j <= cols && weight(i - 1, j - 1) > 0.0)
      row_to_col[i - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace diar
