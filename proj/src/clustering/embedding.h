// clustering/embedding.h

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

#ifndef DIARPIPE_CLUSTERING_EMBEDDING_H_
#define DIARPIPE_CLUSTERING_EMBEDDING_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "formats/interval.h"

namespace diar {

// Fixed-dimensional speaker embedding for one segment of one recording.
struct Embedding {
  std::string recording_id;
  TimeInterval source_interval;
  Eigen::VectorXd vector;

  int dim() const { return static_cast<int>(vector.size()); }
};

// Text table, one record per line:
//   <recording> <onset> <offset> <dim> <v_0> ... <v_{dim-1}>
// Throws MalformedLine / OffsetNotAfterOnset with 1-based line numbers.
std::vector<Embedding> ParseEmbeddingTable(const std::string &text);
std::string WriteEmbeddingTable(const std::vector<Embedding> &embeddings);

}  // namespace diar

#endif  // DIARPIPE_CLUSTERING_EMBEDDING_H_
