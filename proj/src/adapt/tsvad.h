// adapt/tsvad.h

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

#ifndef DIARPIPE_ADAPT_TSVAD_H_
#define DIARPIPE_ADAPT_TSVAD_H_

#include <vector>

#include "adapt/backend.h"
#include "formats/rttm.h"

namespace diar {

struct TsVadDecodeConfig {
  int num_nodes = 8;
  double activity_threshold = 0.5;
  int median_filter = 11;  // odd window, truncated at the edges
};

// Running median with the window truncated at the sequence edges.  Even
// truncated windows take the upper median, so binary ties resolve to active.
std::vector<double> MedianFilterRow(const std::vector<double> &row,
                                    int window);

// Decodes per-speaker activity against a fixed node count.  More profiles
// than nodes: the longest-voiced ones are kept.  Fewer: the remaining nodes
// are bound to pinned dummy profiles whose rows are discarded after decoding,
// so dummy ids never reach the output.
RttmDocument TsVadDecode(const SessionFrames &frames,
                         const std::vector<SpeakerProfile> &profiles,
                         const ActivityEstimator &estimator,
                         const TsVadDecodeConfig &config);

}  // namespace diar

#endif  // DIARPIPE_ADAPT_TSVAD_H_
