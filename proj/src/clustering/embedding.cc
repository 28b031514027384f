// clustering/embedding.cc

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

#include "clustering/embedding.h"

#include <cmath>
#include <sstream>

#include "base/error.h"
#include "formats/rttm.h"

namespace diar {

namespace {

double ParseNumber(const std::string &token, int line_no,
                   const std::string &what) {
  try {
    size_t used = 0;
    double v = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(v))
      throw std::invalid_argument(token);
    return v;
  } catch (const std::exception &) {
    throw MalformedLine(line_no, "bad " + what + ": " + token);
  }
}

}  // namespace

std::vector<Embedding> ParseEmbeddingTable(const std::string &text) {
  std::vector<Embedding> out;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string rec, onset_s, offset_s, dim_s;
    if (!(fields >> rec >> onset_s >> offset_s >> dim_s))
      throw MalformedLine(line_no,
                          "expected <recording> <onset> <offset> <dim> ...");
    Embedding e;
    e.recording_id = rec;
    double onset = ParseNumber(onset_s, line_no, "onset");
    double offset = ParseNumber(offset_s, line_no, "offset");
    if (offset <= onset)
      throw OffsetNotAfterOnset(line_no,
                                "offset must exceed onset: " + line);
    e.source_interval = TimeInterval(onset, offset);
    double dim_v = ParseNumber(dim_s, line_no, "dim");
    int dim = static_cast<int>(dim_v);
    if (dim <= 0 || dim != dim_v)
      throw MalformedLine(line_no, "dim must be a positive integer: " + dim_s);
    e.vector.resize(dim);
    for (int d = 0; d < dim; ++d) {
      std::string value;
      if (!(fields >> value))
        throw MalformedLine(line_no, "expected " + std::to_string(dim) +
                                         " values");
      e.vector[d] = ParseNumber(value, line_no, "value");
    }
    std::string extra;
    if (fields >> extra)
      throw MalformedLine(line_no, "trailing fields after " +
                                       std::to_string(dim) + " values");
    out.push_back(std::move(e));
  }
  return out;
}

std::string WriteEmbeddingTable(const std::vector<Embedding> &embeddings) {
  std::ostringstream out;
  char buf[64];
  for (const Embedding &e : embeddings) {
    out << e.recording_id << ' ' << FormatSeconds(e.source_interval.onset)
        << ' ' << FormatSeconds(e.source_interval.offset) << ' ' << e.dim();
    for (int d = 0; d < e.dim(); ++d) {
      std::snprintf(buf, sizeof(buf), " %.9g", e.vector[d]);
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace diar
