// formats/interval.h

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

#ifndef DIARPIPE_FORMATS_INTERVAL_H_
#define DIARPIPE_FORMATS_INTERVAL_H_

#include <vector>

namespace diar {

// Half-open time interval [onset, offset) in seconds.
struct TimeInterval {
  double onset = 0.0;
  double offset = 0.0;

  TimeInterval() = default;
  TimeInterval(double on, double off) : onset(on), offset(off) {}

  double duration() const { return offset - onset; }
  bool Contains(double t) const { return onset <= t && t < offset; }
  bool Overlaps(const TimeInterval &other) const {
    return onset < other.offset && other.onset < offset;
  }

  bool operator==(const TimeInterval &other) const = default;
};

// A list of intervals.  The set operations below require and produce
// normalized lists: sorted by onset, pairwise non-overlapping.  Touching
// intervals are legal and preserved by MergeOverlapping; Coalesce additionally
// joins them.
using IntervalList = std::vector<TimeInterval>;

// Sorts and merges strictly overlapping intervals; touching intervals stay
// separate.  Zero- or negative-duration intervals are dropped.
IntervalList MergeOverlapping(IntervalList intervals);

// Sorts and merges overlapping or touching intervals.
IntervalList Coalesce(IntervalList intervals);

// Set operations on normalized lists.
IntervalList IntervalUnion(const IntervalList &a, const IntervalList &b);
IntervalList IntervalIntersection(const IntervalList &a, const IntervalList &b);
IntervalList IntervalDifference(const IntervalList &a, const IntervalList &b);

double TotalDuration(const IntervalList &intervals);

// Clips every interval to [window.onset, window.offset); empty results are
// dropped.
IntervalList ClipTo(const IntervalList &intervals, const TimeInterval &window);

}  // namespace diar

#endif  // DIARPIPE_FORMATS_INTERVAL_H_
