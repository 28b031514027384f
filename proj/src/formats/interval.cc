// formats/interval.cc

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

#include "formats/interval.h"

#include <algorithm>

namespace diar {

namespace {

// merge_touching selects between the two normalization flavors.
IntervalList MergeSorted(IntervalList intervals, bool merge_touching) {
  IntervalList kept;
  kept.reserve(intervals.size());
  for (const TimeInterval &iv : intervals) {
    if (iv.duration() > 0.0) kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(), [](const TimeInterval &a,
                                         const TimeInterval &b) {
    if (a.onset != b.onset) return a.onset < b.onset;
    return a.offset < b.offset;
  });
  IntervalList out;
  for (const TimeInterval &iv : kept) {
    bool joins = !out.empty() &&
                 (merge_touching ? iv.onset <= out.back().offset
                                 : iv.onset < out.back().offset);
    if (joins) {
      out.back().offset = std::max(out.back().offset, iv.offset);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

}  // namespace

IntervalList MergeOverlapping(IntervalList intervals) {
  return MergeSorted(std::move(intervals), false);
}

IntervalList Coalesce(IntervalList intervals) {
  return MergeSorted(std::move(intervals), true);
}

IntervalList IntervalUnion(const IntervalList &a, const IntervalList &b) {
  IntervalList all = a;
  all.insert(all.end(), b.begin(), b.end());
  return Coalesce(std::move(all));
}

IntervalList IntervalIntersection(const IntervalList &a,
                                  const IntervalList &b) {
  IntervalList out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    double lo = std::max(a[i].onset, b[j].onset);
    double hi = std::min(a[i].offset, b[j].offset);
    if (lo < hi) out.emplace_back(lo, hi);
    if (a[i].offset < b[j].offset) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

IntervalList IntervalDifference(const IntervalList &a, const IntervalList &b) {
  IntervalList out;
  size_t j = 0;
  for (const TimeInterval &iv : a) {
    double cursor = iv.onset;
    while (j < b.size() && b[j].offset <= iv.onset) ++j;
    size_t k = j;
    while (k < b.size() && b[k].onset < iv.offset) {
      if (b[k].onset > cursor) out.emplace_back(cursor, b[k].onset);
      cursor = std::max(cursor, b[k].offset);
      if (cursor >= iv.offset) break;
      ++k;
    }
    if (cursor < iv.offset) out.emplace_back(cursor, iv.offset);
  }
  return out;
}

double TotalDuration(const IntervalList &intervals) {
  double total = 0.0;
  for (const TimeInterval &iv : intervals) total += iv.duration();
  return total;
}

IntervalList ClipTo(const IntervalList &intervals, const TimeInterval &window) {
  IntervalList out;
  for (const TimeInterval &iv : intervals) {
    double lo = std::max(iv.onset, window.onset);
    double hi = std::min(iv.offset, window.offset);
    if (lo < hi) out.emplace_back(lo, hi);
  }
  return out;
}

}  // namespace diar
