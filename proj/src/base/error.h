// base/error.h

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

#ifndef DIARPIPE_BASE_ERROR_H_
#define DIARPIPE_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace diar {

// Base class for all errors raised by the toolkit.  Callers that do not care
// about the precise failure catch this one.
class DiarError : public std::runtime_error {
 public:
  explicit DiarError(const std::string &what) : std::runtime_error(what) {}
};

#define DIARPIPE_DEFINE_ERROR(Name)            \
  class Name : public DiarError {              \
   public:                                     \
    explicit Name(const std::string &what)     \
        : DiarError(#Name ": " + what) {}      \
  };

// Parse errors carry the 1-based line number of the offending input line.
class ParseError : public DiarError {
 public:
  ParseError(const std::string &kind, int line_no, const std::string &what)
      : DiarError(kind + " at line " + std::to_string(line_no) + ": " + what),
        line_no_(line_no) {}
  int line_no() const { return line_no_; }

 private:
  int line_no_;
};

class MalformedLine : public ParseError {
 public:
  MalformedLine(int line_no, const std::string &what)
      : ParseError("MalformedLine", line_no, what) {}
};

class NonPositiveDuration : public ParseError {
 public:
  NonPositiveDuration(int line_no, const std::string &what)
      : ParseError("NonPositiveDuration", line_no, what) {}
};

class OffsetNotAfterOnset : public ParseError {
 public:
  OffsetNotAfterOnset(int line_no, const std::string &what)
      : ParseError("OffsetNotAfterOnset", line_no, what) {}
};

// formats
DIARPIPE_DEFINE_ERROR(UnknownRecording)

// metrics
DIARPIPE_DEFINE_ERROR(EmptyReferenceSpeech)
DIARPIPE_DEFINE_ERROR(EmptyUem)

// clustering
DIARPIPE_DEFINE_ERROR(DimensionMismatch)
DIARPIPE_DEFINE_ERROR(NonPositiveDefiniteWithin)
DIARPIPE_DEFINE_ERROR(ShapeMismatch)
DIARPIPE_DEFINE_ERROR(DegenerateCovariance)
DIARPIPE_DEFINE_ERROR(NonSymmetricMatrix)
DIARPIPE_DEFINE_ERROR(EmptyInput)

// sad
DIARPIPE_DEFINE_ERROR(EmptyStream)
DIARPIPE_DEFINE_ERROR(LengthMismatch)
DIARPIPE_DEFINE_ERROR(StepMismatch)
DIARPIPE_DEFINE_ERROR(RecordingMismatch)

// doverlap
DIARPIPE_DEFINE_ERROR(TooFewSystems)
DIARPIPE_DEFINE_ERROR(UnnormalizedWeights)

// domainroute
DIARPIPE_DEFINE_ERROR(EmptyPredictions)
DIARPIPE_DEFINE_ERROR(UnknownDomain)

// adapt
DIARPIPE_DEFINE_ERROR(NoSpeechForRecording)
DIARPIPE_DEFINE_ERROR(AllSpeechOverlapped)
DIARPIPE_DEFINE_ERROR(TooFewSpeakers)
DIARPIPE_DEFINE_ERROR(EmptyPrior)
DIARPIPE_DEFINE_ERROR(SeparatorFailure)
DIARPIPE_DEFINE_ERROR(EstimatorFailure)
DIARPIPE_DEFINE_ERROR(EmptyProfiles)
DIARPIPE_DEFINE_ERROR(DegeneratePrior)

// postproc
DIARPIPE_DEFINE_ERROR(UncoveredRecording)

// synthlab
DIARPIPE_DEFINE_ERROR(InfeasibleOverlap)

// pipeline
DIARPIPE_DEFINE_ERROR(ConfigInvalid)

#undef DIARPIPE_DEFINE_ERROR

}  // namespace diar

#endif  // DIARPIPE_BASE_ERROR_H_
