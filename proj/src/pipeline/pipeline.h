// pipeline/pipeline.h

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

#ifndef DIARPIPE_PIPELINE_PIPELINE_H_
#define DIARPIPE_PIPELINE_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "clustering/ahc.h"
#include "clustering/bhmm.h"
#include "domainroute/domainroute.h"
#include "formats/rttm.h"
#include "postproc/postproc.h"

namespace diar {

// Environment variable naming the default output root when the config does
// not set output_dir.
inline constexpr char kOutputRootEnv[] = "DIARPIPE_OUT";

struct SynthInputConfig {
  int sessions = 2;
  int speakers = 3;
  double duration = 300.0;
  double overlap_ratio = 0.2;
  double noise_level = 0.1;
  // Domain assigned to session i is domains[i % domains.size()].
  std::vector<std::string> domains = {"MEETING"};
};

struct BackendConfig {
  double fidelity = 0.9;
  double adapt_step = 0.1;
  // Model snapshots fused per recording; epoch e runs the routed strategy
  // at fidelity - epoch_spread * (epochs - 1 - e), so later epochs are
  // stronger.
  int epochs = 1;
  double epoch_spread = 0.1;
};

struct SadStageConfig {
  double threshold = 0.5;
  double min_speech = 0.2;
  double min_silence = 0.3;
};

struct ClusteringStageConfig {
  AhcConfig ahc;
  BhmmConfig bhmm;
  // Interpolation weight between the two scoring models; with a single
  // model both slots hold it and alpha is inert.
  double alpha = 0.5;
};

struct PostprocStageConfig {
  LaughterConfig laughter;
  // Token annotation file; empty disables the laughter pass.
  std::string tokens_file;
};

// Full run description.  Everything is defaulted except the output
// directory, which must come from the config or from $DIARPIPE_OUT.
struct PipelineConfig {
  uint64_t seed = 0;
  std::string output_dir;
  int workers = 0;  // 0: available parallelism
  int track = 1;    // 1: reference speech regions, 2: detected ones
  SynthInputConfig synth;
  BackendConfig backends;
  SadStageConfig sad;
  ClusteringStageConfig clustering;
  double rank_exponent = 1.0;
  RouteTable routing;  // DefaultRouteTable() patched by the config
  PostprocStageConfig postproc;

  PipelineConfig() : routing(DefaultRouteTable()) {}
};

// Parses the JSON run description.  Unknown keys, wrong types and
// out-of-range values raise ConfigInvalid naming the offending key path.
PipelineConfig ParsePipelineConfig(const std::string &json_text);

// ParsePipelineConfig over the file's contents; a missing output_dir is
// filled from $DIARPIPE_OUT.  Throws ConfigInvalid if the file cannot be
// read or no output directory is available.
PipelineConfig LoadPipelineConfig(const std::string &path);

// Resolved per-recording outcome.
struct RecordingResult {
  std::string recording_id;
  uint64_t seed = 0;
  bool failed = false;
  std::string error;

  std::string domain;
  std::string voted_domain;  // chunk-vote over the energy stream, reported
  RoutePlan plan;
  std::vector<double> epoch_fidelities;
  std::vector<double> epoch_weights;   // cross-epoch fusion weights
  std::vector<double> system_weights;  // cross-system fusion weights

  double der_clustering = 0.0;
  double der_routed = 0.0;
  double der_fused = 0.0;
  double der_final = 0.0;
};

struct PipelineResult {
  std::vector<RecordingResult> recordings;  // in recording order
  int failures = 0;

  // Merged over the successful recordings.
  RttmDocument reference;
  UemDocument uem;
  RttmDocument final_doc;
};

// Runs the whole batch: per recording, generate the session, detect or
// copy the speech regions per track, cluster, route by domain, run the
// routed strategy once per epoch, fuse epochs then systems, mask by the
// speech regions, assign laughter tokens, and score every stage against
// the generated truth.  Recordings run on a worker pool; one recording's
// failure is recorded and the rest continue.  With write_artifacts, the
// stage documents and a JSON report land in output_dir, and a rerun with
// the same config writes byte-identical files.
PipelineResult RunPipeline(const PipelineConfig &config,
                           bool write_artifacts = true);

// The report text written by RunPipeline: resolved configuration plus every
// per-recording decision and score.
std::string PipelineReportJson(const PipelineConfig &config,
                               const PipelineResult &result);

}  // namespace diar

#endif  // DIARPIPE_PIPELINE_PIPELINE_H_
