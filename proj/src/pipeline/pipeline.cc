// pipeline/pipeline.cc

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

#include "pipeline/pipeline.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>
#include <utility>

#include "json.hpp"

#include "adapt/iss.h"
#include "adapt/itsvad.h"
#include "adapt/priors.h"
#include "base/error.h"
#include "base/rng.h"
#include "clustering/session.h"
#include "doverlap/doverlap.h"
#include "metrics/score.h"
#include "sad/sad.h"
#include "synthlab/backends.h"
#include "synthlab/synthlab.h"

namespace diar {

namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string &path, const std::string &what) {
  throw ConfigInvalid(path + ": " + what);
}

std::string Join(const std::string &path, const std::string &key) {
  return path.empty() ? key : path + "." + key;
}

void CheckKeys(const json &obj, const std::string &path,
               std::initializer_list<const char *> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char *key : allowed) known |= it.key() == key;
    if (!known) Fail(Join(path, it.key()), "unknown key");
  }
}

const json *Find(const json &obj, const char *key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double GetNumber(const json &obj, const char *key, const std::string &path,
                 double fallback, double lo, double hi) {
  const json *v = Find(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_number()) Fail(Join(path, key), "must be a number");
  double x = v->get<double>();
  if (!(x >= lo && x <= hi)) {
    std::ostringstream msg;
    msg << "must be in [" << lo << ", " << hi << "]";
    Fail(Join(path, key), msg.str());
  }
  return x;
}

int GetInt(const json &obj, const char *key, const std::string &path,
           int fallback, int lo, int hi) {
  const json *v = Find(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_number_integer()) Fail(Join(path, key), "must be an integer");
  long long x = v->get<long long>();
  if (x < lo || x > hi) {
    std::ostringstream msg;
    msg << "must be in [" << lo << ", " << hi << "]";
    Fail(Join(path, key), msg.str());
  }
  return static_cast<int>(x);
}

std::string GetString(const json &obj, const char *key,
                      const std::string &path, const std::string &fallback) {
  const json *v = Find(obj, key);
  if (v == nullptr) return fallback;
  if (!v->is_string()) Fail(Join(path, key), "must be a string");
  return v->get<std::string>();
}

const json &GetObject(const json &obj, const char *key,
                      const std::string &path) {
  const json *v = Find(obj, key);
  static const json kEmpty = json::object();
  if (v == nullptr) return kEmpty;
  if (!v->is_object()) Fail(Join(path, key), "must be an object");
  return *v;
}

void ParseSynth(const json &obj, SynthInputConfig *synth) {
  const std::string path = "synth";
  CheckKeys(obj, path, {"sessions", "speakers", "duration", "overlap_ratio",
                        "noise_level", "domains"});
  synth->sessions = GetInt(obj, "sessions", path, synth->sessions, 1, 100000);
  synth->speakers = GetInt(obj, "speakers", path, synth->speakers, 1, 64);
  synth->duration =
      GetNumber(obj, "duration", path, synth->duration, 1.0, 86400.0);
  synth->overlap_ratio = GetNumber(obj, "overlap_ratio", path,
                                   synth->overlap_ratio, 0.0, 0.999);
  synth->noise_level =
      GetNumber(obj, "noise_level", path, synth->noise_level, 0.0, 100.0);
  if (const json *v = Find(obj, "domains")) {
    if (!v->is_array() || v->empty())
      Fail("synth.domains", "must be a non-empty array of domain names");
    synth->domains.clear();
    for (const json &item : *v) {
      if (!item.is_string())
        Fail("synth.domains", "must contain only strings");
      std::string name = item.get<std::string>();
      try {
        ParseDomainLabel(name);
      } catch (const UnknownDomain &) {
        Fail("synth.domains", "unknown domain \"" + name + "\"");
      }
      synth->domains.push_back(name);
    }
  }
}

void ParseRouting(const json &obj, RouteTable *table) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string path = "routing." + it.key();
    DomainLabel domain;
    try {
      domain = ParseDomainLabel(it.key());
    } catch (const UnknownDomain &) {
      Fail(path, "unknown domain");
    }
    if (!it.value().is_object()) Fail(path, "must be an object");
    const json &plan_obj = it.value();
    CheckKeys(plan_obj, path, {"strategy", "iterations", "fusion_members"});
    RoutePlan plan = (*table)[domain];
    if (const json *v = Find(plan_obj, "strategy")) {
      if (!v->is_string()) Fail(path + ".strategy", "must be a string");
      try {
        plan.strategy = ParseRouteStrategy(v->get<std::string>());
      } catch (const ConfigInvalid &) {
        Fail(path + ".strategy", "unknown strategy");
      }
    }
    plan.iteration_count =
        GetInt(plan_obj, "iterations", path, plan.iteration_count, 0, 1000);
    if (const json *v = Find(plan_obj, "fusion_members")) {
      if (!v->is_array()) Fail(path + ".fusion_members", "must be an array");
      plan.fusion_members.clear();
      for (const json &item : *v) {
        if (!item.is_string())
          Fail(path + ".fusion_members", "must contain only strings");
        std::string name = item.get<std::string>();
        if (name != "clustering" && name != "routed")
          Fail(path + ".fusion_members",
               "unknown system \"" + name + "\" (use clustering / routed)");
        plan.fusion_members.push_back(name);
      }
    }
    // Keep the table consistent with what Route() will accept.
    bool iterates = plan.strategy == RouteStrategy::kIss ||
                    plan.strategy == RouteStrategy::kItsVad;
    if (!iterates && plan.iteration_count != 0)
      Fail(path + ".iterations", "must be 0 for this strategy");
    (*table)[domain] = plan;
  }
}

std::string ReadFileOrThrow(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFileOrThrow(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

// --------------------------------------------------------------------------
// Per-recording execution.

struct StageDocs {
  RttmDocument ref;
  RttmDocument sad_doc;
  RttmDocument clustering;
  RttmDocument routed;
  RttmDocument fused;
  RttmDocument final_doc;
};

struct RecordingOutput {
  RecordingResult result;
  StageDocs docs;
  IntervalList uem_region;
  std::vector<Eigen::VectorXd> chunk_features;
};

RttmDocument SpeechDoc(const std::string &rec, const IntervalList &speech,
                       const std::string &speaker) {
  std::vector<Turn> turns;
  for (const TimeInterval &iv : speech) turns.emplace_back(rec, speaker, iv);
  return RttmDocument(std::move(turns));
}

// Clips every turn to the speech regions; fragments outside vanish.
RttmDocument MaskBySpeech(const RttmDocument &doc, const IntervalList &speech) {
  std::vector<Turn> turns;
  for (const Turn &turn : doc.turns())
    for (const TimeInterval &piece :
         IntervalIntersection({turn.interval}, speech))
      turns.emplace_back(turn.recording_id, turn.speaker_id, piece);
  return RttmDocument(std::move(turns));
}

RttmDocument RankAndFuse(const std::vector<SystemHypothesis> &hyps,
                         const UemDocument &uem, double rank_exponent,
                         std::vector<double> *weights_out) {
  FusionConfig fusion;
  fusion.rank_exponent = rank_exponent;
  std::vector<double> weights = RankSystems(hyps, uem, fusion);
  if (weights_out != nullptr) *weights_out = weights;
  return DoverlapFuse(hyps, weights, fusion);
}

RecordingOutput ProcessRecording(const PipelineConfig &config,
                                 const std::vector<TokenAnnotation> &tokens,
                                 int index) {
  RecordingOutput out;
  RecordingResult &rr = out.result;
  char name[16];
  std::snprintf(name, sizeof(name), "rec%03d", index);
  rr.recording_id = name;
  rr.seed = MixSeed(config.seed, static_cast<uint64_t>(index));
  rr.domain =
      config.synth.domains[index % static_cast<int>(config.synth.domains.size())];

  try {
    DomainLabel domain = ParseDomainLabel(rr.domain);
    rr.plan = Route(domain, config.routing);

    SynthSessionSpec spec;
    spec.num_speakers = config.synth.speakers;
    spec.duration = config.synth.duration;
    spec.overlap_ratio = config.synth.overlap_ratio;
    spec.noise_level = config.synth.noise_level;
    spec.seed = rr.seed;
    spec.recording_id = rr.recording_id;
    SynthSession session = GenSession(spec);

    out.uem_region = {TimeInterval(0.0, config.synth.duration)};
    UemDocument uem({{rr.recording_id, out.uem_region}});
    out.docs.ref = session.reference;

    for (const TimeInterval &chunk : ChunkSession(config.synth.duration))
      out.chunk_features.push_back(ChunkFeatures(
          session.frames.energy, chunk, session.frames.frame_step));

    // Speech regions: the reference ones on track 1, detected ones on
    // track 2.
    IntervalList speech;
    if (config.track == 1) {
      speech = session.reference.RecordingSpeech(rr.recording_id);
    } else {
      SadPosterior post =
          OracleSadPosterior(session, config.backends.fidelity);
      speech = BinarizeAndSmooth(post, config.sad.threshold,
                                 config.sad.min_speech,
                                 config.sad.min_silence)
                   .RecordingSpeech(rr.recording_id);
    }
    out.docs.sad_doc = SpeechDoc(rr.recording_id, speech, "speech");

    // Clustering over the session embeddings, scored with the generator's
    // own geometry: unit between-speaker scatter, isotropic within noise.
    PldaModel plda;
    plda.mean = Eigen::VectorXd::Zero(kSynthEmbeddingDim);
    plda.between_cov =
        Eigen::MatrixXd::Identity(kSynthEmbeddingDim, kSynthEmbeddingDim);
    plda.within_cov = config.synth.noise_level * config.synth.noise_level *
                      Eigen::MatrixXd::Identity(kSynthEmbeddingDim,
                                                kSynthEmbeddingDim);
    out.docs.clustering = ClusterSession(
        session.embeddings, plda, plda, config.clustering.ahc,
        config.clustering.bhmm, config.clustering.alpha);
    rr.der_clustering =
        ScoreDer(session.reference, out.docs.clustering, uem).der_pct;

    // The routed strategy, once per model epoch; later epochs are stronger.
    bool iterates = rr.plan.strategy == RouteStrategy::kIss ||
                    rr.plan.strategy == RouteStrategy::kItsVad;
    int epochs = iterates ? config.backends.epochs : 1;
    std::vector<SystemHypothesis> epoch_hyps;
    for (int e = 0; e < epochs; ++e) {
      double fidelity = std::clamp(
          config.backends.fidelity -
              config.backends.epoch_spread * (epochs - 1 - e),
          0.0, 1.0);
      rr.epoch_fidelities.push_back(fidelity);
      RttmDocument hyp;
      switch (rr.plan.strategy) {
        case RouteStrategy::kClusteringOnly:
          hyp = out.docs.clustering;
          break;
        case RouteStrategy::kSingleSpeakerSad:
          hyp = SpeechDoc(rr.recording_id, speech, "spk0");
          break;
        case RouteStrategy::kIss: {
          OracleSeparator separator(&session, fidelity,
                                    config.backends.adapt_step);
          SpeakerPrior prior;
          try {
            prior =
                ExtractSpeakerPriors(out.docs.clustering, rr.recording_id,
                                     /*exclude_overlap=*/true);
          } catch (const AllSpeechOverlapped &) {
            prior =
                ExtractSpeakerPriors(out.docs.clustering, rr.recording_id,
                                     /*exclude_overlap=*/false);
          }
          IssConfig iss;
          iss.stages = rr.plan.iteration_count;
          iss.seed = MixSeed(rr.seed, 700 + static_cast<uint64_t>(e));
          hyp = IssDiarize(session.frames, prior, separator, iss);
          break;
        }
        case RouteStrategy::kItsVad: {
          OracleActivityEstimator estimator(&session, fidelity,
                                            config.backends.adapt_step);
          OracleProfileExtractor profiles(&session);
          ItsVadConfig its;
          its.iterations = rr.plan.iteration_count;
          its.seed = MixSeed(rr.seed, 800 + static_cast<uint64_t>(e));
          hyp = ItsVadDiarize(session.frames, out.docs.clustering, estimator,
                              profiles, its);
          break;
        }
      }
      epoch_hyps.push_back(
          SystemHypothesis{"epoch" + std::to_string(e), std::move(hyp), {}});
    }
    out.docs.routed =
        epoch_hyps.size() == 1
            ? epoch_hyps.front().doc
            : RankAndFuse(epoch_hyps, uem, config.rank_exponent,
                          &rr.epoch_weights);
    rr.der_routed =
        ScoreDer(session.reference, out.docs.routed, uem).der_pct;

    // Cross-system fusion per the plan; an empty member list passes the
    // routed output through.
    if (rr.plan.fusion_members.empty()) {
      out.docs.fused = out.docs.routed;
    } else {
      std::vector<SystemHypothesis> systems;
      for (const std::string &member : rr.plan.fusion_members)
        systems.push_back(SystemHypothesis{
            member,
            member == "clustering" ? out.docs.clustering : out.docs.routed,
            {}});
      out.docs.fused =
          systems.size() == 1
              ? systems.front().doc
              : RankAndFuse(systems, uem, config.rank_exponent,
                            &rr.system_weights);
    }
    rr.der_fused = ScoreDer(session.reference, out.docs.fused, uem).der_pct;

    RttmDocument final_doc = MaskBySpeech(out.docs.fused, speech);
    if (!tokens.empty())
      final_doc = AssignLaughter(final_doc, tokens, config.postproc.laughter);
    out.docs.final_doc = std::move(final_doc);
    rr.der_final =
        ScoreDer(session.reference, out.docs.final_doc, uem).der_pct;
  } catch (const std::exception &err) {
    rr.failed = true;
    rr.error = err.what();
  }
  return out;
}

json PlanJson(const RoutePlan &plan) {
  json j;
  j["strategy"] = RouteStrategyName(plan.strategy);
  j["iterations"] = plan.iteration_count;
  j["fusion_members"] = plan.fusion_members;
  return j;
}

}  // namespace

PipelineConfig ParsePipelineConfig(const std::string &json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error &err) {
    throw ConfigInvalid(std::string("config is not valid JSON: ") +
                        err.what());
  }
  if (!root.is_object()) throw ConfigInvalid("config must be a JSON object");
  CheckKeys(root, "",
            {"seed", "output_dir", "workers", "track", "synth", "backends",
             "sad", "clustering", "fusion", "routing", "postproc"});

  PipelineConfig config;
  if (const json *v = Find(root, "seed")) {
    if (!v->is_number_integer() || v->get<long long>() < 0)
      Fail("seed", "must be a non-negative integer");
    config.seed = v->get<uint64_t>();
  }
  config.output_dir = GetString(root, "output_dir", "", "");
  config.workers = GetInt(root, "workers", "", 0, 0, 4096);
  config.track = GetInt(root, "track", "", 1, 1, 2);

  ParseSynth(GetObject(root, "synth", ""), &config.synth);

  {
    const json &obj = GetObject(root, "backends", "");
    const std::string path = "backends";
    CheckKeys(obj, path, {"fidelity", "adapt_step", "epochs", "epoch_spread"});
    config.backends.fidelity =
        GetNumber(obj, "fidelity", path, config.backends.fidelity, 0.0, 1.0);
    config.backends.adapt_step = GetNumber(obj, "adapt_step", path,
                                           config.backends.adapt_step, 0.0, 1.0);
    config.backends.epochs =
        GetInt(obj, "epochs", path, config.backends.epochs, 1, 32);
    config.backends.epoch_spread = GetNumber(
        obj, "epoch_spread", path, config.backends.epoch_spread, 0.0, 1.0);
  }
  {
    const json &obj = GetObject(root, "sad", "");
    const std::string path = "sad";
    CheckKeys(obj, path, {"threshold", "min_speech", "min_silence"});
    config.sad.threshold =
        GetNumber(obj, "threshold", path, config.sad.threshold, 0.0, 1.0);
    config.sad.min_speech =
        GetNumber(obj, "min_speech", path, config.sad.min_speech, 0.0, 10.0);
    config.sad.min_silence =
        GetNumber(obj, "min_silence", path, config.sad.min_silence, 0.0, 10.0);
  }
  {
    const json &obj = GetObject(root, "clustering", "");
    const std::string path = "clustering";
    CheckKeys(obj, path, {"ahc_bias", "target_energy", "max_iters",
                          "smoothing", "lda_dim", "loop_probability", "alpha"});
    config.clustering.ahc.threshold_bias = GetNumber(
        obj, "ahc_bias", path, config.clustering.ahc.threshold_bias, -10.0,
        10.0);
    config.clustering.ahc.target_energy =
        GetNumber(obj, "target_energy", path,
                  config.clustering.ahc.target_energy, 0.01, 1.0);
    config.clustering.bhmm.max_iters =
        GetInt(obj, "max_iters", path, config.clustering.bhmm.max_iters, 1, 1000);
    config.clustering.bhmm.smoothing_factor =
        GetNumber(obj, "smoothing", path,
                  config.clustering.bhmm.smoothing_factor, 0.01, 1000.0);
    config.clustering.bhmm.lda_dim =
        GetInt(obj, "lda_dim", path, config.clustering.bhmm.lda_dim, 1, 100000);
    config.clustering.bhmm.loop_probability =
        GetNumber(obj, "loop_probability", path,
                  config.clustering.bhmm.loop_probability, 0.001, 0.999);
    config.clustering.alpha =
        GetNumber(obj, "alpha", path, config.clustering.alpha, 0.0, 1.0);
  }
  {
    const json &obj = GetObject(root, "fusion", "");
    CheckKeys(obj, "fusion", {"rank_exponent"});
    config.rank_exponent =
        GetNumber(obj, "rank_exponent", "fusion", config.rank_exponent, 0.0,
                  100.0);
  }
  ParseRouting(GetObject(root, "routing", ""), &config.routing);
  {
    const json &obj = GetObject(root, "postproc", "");
    const std::string path = "postproc";
    CheckKeys(obj, path, {"neighborhood", "token", "tokens_file"});
    config.postproc.laughter.neighborhood =
        GetNumber(obj, "neighborhood", path,
                  config.postproc.laughter.neighborhood, 0.0, 3600.0);
    config.postproc.laughter.token =
        GetString(obj, "token", path, config.postproc.laughter.token);
    if (config.postproc.laughter.token.empty())
      Fail("postproc.token", "must not be empty");
    config.postproc.tokens_file =
        GetString(obj, "tokens_file", path, config.postproc.tokens_file);
  }
  return config;
}

PipelineConfig LoadPipelineConfig(const std::string &path) {
  PipelineConfig config = ParsePipelineConfig(ReadFileOrThrow(path));
  if (config.output_dir.empty()) {
    const char *root = std::getenv(kOutputRootEnv);
    if (root != nullptr && root[0] != '\0') config.output_dir = root;
  }
  if (config.output_dir.empty())
    throw ConfigInvalid(std::string("output_dir not set and $") +
                        kOutputRootEnv + " is empty");
  return config;
}

PipelineResult RunPipeline(const PipelineConfig &config,
                           bool write_artifacts) {
  if (write_artifacts && config.output_dir.empty())
    throw ConfigInvalid("output_dir not set");

  std::vector<TokenAnnotation> tokens;
  if (!config.postproc.tokens_file.empty())
    tokens = ParseTokens(ReadFileOrThrow(config.postproc.tokens_file));

  const int n = config.synth.sessions;
  std::vector<RecordingOutput> outputs(n);
  {
    int workers = config.workers > 0
                      ? config.workers
                      : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n);
    std::atomic<int> next{0};
    auto drain = [&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
        outputs[i] = ProcessRecording(config, tokens, i);
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (std::thread &t : pool) t.join();
  }

  // Domain vote, reported alongside the configured assignment: centroids
  // trained on this batch's own chunk statistics.
  {
    std::vector<std::pair<DomainLabel, Eigen::VectorXd>> examples;
    for (const RecordingOutput &out : outputs) {
      if (out.result.failed) continue;
      DomainLabel label = ParseDomainLabel(out.result.domain);
      for (const Eigen::VectorXd &feature : out.chunk_features)
        examples.emplace_back(label, feature);
    }
    if (!examples.empty()) {
      NearestCentroidClassifier classifier;
      classifier.Fit(examples);
      for (RecordingOutput &out : outputs) {
        if (out.result.failed || out.chunk_features.empty()) continue;
        std::vector<DomainLabel> predictions;
        for (const Eigen::VectorXd &feature : out.chunk_features)
          predictions.push_back(classifier.Classify(feature));
        out.result.voted_domain =
            DomainLabelName(VoteSessionDomain(predictions));
      }
    }
  }

  PipelineResult result;
  std::vector<Turn> ref, sad, clustering, routed, fused, final_turns;
  std::map<std::string, IntervalList> uem_regions;
  for (RecordingOutput &out : outputs) {
    result.recordings.push_back(out.result);
    if (out.result.failed) {
      ++result.failures;
      continue;
    }
    auto append = [](std::vector<Turn> *dst, const RttmDocument &doc) {
      for (const Turn &turn : doc.turns()) dst->push_back(turn);
    };
    append(&ref, out.docs.ref);
    append(&sad, out.docs.sad_doc);
    append(&clustering, out.docs.clustering);
    append(&routed, out.docs.routed);
    append(&fused, out.docs.fused);
    append(&final_turns, out.docs.final_doc);
    uem_regions[out.result.recording_id] = out.uem_region;
  }
  result.reference = RttmDocument(std::move(ref));
  result.uem = UemDocument(std::move(uem_regions));
  result.final_doc = RttmDocument(std::move(final_turns));

  if (write_artifacts) {
    std::filesystem::create_directories(config.output_dir);
    auto emit = [&](const char *file, const std::string &text) {
      WriteFileOrThrow(
          (std::filesystem::path(config.output_dir) / file).string(), text);
    };
    emit("ref.rttm", WriteRttm(result.reference));
    emit("ref.uem", WriteUem(result.uem));
    emit("sad.rttm", WriteRttm(RttmDocument(std::move(sad))));
    emit("clustering.rttm", WriteRttm(RttmDocument(std::move(clustering))));
    emit("routed.rttm", WriteRttm(RttmDocument(std::move(routed))));
    emit("fused.rttm", WriteRttm(RttmDocument(std::move(fused))));
    emit("final.rttm", WriteRttm(result.final_doc));
    emit("report.json", PipelineReportJson(config, result));
  }
  return result;
}

std::string PipelineReportJson(const PipelineConfig &config,
                               const PipelineResult &result) {
  json echo;
  echo["seed"] = config.seed;
  echo["output_dir"] = config.output_dir;
  echo["workers"] = config.workers;
  echo["track"] = config.track;
  echo["synth"] = {{"sessions", config.synth.sessions},
                   {"speakers", config.synth.speakers},
                   {"duration", config.synth.duration},
                   {"overlap_ratio", config.synth.overlap_ratio},
                   {"noise_level", config.synth.noise_level},
                   {"domains", config.synth.domains}};
  echo["backends"] = {{"fidelity", config.backends.fidelity},
                      {"adapt_step", config.backends.adapt_step},
                      {"epochs", config.backends.epochs},
                      {"epoch_spread", config.backends.epoch_spread}};
  echo["sad"] = {{"threshold", config.sad.threshold},
                 {"min_speech", config.sad.min_speech},
                 {"min_silence", config.sad.min_silence}};
  echo["clustering"] = {
      {"ahc_bias", config.clustering.ahc.threshold_bias},
      {"target_energy", config.clustering.ahc.target_energy},
      {"max_iters", config.clustering.bhmm.max_iters},
      {"smoothing", config.clustering.bhmm.smoothing_factor},
      {"lda_dim", config.clustering.bhmm.lda_dim},
      {"loop_probability", config.clustering.bhmm.loop_probability},
      {"alpha", config.clustering.alpha}};
  echo["fusion"] = {{"rank_exponent", config.rank_exponent}};
  json routing = json::object();
  for (const auto &[domain, plan] : config.routing)
    routing[DomainLabelName(domain)] = PlanJson(plan);
  echo["routing"] = routing;
  echo["postproc"] = {{"neighborhood", config.postproc.laughter.neighborhood},
                      {"token", config.postproc.laughter.token},
                      {"tokens_file", config.postproc.tokens_file}};

  json recs = json::array();
  for (const RecordingResult &rr : result.recordings) {
    json entry;
    entry["recording"] = rr.recording_id;
    entry["seed"] = rr.seed;
    if (rr.failed) {
      entry["error"] = rr.error;
    } else {
      entry["domain"] = rr.domain;
      entry["voted_domain"] = rr.voted_domain;
      entry["plan"] = PlanJson(rr.plan);
      entry["epoch_fidelities"] = rr.epoch_fidelities;
      if (!rr.epoch_weights.empty())
        entry["epoch_weights"] = rr.epoch_weights;
      if (!rr.system_weights.empty())
        entry["system_weights"] = rr.system_weights;
      entry["der"] = {{"clustering", rr.der_clustering},
                      {"routed", rr.der_routed},
                      {"fused", rr.der_fused},
                      {"final", rr.der_final}};
    }
    recs.push_back(std::move(entry));
  }

  json report;
  report["config"] = std::move(echo);
  report["recordings"] = std::move(recs);
  report["failures"] = result.failures;
  return report.dump(2) + "\n";
}

}  // namespace diar
