// tools/diarpipe.cc

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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "base/error.h"
#include "base/rng.h"
#include "clustering/session.h"
#include "domainroute/domainroute.h"
#include "doverlap/doverlap.h"
#include "formats/rttm.h"
#include "metrics/score.h"
#include "pipeline/pipeline.h"
#include "postproc/postproc.h"
#include "sad/sad.h"
#include "synthlab/synthlab.h"

namespace diar {
namespace {

std::string Slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void Spit(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path);
}

std::vector<double> ParseWeightList(const std::string &csv) {
  std::vector<double> weights;
  std::istringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      weights.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw ConfigInvalid("bad weight \"" + item + "\"");
    }
  }
  return weights;
}

// lines "<recording> <DOMAIN>", '#' comments allowed.
DomainMap ParseDomainMap(const std::string &text) {
  DomainMap map;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string rec, label;
    if (!(fields >> rec >> label))
      throw ConfigInvalid("domain map line " + std::to_string(line_no) +
                          ": need <recording> <domain>");
    map[rec] = ParseDomainLabel(label);
  }
  return map;
}

int CmdSimulate(uint64_t seed, int sessions, int speakers, double duration,
                double overlap, double noise, const std::string &out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<Turn> ref_turns;
  std::vector<std::pair<std::string, double>> extents;
  for (int i = 0; i < sessions; ++i) {
    SynthSessionSpec spec;
    spec.num_speakers = speakers;
    spec.duration = duration;
    spec.overlap_ratio = overlap;
    spec.noise_level = noise;
    spec.seed = MixSeed(seed, static_cast<uint64_t>(i));
    char name[16];
    std::snprintf(name, sizeof(name), "rec%03d", i);
    spec.recording_id = name;
    SynthSession session = GenSession(spec);
    for (const Turn &turn : session.reference.turns())
      ref_turns.push_back(turn);
    extents.emplace_back(session.recording_id, duration);

    std::ostringstream energy;
    energy << session.recording_id << ' ' << session.frames.frame_step
           << '\n';
    char buf[32];
    for (double e : session.frames.energy) {
      std::snprintf(buf, sizeof(buf), "%.6f\n", e);
      energy << buf;
    }
    auto path = std::filesystem::path(out_dir);
    Spit((path / (session.recording_id + ".energy")).string(), energy.str());
    Spit((path / (session.recording_id + ".emb")).string(),
         WriteEmbeddingTable(session.embeddings));
  }
  auto path = std::filesystem::path(out_dir);
  Spit((path / "ref.rttm").string(), WriteRttm(RttmDocument(ref_turns)));
  Spit((path / "ref.uem").string(), WriteUem(UemCovering(extents)));
  std::printf("simulate: %d sessions to %s\n", sessions, out_dir.c_str());
  return 0;
}

int CmdSadFuse(const std::vector<std::string> &inputs,
               const std::string &weights_csv, double threshold,
               const std::string &out_path, const std::string &segments_path,
               double min_speech, double min_silence) {
  std::vector<SadPosterior> systems;
  for (const std::string &path : inputs)
    systems.push_back(ParseSadPosterior(Slurp(path)));
  SadFusionConfig config;
  config.decision_threshold = threshold;
  config.weights = weights_csv.empty()
                       ? std::vector<double>(systems.size(), 1.0)
                       : ParseWeightList(weights_csv);
  SadPosterior fused = FuseSad(systems, config);
  Spit(out_path, WriteSadPosterior(fused));
  if (!segments_path.empty())
    Spit(segments_path,
         WriteRttm(BinarizeAndSmooth(fused, threshold, min_speech,
                                     min_silence)));
  std::printf("sad-fuse: %zu systems -> %s\n", systems.size(),
              out_path.c_str());
  return 0;
}

int CmdCluster(const std::string &embeddings_path, double noise, double alpha,
               const AhcConfig &ahc, const BhmmConfig &bhmm,
               const std::string &out_path) {
  std::vector<Embedding> all = ParseEmbeddingTable(Slurp(embeddings_path));
  std::map<std::string, std::vector<Embedding>> by_recording;
  for (Embedding &e : all) by_recording[e.recording_id].push_back(std::move(e));

  std::vector<Turn> turns;
  for (const auto &[rec, embeddings] : by_recording) {
    const int dim = embeddings.front().dim();
    PldaModel plda;
    plda.mean = Eigen::VectorXd::Zero(dim);
    plda.between_cov = Eigen::MatrixXd::Identity(dim, dim);
    plda.within_cov = noise * noise * Eigen::MatrixXd::Identity(dim, dim);
    RttmDocument doc =
        ClusterSession(embeddings, plda, plda, ahc, bhmm, alpha);
    for (const Turn &turn : doc.turns()) turns.push_back(turn);
  }
  Spit(out_path, WriteRttm(RttmDocument(std::move(turns))));
  std::printf("cluster: %zu recordings -> %s\n", by_recording.size(),
              out_path.c_str());
  return 0;
}

int CmdFuse(const std::vector<std::string> &inputs,
            const std::string &names_csv, const std::string &uem_path,
            const std::string &weights_csv, double rank_exponent,
            const std::string &out_path, bool print_weights) {
  std::vector<std::string> names;
  if (!names_csv.empty()) {
    std::istringstream in(names_csv);
    std::string item;
    while (std::getline(in, item, ',')) names.push_back(item);
    if (names.size() != inputs.size())
      throw ConfigInvalid("--names must list one name per input");
  } else {
    for (const std::string &path : inputs)
      names.push_back(std::filesystem::path(path).stem().string());
  }
  std::vector<double> explicit_weights;
  if (!weights_csv.empty()) {
    explicit_weights = ParseWeightList(weights_csv);
    if (explicit_weights.size() != inputs.size())
      throw ConfigInvalid("--weights must list one weight per input");
  }

  std::vector<SystemHypothesis> hyps;
  for (size_t i = 0; i < inputs.size(); ++i) {
    SystemHypothesis hyp;
    hyp.name = names[i];
    hyp.doc = ParseRttm(Slurp(inputs[i]));
    if (!explicit_weights.empty()) hyp.weight = explicit_weights[i];
    hyps.push_back(std::move(hyp));
  }
  UemDocument uem = ParseUem(Slurp(uem_path));

  FusionConfig config;
  config.rank_exponent = rank_exponent;
  std::vector<double> weights = RankSystems(hyps, uem, config);
  if (print_weights)
    for (size_t i = 0; i < hyps.size(); ++i)
      std::printf("weight %s %.6f\n", hyps[i].name.c_str(), weights[i]);
  Spit(out_path, WriteRttm(DoverlapFuse(hyps, weights, config)));
  std::printf("fuse: %zu systems -> %s\n", hyps.size(), out_path.c_str());
  return 0;
}

void PrintPlan(const std::string &prefix, const RoutePlan &plan) {
  std::string members;
  for (size_t i = 0; i < plan.fusion_members.size(); ++i)
    members += (i ? "," : "") + plan.fusion_members[i];
  std::printf("%s %s iterations=%d fusion=[%s]\n", prefix.c_str(),
              RouteStrategyName(plan.strategy).c_str(), plan.iteration_count,
              members.c_str());
}

int CmdRoute(const std::string &domain_name, const std::string &config_path) {
  PipelineConfig config;
  if (!config_path.empty())
    config = ParsePipelineConfig(Slurp(config_path));
  if (!domain_name.empty()) {
    DomainLabel domain = ParseDomainLabel(domain_name);
    PrintPlan(DomainLabelName(domain), Route(domain, config.routing));
    return 0;
  }
  if (!config_path.empty()) {
    for (int i = 0; i < config.synth.sessions; ++i) {
      char name[16];
      std::snprintf(name, sizeof(name), "rec%03d", i);
      const std::string &label =
          config.synth
              .domains[i % static_cast<int>(config.synth.domains.size())];
      DomainLabel domain = ParseDomainLabel(label);
      PrintPlan(std::string(name) + " " + label,
                Route(domain, config.routing));
    }
    return 0;
  }
  for (DomainLabel domain : AllDomains())
    PrintPlan(DomainLabelName(domain), Route(domain, config.routing));
  return 0;
}

int CmdScoreDer(const std::string &ref_path, const std::string &hyp_path,
                const std::string &uem_path, double collar,
                bool no_overlap) {
  DerBreakdown der = ScoreDer(ParseRttm(Slurp(ref_path)),
                              ParseRttm(Slurp(hyp_path)),
                              ParseUem(Slurp(uem_path)), collar, !no_overlap);
  std::printf("MISS=%.2f FA=%.2f SPKERR=%.2f DER=%.2f speech=%.2fs\n",
              der.miss_pct, der.fa_pct, der.spkerr_pct, der.der_pct,
              der.scored_speaker_time);
  return 0;
}

int CmdScoreJer(const std::string &ref_path, const std::string &hyp_path,
                const std::string &uem_path) {
  JerResult jer = ScoreJer(ParseRttm(Slurp(ref_path)),
                           ParseRttm(Slurp(hyp_path)),
                           ParseUem(Slurp(uem_path)));
  std::printf("JER=%.2f speakers=%zu\n", jer.jer_pct, jer.per_speaker.size());
  return 0;
}

int CmdScoreSad(const std::string &ref_path, const std::string &hyp_path,
                const std::string &uem_path) {
  SadError err = ScoreSad(ParseRttm(Slurp(ref_path)),
                          ParseRttm(Slurp(hyp_path)),
                          ParseUem(Slurp(uem_path)));
  std::printf("MISS=%.2f FA=%.2f TOTAL=%.2f\n", err.miss_pct, err.fa_pct,
              err.total_pct);
  return 0;
}

int CmdFinalize(const std::vector<std::string> &candidate_args,
                const std::string &ref_path, const std::string &uem_path,
                const std::string &domains_path, const std::string &out_path,
                const std::string &manifest_path,
                const std::string &tokens_path, double neighborhood,
                const std::string &token) {
  std::map<std::string, RttmDocument> candidates;
  for (const std::string &arg : candidate_args) {
    size_t eq = arg.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == arg.size())
      throw ConfigInvalid("--candidate needs NAME=FILE, got \"" + arg + "\"");
    candidates[arg.substr(0, eq)] = ParseRttm(Slurp(arg.substr(eq + 1)));
  }
  RttmDocument dev_ref = ParseRttm(Slurp(ref_path));
  UemDocument dev_uem = ParseUem(Slurp(uem_path));
  DomainMap domains = ParseDomainMap(Slurp(domains_path));

  auto scores = PerDomainScores(candidates, dev_ref, dev_uem, domains);
  SelectionManifest manifest;
  RttmDocument final_doc =
      SelectPerDomain(candidates, scores, domains, &manifest);

  LaughterReport laughter;
  if (!tokens_path.empty()) {
    LaughterConfig config;
    config.neighborhood = neighborhood;
    config.token = token;
    final_doc = AssignLaughter(final_doc, ParseTokens(Slurp(tokens_path)),
                               config, &laughter);
  }
  Spit(out_path, WriteRttm(final_doc));

  nlohmann::json j;
  for (const auto &[domain, choice] : manifest)
    j["selection"][DomainLabelName(domain)] = {
        {"system", choice.system}, {"der_pct", choice.der_pct}};
  if (!tokens_path.empty())
    j["laughter"] = {{"assigned_tokens", laughter.assigned_tokens},
                     {"orphan_tokens", laughter.orphan_tokens},
                     {"added_turns", laughter.added_turns}};
  if (!manifest_path.empty()) Spit(manifest_path, j.dump(2) + "\n");

  for (const auto &[domain, choice] : manifest)
    std::printf("finalize: %s <- %s (dev DER %.2f)\n",
                DomainLabelName(domain).c_str(), choice.system.c_str(),
                choice.der_pct);
  return 0;
}

int CmdPipelineRun(const std::string &config_path) {
  PipelineConfig config = LoadPipelineConfig(config_path);
  PipelineResult result = RunPipeline(config);
  for (const RecordingResult &rr : result.recordings) {
    if (rr.failed) {
      std::printf("%s FAILED: %s\n", rr.recording_id.c_str(),
                  rr.error.c_str());
    } else {
      std::printf("%s domain=%s strategy=%s DER=%.2f\n",
                  rr.recording_id.c_str(), rr.domain.c_str(),
                  RouteStrategyName(rr.plan.strategy).c_str(), rr.der_final);
    }
  }
  std::printf("pipeline-run: %zu recordings, %d failed, artifacts in %s\n",
              result.recordings.size(), result.failures,
              config.output_dir.c_str());
  return result.failures > 0 ? 1 : 0;
}

int Main(int argc, char *argv[]) {
  CLI::App app{"diarpipe: deterministic speaker-diarization pipeline toolkit"};
  app.require_subcommand(1);

  // simulate
  uint64_t sim_seed = 0;
  int sim_sessions = 2, sim_speakers = 3;
  double sim_duration = 300.0, sim_overlap = 0.2, sim_noise = 0.1;
  std::string sim_out;
  CLI::App *simulate =
      app.add_subcommand("simulate", "Generate synthetic sessions");
  simulate->add_option("--seed", sim_seed, "Batch seed");
  simulate->add_option("--sessions", sim_sessions, "Number of sessions")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--speakers", sim_speakers, "Speakers per session")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--duration", sim_duration, "Session length, seconds")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--overlap", sim_overlap, "Target overlap ratio");
  simulate->add_option("--noise", sim_noise, "Embedding noise level");
  simulate->add_option("--out", sim_out, "Output directory")->required();

  // sad-fuse
  std::vector<std::string> sf_inputs;
  std::string sf_weights, sf_out, sf_segments;
  double sf_threshold = 0.5, sf_min_speech = 0.2, sf_min_silence = 0.3;
  CLI::App *sad_fuse =
      app.add_subcommand("sad-fuse", "Fuse speech-activity posteriors");
  sad_fuse->add_option("--in", sf_inputs, "Posterior files")
      ->required()
      ->expected(1, -1);
  sad_fuse->add_option("--weights", sf_weights, "Comma-separated weights");
  sad_fuse->add_option("--threshold", sf_threshold, "Decision threshold");
  sad_fuse->add_option("--out", sf_out, "Fused posterior file")->required();
  sad_fuse->add_option("--segments", sf_segments,
                       "Also write smoothed speech segments (RTTM)");
  sad_fuse->add_option("--min-speech", sf_min_speech, "Shortest speech run");
  sad_fuse->add_option("--min-silence", sf_min_silence,
                       "Shortest kept silence");

  // cluster
  std::string cl_embeddings, cl_out;
  double cl_noise = 0.1, cl_alpha = 0.5;
  AhcConfig cl_ahc;
  BhmmConfig cl_bhmm;
  CLI::App *cluster =
      app.add_subcommand("cluster", "Cluster an embedding table");
  cluster->add_option("--embeddings", cl_embeddings, "Embedding table file")
      ->required();
  cluster->add_option("--noise", cl_noise, "Within-speaker noise level")
      ->check(CLI::PositiveNumber);
  cluster->add_option("--alpha", cl_alpha, "Scoring interpolation weight");
  cluster->add_option("--ahc-bias", cl_ahc.threshold_bias,
                      "Agglomeration threshold bias");
  cluster->add_option("--target-energy", cl_ahc.target_energy,
                      "Session projection energy fraction");
  cluster->add_option("--max-iters", cl_bhmm.max_iters,
                      "Resegmentation iterations");
  cluster->add_option("--smoothing", cl_bhmm.smoothing_factor,
                      "Resegmentation smoothing factor");
  cluster->add_option("--lda-dim", cl_bhmm.lda_dim,
                      "Resegmentation projection cap");
  cluster->add_option("--loop-prob", cl_bhmm.loop_probability,
                      "State loop probability");
  cluster->add_option("--out", cl_out, "Output RTTM")->required();

  // fuse
  std::vector<std::string> fu_inputs;
  std::string fu_names, fu_uem, fu_weights, fu_out;
  double fu_exponent = 1.0;
  bool fu_print = false;
  CLI::App *fuse =
      app.add_subcommand("fuse", "Overlap-aware hypothesis fusion");
  fuse->add_option("--in", fu_inputs, "Hypothesis RTTMs")
      ->required()
      ->expected(2, -1);
  fuse->add_option("--names", fu_names, "Comma-separated system names");
  fuse->add_option("--uem", fu_uem, "Scoring regions")->required();
  fuse->add_option("--weights", fu_weights,
                   "Explicit weights (skip rank weighting)");
  fuse->add_option("--rank-exponent", fu_exponent, "Rank weighting exponent");
  fuse->add_flag("--print-weights", fu_print, "Print the weights used");
  fuse->add_option("--out", fu_out, "Fused RTTM")->required();

  // route
  std::string ro_domain, ro_config;
  CLI::App *route =
      app.add_subcommand("route", "Print per-domain processing plans");
  route->add_option("--domain", ro_domain, "Single domain to resolve");
  route->add_option("--config", ro_config, "Run config for table overrides");

  // score-der / score-jer / score-sad
  std::string sd_ref, sd_hyp, sd_uem;
  double sd_collar = 0.0;
  bool sd_no_overlap = false;
  CLI::App *score_der =
      app.add_subcommand("score-der", "Diarization error rate");
  score_der->add_option("--ref", sd_ref, "Reference RTTM")->required();
  score_der->add_option("--hyp", sd_hyp, "Hypothesis RTTM")->required();
  score_der->add_option("--uem", sd_uem, "Scoring regions")->required();
  score_der->add_option("--collar", sd_collar, "Boundary collar, seconds");
  score_der->add_flag("--no-overlap", sd_no_overlap,
                      "Exclude overlapped reference speech");

  std::string sj_ref, sj_hyp, sj_uem;
  CLI::App *score_jer = app.add_subcommand("score-jer", "Jaccard error rate");
  score_jer->add_option("--ref", sj_ref, "Reference RTTM")->required();
  score_jer->add_option("--hyp", sj_hyp, "Hypothesis RTTM")->required();
  score_jer->add_option("--uem", sj_uem, "Scoring regions")->required();

  std::string ss_ref, ss_hyp, ss_uem;
  CLI::App *score_sad =
      app.add_subcommand("score-sad", "Speech-activity error");
  score_sad->add_option("--ref", ss_ref, "Reference RTTM")->required();
  score_sad->add_option("--hyp", ss_hyp, "Speech hypothesis RTTM")->required();
  score_sad->add_option("--uem", ss_uem, "Scoring regions")->required();

  // finalize
  std::vector<std::string> fi_candidates;
  std::string fi_ref, fi_uem, fi_domains, fi_out, fi_manifest, fi_tokens;
  double fi_neighborhood = 2.0;
  std::string fi_token = "[laugh]";
  CLI::App *finalize = app.add_subcommand(
      "finalize", "Per-domain selection plus token assignment");
  finalize->add_option("--candidate", fi_candidates, "NAME=FILE, repeatable")
      ->required()
      ->expected(1, -1);
  finalize->add_option("--dev-ref", fi_ref, "Dev reference RTTM")->required();
  finalize->add_option("--dev-uem", fi_uem, "Dev scoring regions")->required();
  finalize->add_option("--domains", fi_domains,
                       "Recording-to-domain map file")
      ->required();
  finalize->add_option("--out", fi_out, "Final RTTM")->required();
  finalize->add_option("--manifest", fi_manifest, "Selection manifest JSON");
  finalize->add_option("--tokens", fi_tokens, "Token annotation file");
  finalize->add_option("--neighborhood", fi_neighborhood,
                       "Token assignment window, seconds");
  finalize->add_option("--token", fi_token, "Token string to assign");

  // pipeline-run
  std::string pr_config;
  CLI::App *pipeline_run =
      app.add_subcommand("pipeline-run", "Run the full batch pipeline");
  pipeline_run->add_option("--config", pr_config, "Run config JSON")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed())
      return CmdSimulate(sim_seed, sim_sessions, sim_speakers, sim_duration,
                         sim_overlap, sim_noise, sim_out);
    if (sad_fuse->parsed())
      return CmdSadFuse(sf_inputs, sf_weights, sf_threshold, sf_out,
                        sf_segments, sf_min_speech, sf_min_silence);
    if (cluster->parsed())
      return CmdCluster(cl_embeddings, cl_noise, cl_alpha, cl_ahc, cl_bhmm,
                        cl_out);
    if (fuse->parsed())
      return CmdFuse(fu_inputs, fu_names, fu_uem, fu_weights, fu_exponent,
                     fu_out, fu_print);
    if (route->parsed()) return CmdRoute(ro_domain, ro_config);
    if (score_der->parsed())
      return CmdScoreDer(sd_ref, sd_hyp, sd_uem, sd_collar, sd_no_overlap);
    if (score_jer->parsed()) return CmdScoreJer(sj_ref, sj_hyp, sj_uem);
    if (score_sad->parsed()) return CmdScoreSad(ss_ref, ss_hyp, ss_uem);
    if (finalize->parsed())
      return CmdFinalize(fi_candidates, fi_ref, fi_uem, fi_domains, fi_out,
                         fi_manifest, fi_tokens, fi_neighborhood, fi_token);
    if (pipeline_run->parsed()) return CmdPipelineRun(pr_config);
  } catch (const std::exception &err) {
    std::fprintf(stderr, "diarpipe: error: %s\n", err.what());
    return 1;
  }
  return 1;
}

}  // namespace
}  // namespace diar

int main(int argc, char *argv[]) { return diar::Main(argc, argv); }
