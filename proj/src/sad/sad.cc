// sad/sad.cc

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

#include "sad/sad.h"

#include <cmath>
#include <sstream>

#include "base/error.h"

namespace diar {

namespace {
constexpr double kEnergyFloor = 1e-10;
}  // namespace

SadPosterior EnergySad(const std::vector<double> &energy,
                       const std::string &recording_id, double frame_step) {
  if (energy.empty()) throw EmptyStream("energy stream is empty");
  if (frame_step <= 0.0) throw DiarError("frame_step must be positive");

  std::vector<double> log_e(energy.size());
  for (size_t i = 0; i < energy.size(); ++i)
    log_e[i] = std::log(std::max(energy[i], kEnergyFloor));

  double mean = 0.0;
  for (double v : log_e) mean += v;
  mean /= static_cast<double>(log_e.size());
  double var = 0.0;
  for (double v : log_e) var += (v - mean) * (v - mean);
  var /= static_cast<double>(log_e.size());
  double sd = std::sqrt(var);
  // A numerically constant stream must not amplify rounding noise.
  double sd_floor = 1e-12 * std::max(1.0, std::abs(mean));

  SadPosterior out;
  out.recording_id = recording_id;
  out.frame_step = frame_step;
  out.speech_prob.resize(log_e.size());
  for (size_t i = 0; i < log_e.size(); ++i) {
    double z = sd > sd_floor ? (log_e[i] - mean) / sd : 0.0;
    out.speech_prob[i] = 1.0 / (1.0 + std::exp(-z));
  }
  return out;
}

SadPosterior FuseSad(const std::vector<SadPosterior> &systems,
                     const SadFusionConfig &config) {
  if (systems.empty()) throw EmptyInput("no systems to fuse");
  if (config.weights.size() != systems.size())
    throw LengthMismatch("one weight per system required");
  double weight_sum = 0.0;
  for (double w : config.weights) {
    if (w < 0.0) throw ConfigInvalid("sad fusion weights must be nonnegative");
    weight_sum += w;
  }
  if (weight_sum <= 0.0)
    throw ConfigInvalid("sad fusion weights must not all be zero");

  const SadPosterior &first = systems.front();
  for (const SadPosterior &s : systems) {
    if (s.recording_id != first.recording_id)
      throw RecordingMismatch("systems refer to different recordings");
    if (s.frame_step != first.frame_step)
      throw StepMismatch("systems use different frame steps");
    if (s.speech_prob.size() != first.speech_prob.size())
      throw LengthMismatch("systems have different lengths");
  }

  SadPosterior out;
  out.recording_id = first.recording_id;
  out.frame_step = first.frame_step;
  out.speech_prob.assign(first.speech_prob.size(), 0.0);
  for (size_t i = 0; i < systems.size(); ++i) {
    double w = config.weights[i] / weight_sum;
    for (size_t f = 0; f < out.speech_prob.size(); ++f)
      out.speech_prob[f] += w * systems[i].speech_prob[f];
  }
  return out;
}

RttmDocument BinarizeAndSmooth(const SadPosterior &post, double threshold,
                               double min_speech, double min_silence,
                               const std::string &speaker_id) {
  if (threshold <= 0.0 || threshold >= 1.0)
    throw ConfigInvalid("decision threshold must lie strictly inside (0,1)");

  const double step = post.frame_step;
  const int n = static_cast<int>(post.speech_prob.size());

  // Speech runs as frame ranges [begin, end).
  std::vector<std::pair<int, int>> runs;
  int f = 0;
  while (f < n) {
    if (post.speech_prob[f] < threshold) {
      ++f;
      continue;
    }
    int begin = f;
    while (f < n && post.speech_prob[f] >= threshold) ++f;
    runs.emplace_back(begin, f);
  }

  // Bridge gaps strictly shorter than min_silence.
  std::vector<std::pair<int, int>> bridged;
  for (const auto &run : runs) {
    if (!bridged.empty() &&
        (run.first - bridged.back().second) * step < min_silence - 1e-9) {
      bridged.back().second = run.second;
    } else {
      bridged.push_back(run);
    }
  }

  std::vector<Turn> turns;
  for (const auto &run : bridged) {
    double duration = (run.second - run.first) * step;
    if (duration < min_speech - 1e-9) continue;
    turns.emplace_back(post.recording_id, speaker_id,
                       TimeInterval(run.first * step, run.second * step));
  }
  return RttmDocument(std::move(turns));
}

SadPosterior ParseSadPosterior(const std::string &text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  SadPosterior out;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string rec, step;
      if (!(fields >> rec >> step))
        throw MalformedLine(line_no,
                            "posterior header needs <recording> <step>");
      out.recording_id = rec;
      try {
        size_t used = 0;
        out.frame_step = std::stod(step, &used);
        if (used != step.size()) throw std::invalid_argument(step);
      } catch (const std::exception &) {
        throw MalformedLine(line_no, "bad frame step: " + step);
      }
      if (out.frame_step <= 0.0)
        throw MalformedLine(line_no, "frame step must be positive");
      have_header = true;
      continue;
    }
    std::string token;
    fields >> token;
    double p = 0.0;
    try {
      size_t used = 0;
      p = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception &) {
      throw MalformedLine(line_no, "bad probability: " + token);
    }
    if (p < 0.0 || p > 1.0)
      throw MalformedLine(line_no, "probability out of [0,1]: " + token);
    out.speech_prob.push_back(p);
  }
  if (!have_header) throw MalformedLine(1, "missing posterior header");
  return out;
}

std::string WriteSadPosterior(const SadPosterior &post) {
  std::ostringstream out;
  out << post.recording_id << ' ' << post.frame_step << '\n';
  char buf[32];
  for (double p : post.speech_prob) {
    std::snprintf(buf, sizeof(buf), "%.6f\n", p);
    out << buf;
  }
  return out.str();
}

}  // namespace diar
