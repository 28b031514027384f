// tests/test_sad.cc

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

#include <algorithm>
#include <cmath>

#include "doctest.h"

#include "base/error.h"
#include "base/rng.h"
#include "formats/frame_labels.h"
#include "sad/sad.h"

namespace diar {
namespace {

TEST_CASE("energy sad on constant input is maximally uncertain") {
  SadPosterior p = EnergySad(std::vector<double>(50, 3.0), "rec0");
  REQUIRE(p.speech_prob.size() == 50);
  for (double v : p.speech_prob) CHECK(v == doctest::Approx(0.5));
  CHECK_THROWS_AS(EnergySad({}, "rec0"), EmptyStream);
}

TEST_CASE("energy sad separates two levels") {
  std::vector<double> energy;
  for (int i = 0; i < 100; ++i) energy.push_back(i < 50 ? 100.0 : 1.0);
  SadPosterior p = EnergySad(energy, "rec0");
  for (int i = 0; i < 50; ++i) CHECK(p.speech_prob[i] > 0.5);
  for (int i = 50; i < 100; ++i) CHECK(p.speech_prob[i] < 0.5);
}

TEST_CASE("energy sad recovers a 20 dB speech mask") {
  Rng rng(1234);
  const int n = 5000;
  std::vector<bool> mask(n);
  std::vector<double> energy(n);
  for (int i = 0; i < n; ++i) {
    mask[i] = rng.Bernoulli(0.5);
    // +20 dB gives a 100x energy ratio; multiplicative noise is mild.
    double log_e = (mask[i] ? std::log(100.0) : 0.0) + 0.2 * rng.Normal();
    energy[i] = std::exp(log_e);
  }
  SadPosterior p = EnergySad(energy, "rec0");
  int errors = 0;
  for (int i = 0; i < n; ++i)
    if ((p.speech_prob[i] >= 0.5) != mask[i]) ++errors;
  CHECK(static_cast<double>(errors) / n < 0.02);
}

SadPosterior MakePosterior(const std::string &rec, double step,
                           std::vector<double> probs) {
  SadPosterior p;
  p.recording_id = rec;
  p.frame_step = step;
  p.speech_prob = std::move(probs);
  return p;
}

TEST_CASE("fusion arithmetic") {
  SadPosterior a = MakePosterior("rec0", 0.01, {1.0, 1.0, 0.0});
  SadPosterior b = MakePosterior("rec0", 0.01, {1.0, 0.0, 0.0});
  SadPosterior c = MakePosterior("rec0", 0.01, {0.0, 1.0, 0.0});
  SadFusionConfig cfg;
  cfg.weights = {1.0, 1.0, 1.0};
  SadPosterior fused = FuseSad({a, b, c}, cfg);
  CHECK(fused.speech_prob[0] == doctest::Approx(2.0 / 3.0));
  CHECK(fused.speech_prob[1] == doctest::Approx(2.0 / 3.0));
  CHECK(fused.speech_prob[2] == doctest::Approx(0.0));

  SadFusionConfig one;
  one.weights = {1.0};
  SadPosterior same = FuseSad({a}, one);
  CHECK(same.speech_prob == a.speech_prob);

  SadPosterior identical = FuseSad({a, a, a}, cfg);
  for (size_t i = 0; i < a.speech_prob.size(); ++i)
    CHECK(identical.speech_prob[i] == doctest::Approx(a.speech_prob[i]));
}

TEST_CASE("fusion is invariant under joint permutation") {
  Rng rng(77);
  std::vector<SadPosterior> systems;
  for (int s = 0; s < 3; ++s) {
    std::vector<double> probs;
    for (int f = 0; f < 200; ++f) probs.push_back(rng.Uniform());
    systems.push_back(MakePosterior("rec0", 0.01, std::move(probs)));
  }
  SadFusionConfig cfg;
  cfg.weights = {0.2, 0.5, 0.3};
  SadPosterior forward = FuseSad(systems, cfg);

  std::vector<SadPosterior> reversed = {systems[2], systems[0], systems[1]};
  SadFusionConfig rcfg;
  rcfg.weights = {0.3, 0.2, 0.5};
  SadPosterior backward = FuseSad(reversed, rcfg);
  for (size_t f = 0; f < forward.speech_prob.size(); ++f)
    CHECK(forward.speech_prob[f] ==
          doctest::Approx(backward.speech_prob[f]).epsilon(1e-12));
}

TEST_CASE("fusion validation") {
  SadPosterior a = MakePosterior("rec0", 0.01, {0.5, 0.5});
  SadFusionConfig cfg;
  cfg.weights = {1.0, 1.0};
  CHECK_THROWS_AS(FuseSad({}, cfg), EmptyInput);
  CHECK_THROWS_AS(FuseSad({a}, cfg), LengthMismatch);
  SadPosterior b = MakePosterior("rec0", 0.01, {0.5});
  CHECK_THROWS_AS(FuseSad({a, b}, cfg), LengthMismatch);
  SadPosterior c = MakePosterior("rec0", 0.02, {0.5, 0.5});
  CHECK_THROWS_AS(FuseSad({a, c}, cfg), StepMismatch);
  SadPosterior d = MakePosterior("rec1", 0.01, {0.5, 0.5});
  CHECK_THROWS_AS(FuseSad({a, d}, cfg), RecordingMismatch);
  SadFusionConfig zero;
  zero.weights = {0.0, 0.0};
  CHECK_THROWS_AS(FuseSad({a, a}, zero), ConfigInvalid);
  SadFusionConfig negative;
  negative.weights = {1.0, -0.5};
  CHECK_THROWS_AS(FuseSad({a, a}, negative), ConfigInvalid);
}

TEST_CASE("majority vote beats independent single-system noise") {
  // Three binary systems each flipping truth with probability 0.1.  The
  // fused error is P(at least 2 flip) = 3 p^2 (1-p) + p^3 = 0.028.
  Rng rng(4321);
  const int n = 100000;
  const double flip = 0.1;
  std::vector<bool> truth(n);
  std::vector<SadPosterior> systems(3);
  for (int s = 0; s < 3; ++s) {
    systems[s].recording_id = "rec0";
    systems[s].frame_step = 0.01;
    systems[s].speech_prob.resize(n);
  }
  for (int f = 0; f < n; ++f) {
    truth[f] = rng.Bernoulli(0.5);
    for (int s = 0; s < 3; ++s) {
      bool vote = truth[f] != rng.Bernoulli(flip);
      systems[s].speech_prob[f] = vote ? 1.0 : 0.0;
    }
  }
  SadFusionConfig cfg;
  cfg.weights = {1.0, 1.0, 1.0};
  SadPosterior fused = FuseSad(systems, cfg);
  int wrong = 0;
  for (int f = 0; f < n; ++f)
    if ((fused.speech_prob[f] >= cfg.decision_threshold) != truth[f]) ++wrong;
  double err = static_cast<double>(wrong) / n;
  CHECK(err < 0.06);
  double expected = 3 * flip * flip * (1 - flip) + flip * flip * flip;
  CHECK(std::abs(err - expected) < 0.005);
}

TEST_CASE("fused error at most the worst single error across seeds") {
  const double flips[3] = {0.05, 0.10, 0.15};
  int good = 0;
  for (int seed = 0; seed < 100; ++seed) {
    Rng rng(9000 + seed);
    const int n = 2000;
    std::vector<SadPosterior> systems(3);
    for (int s = 0; s < 3; ++s) {
      systems[s].recording_id = "rec0";
      systems[s].frame_step = 0.01;
      systems[s].speech_prob.resize(n);
    }
    std::vector<bool> truth(n);
    for (int f = 0; f < n; ++f) {
      truth[f] = rng.Bernoulli(0.5);
      for (int s = 0; s < 3; ++s)
        systems[s].speech_prob[f] =
            (truth[f] != rng.Bernoulli(flips[s])) ? 1.0 : 0.0;
    }
    SadFusionConfig cfg;
    cfg.weights = {1.0, 1.0, 1.0};
    SadPosterior fused = FuseSad(systems, cfg);
    double worst = 0.0;
    for (int s = 0; s < 3; ++s) {
      int wrong = 0;
      for (int f = 0; f < n; ++f)
        if ((systems[s].speech_prob[f] >= 0.5) != truth[f]) ++wrong;
      worst = std::max(worst, static_cast<double>(wrong) / n);
    }
    int wrong = 0;
    for (int f = 0; f < n; ++f)
      if ((fused.speech_prob[f] >= 0.5) != truth[f]) ++wrong;
    if (static_cast<double>(wrong) / n <= worst) ++good;
  }
  CHECK(good >= 95);
}

TEST_CASE("binarize examples") {
  CHECK(BinarizeAndSmooth(MakePosterior("rec0", 0.01,
                                        std::vector<double>(100, 0.0)))
            .empty());

  std::vector<double> probs(600, 0.0);
  for (int f = 200; f < 500; ++f) probs[f] = 1.0;
  RttmDocument doc =
      BinarizeAndSmooth(MakePosterior("rec0", 0.01, std::move(probs)));
  REQUIRE(doc.turns().size() == 1);
  CHECK(doc.turns()[0].interval.onset == doctest::Approx(2.0));
  CHECK(doc.turns()[0].interval.offset == doctest::Approx(5.0));
  CHECK(doc.turns()[0].speaker_id == "speech");
}

TEST_CASE("binarize bridges sub-threshold dips") {
  // 0.05 s dip inside a speech block; min_silence 0.1 swallows it.
  std::vector<double> probs(300, 1.0);
  for (int f = 100; f < 105; ++f) probs[f] = 0.0;
  RttmDocument merged = BinarizeAndSmooth(
      MakePosterior("rec0", 0.01, probs), 0.5, 0.2, 0.1);
  REQUIRE(merged.turns().size() == 1);
  CHECK(merged.turns()[0].interval == TimeInterval(0.0, 3.0));

  RttmDocument split = BinarizeAndSmooth(
      MakePosterior("rec0", 0.01, probs), 0.5, 0.2, 0.05);
  CHECK(split.turns().size() == 2);
}

TEST_CASE("binarize drops short speech") {
  std::vector<double> probs(300, 0.0);
  for (int f = 100; f < 110; ++f) probs[f] = 1.0;
  CHECK(BinarizeAndSmooth(MakePosterior("rec0", 0.01, probs), 0.5, 0.2, 0.3)
            .empty());
  CHECK(BinarizeAndSmooth(MakePosterior("rec0", 0.01, probs), 0.5, 0.1, 0.3)
            .turns()
            .size() == 1);
}

TEST_CASE("binarize is idempotent (property)") {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> probs(800);
    for (double &p : probs) p = rng.Uniform();
    SadPosterior post = MakePosterior("rec0", 0.01, std::move(probs));
    RttmDocument once = BinarizeAndSmooth(post);
    if (once.empty()) continue;
    // Re-binarize the binary reconstruction of the first pass.
    FrameLabels labels = TurnsToFrames(once, "rec0", 0.01,
                                       TimeInterval(0.0, 8.0));
    std::vector<double> rebuilt(800, 0.0);
    for (int f = 0; f < 800; ++f) {
      for (int s = 0; s < labels.num_speakers(); ++s)
        if (labels.activity[s][f]) rebuilt[f] = 1.0;
    }
    RttmDocument twice =
        BinarizeAndSmooth(MakePosterior("rec0", 0.01, std::move(rebuilt)));
    CHECK(twice == once);
  }
}

TEST_CASE("posterior file round-trip") {
  SadPosterior p = MakePosterior("rec0", 0.01, {0.0, 0.25, 1.0});
  SadPosterior q = ParseSadPosterior(WriteSadPosterior(p));
  CHECK(q.recording_id == "rec0");
  CHECK(q.frame_step == doctest::Approx(0.01));
  REQUIRE(q.speech_prob.size() == 3);
  CHECK(q.speech_prob[1] == doctest::Approx(0.25));

  CHECK_THROWS_AS(ParseSadPosterior(""), MalformedLine);
  CHECK_THROWS_AS(ParseSadPosterior("rec0\n"), MalformedLine);
  CHECK_THROWS_AS(ParseSadPosterior("rec0 0.01\n1.5\n"), MalformedLine);
  try {
    ParseSadPosterior("rec0 0.01\n0.5\nnope\n");
    CHECK(false);
  } catch (const MalformedLine &e) {
    CHECK(e.line_no() == 3);
  }
}

}  // namespace
}  // namespace diar
