// Copyright 2026 The a3reward Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <random>

#include "a3/error.hpp"
#include "a3/reward_aggregate.hpp"
#include "a3/reward_general.hpp"
#include "a3/reward_rule.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace a3;

namespace {

SampleRecord record(RuleId rule, GroundTruth truth) {
  SampleRecord r;
  r.sample_id = "x";
  r.rule = rule;
  r.image_ref = "img.png";
  r.instruction = "judge";
  r.ground_truth = std::move(truth);
  return r;
}

}  // namespace

TEST_CASE("format reward is the validity indicator") {
  ParsedResponse p;
  CHECK(formatReward(p) == 0.0);
  p.format_valid = true;
  CHECK(formatReward(p) == 1.0);
  CHECK(formatReward(parseTranscript("<think>blurry edges</think><answer>unsuitable</answer>",
                                     RuleId::ImageFidelity)) == 1.0);
}

TEST_CASE("sentence reward") {
  CHECK(sentenceReward("A. B. C. D.") == 1.0);
  CHECK(sentenceReward("A. A. A. A.") == 0.25);
  CHECK(sentenceReward("") == 1.0);
  CHECK(sentenceReward("Bright logo! bright LOGO. Bright, logo?") == doctest::Approx(1.0 / 3.0));
  CHECK(sentenceReward("\xe8\x89\xb2\xe5\xbd\xa9\xe5\x92\x8c\xe8\xb0\x90\xe3\x80\x82 "
                       "\xe8\x89\xb2\xe5\xbd\xa9\xe5\x92\x8c\xe8\xb0\x90\xe3\x80\x82") == 0.5);
  CHECK(segmentSentences("Version 3.5 works. Next.").size() == 2);
  CHECK(segmentSentences("... !!").empty());
}

TEST_CASE("normalization options") {
  SentenceNormalization keep_case;
  keep_case.lowercase = false;
  CHECK(normalizeSentence("Hello,   World!", {}) == "hello world");
  CHECK(normalizeSentence("Hello,   World!", keep_case) == "Hello World");
  SentenceNormalization raw{false, false, false};
  CHECK(normalizeSentence("  A  b. ", raw) == "A  b.");
  CHECK(sentenceReward("Same. same.", keep_case) == 1.0);
}

TEST_CASE("n-gram reward") {
  CHECK(ngramReward("alpha beta gamma") == 1.0);
  CHECK(ngramReward("a b a b a b", {2, {}}) == doctest::Approx(0.4));
  CHECK(ngramReward("") == 1.0);
  CHECK(ngramReward("A b A B", {2, {}}) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(ngramReward("a b c", {1, {}}), Error);
}

TEST_CASE("non-repeat reward averages both terms") {
  CHECK(nonRepeatReward("The logo is sharp. The banner is bright.") == 1.0);
  const NonRepeatConfig bigram{2, {}};
  const double expected = 0.5 * (0.25 + oracle::ngramRewardBrute("A. A. A. A.", 2));
  CHECK(nonRepeatReward("A. A. A. A.", bigram) == doctest::Approx(expected));
  const auto d = nonRepeatDetail("");
  CHECK(d.value == 1.0);
  CHECK(d.sentences_vacuous);
  CHECK(d.ngrams_vacuous);
  const auto short_text = nonRepeatDetail("Two words.");
  CHECK_FALSE(short_text.sentences_vacuous);
  CHECK(short_text.ngrams_vacuous);
}

TEST_CASE("non-repeat terms agree with brute force") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const std::string text = testgen::randomText(rng);
    CHECK(sentenceReward(text) == doctest::Approx(oracle::sentenceRewardBrute(text)).epsilon(1e-12));
    for (int n : {2, 3, 4})
      CHECK(ngramReward(text, {n, {}}) == doctest::Approx(oracle::ngramRewardBrute(text, n)).epsilon(1e-12));
  }
}

TEST_CASE("accuracy reward") {
  CHECK(accuracyReward(true, true) == 1.0);
  CHECK(accuracyReward(true, false) == 0.0);
  CHECK(accuracyReward(false, false) == 1.0);
}

TEST_CASE("tool reward") {
  const std::string cited =
      "<tool_call name=hue_analysis>{}</tool_call><tool_output id=1>c</tool_output>"
      "<think>see [tool:hue_analysis]</think><answer>yes</answer>";
  CHECK(toolReward(parseTranscript(cited, RuleId::HueAdaptability), RuleId::HueAdaptability) == 1.0);
  const std::string uncited =
      "<tool_call name=hue_analysis>{}</tool_call><tool_output id=1>c</tool_output>"
      "<think>no marker</think><answer>yes</answer>";
  CHECK(toolReward(parseTranscript(uncited, RuleId::HueAdaptability), RuleId::HueAdaptability) == 0.0);
  CHECK(toolReward(parseTranscript("<think>x</think><answer>yes</answer>", RuleId::HueAdaptability),
                   RuleId::HueAdaptability) == 0.0);
  // A cited call to the wrong tool does not count.
  CHECK(toolReward(parseTranscript(cited, RuleId::CopywritingTone), RuleId::CopywritingTone) == 0.0);
  try {
    toolReward(ParsedResponse{}, RuleId::ImageFidelity);
    FAIL("expected RuleNotToolAssisted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::RuleNotToolAssisted);
  }
}

TEST_CASE("iou") {
  const BoundingBox a{0, 0, 10, 10};
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, {20, 20, 30, 30}) == 0.0);
  CHECK(iou(a, {10, 0, 20, 10}) == 0.0);
  CHECK(iou(a, {0, 5, 10, 15}) == doctest::Approx(1.0 / 3.0));
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto p = testgen::randomBox(rng, 40), q = testgen::randomBox(rng, 40);
    CHECK(iou(p, q) == iou(q, p));
    CHECK(iou(p, q) >= 0.0);
    CHECK(iou(p, q) <= 1.0);
  }
}

TEST_CASE("iou reward") {
  const std::vector<BoundingBox> g{{0, 0, 10, 10}, {20, 20, 40, 40}};
  CHECK(iouReward(g, g) == 1.0);
  CHECK(iouReward(g, std::vector<BoundingBox>{{0, 0, 10, 10}}) == 0.5);
  CHECK(iouReward(std::vector<BoundingBox>{{0, 0, 10, 10}}, std::vector<BoundingBox>{{0, 5, 10, 15}}) == 0.0);
  CHECK(iouReward({}, {}) == 1.0);
  CHECK(iouReward(g, {}) == 0.0);
  CHECK(iouReward({}, g) == 0.0);
  // Exactly one half does not count.
  CHECK(iouReward(std::vector<BoundingBox>{{0, 0, 10, 10}}, std::vector<BoundingBox>{{0, 0, 5, 10}}) == 0.0);
  CHECK(iouReward(std::vector<BoundingBox>{{0, 0, 100, 100}}, std::vector<BoundingBox>{{0, 0, 100, 51}}) == 1.0);
  // Extra predictions dilute the reward.
  CHECK(iouReward(std::vector<BoundingBox>{{0, 0, 10, 10}},
                  std::vector<BoundingBox>{{0, 0, 10, 10}, {50, 50, 60, 60}, {70, 70, 80, 80}}) ==
        doctest::Approx(1.0 / 3.0));
}

TEST_CASE("continuous score reward") {
  CHECK(continuousScoreReward(3.0, 3.0) == 1.0);
  CHECK(continuousScoreReward(4.0, 3.0) == doctest::Approx(0.7213).epsilon(1e-4));
  CHECK(continuousScoreReward(5.0, 1.0) < 0.01);
  CHECK(kDefaultSigma == 1.237);
  CHECK_THROWS_AS(continuousScoreReward(0.5, 3.0), Error);
  CHECK_THROWS_AS(continuousScoreReward(3.0, 5.5), Error);
  CHECK_THROWS_AS(continuousScoreReward(3.0, 3.0, {0.0}), Error);
  CHECK_THROWS_AS(continuousScoreReward(3.0, 3.0, {-1.0}), Error);
}

TEST_CASE("continuous score reward decays with distance and tightens with sigma") {
  for (double d = 0.0; d < 3.9; d += 0.1) {
    CHECK(continuousScoreReward(1.0 + d + 0.1, 1.0) < continuousScoreReward(1.0 + d, 1.0));
    CHECK(continuousScoreReward(1.0, 1.0 + d + 0.1) < continuousScoreReward(1.0, 1.0 + d));
  }
  for (double sigma = 0.2; sigma < 3.0; sigma += 0.2)
    CHECK(continuousScoreReward(4.0, 2.5, {sigma}) < continuousScoreReward(4.0, 2.5, {sigma + 0.2}));
}

TEST_CASE("total reward") {
  RewardWeights w;
  CHECK(totalReward({{RewardSignal::Format, 0.7}}, w, SignalSet{RewardSignal::Format}) == doctest::Approx(0.7));
  w.set(RewardSignal::Format, 5.0);
  CHECK(totalReward({{RewardSignal::Format, 0.7}}, w, SignalSet{RewardSignal::Format}) == doctest::Approx(0.7));
  RewardWeights ones;
  CHECK(totalReward({{RewardSignal::Format, 1.0}, {RewardSignal::NonRepeat, 0.5}}, ones,
                    SignalSet{RewardSignal::Format, RewardSignal::NonRepeat}) == 0.75);
  w.set(RewardSignal::NonRepeat, 0.25);
  CHECK(totalReward({{RewardSignal::Format, 1.0}, {RewardSignal::NonRepeat, 1.0}}, w,
                    SignalSet{RewardSignal::Format, RewardSignal::NonRepeat}) == 1.0);
  // Signals outside the active set are ignored.
  CHECK(totalReward({{RewardSignal::Format, 1.0}, {RewardSignal::IoU, 0.0}}, ones, SignalSet{RewardSignal::Format}) ==
        1.0);

  RewardWeights zero;
  zero.set(RewardSignal::Format, 0.0);
  try {
    totalReward({{RewardSignal::Format, 1.0}}, zero, SignalSet{RewardSignal::Format});
    FAIL("expected ZeroWeightSum");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroWeightSum);
  }
  CHECK_THROWS_AS(totalReward({}, ones, SignalSet{RewardSignal::Format}), Error);
  CHECK_THROWS_AS(totalReward({}, ones, SignalSet{}), Error);
  CHECK_THROWS_AS(zero.set(RewardSignal::Tool, -1.0), Error);
  CHECK_THROWS_AS(zero.set(RewardSignal::Tool, std::nan("")), Error);
}

TEST_CASE("equal signal values give exactly that value") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0), alpha(0.1, 5.0);
  const SignalSet active{RewardSignal::Format, RewardSignal::NonRepeat, RewardSignal::Accuracy, RewardSignal::Tool};
  for (int i = 0; i < 2000; ++i) {
    const double v = unit(rng);
    SignalValues values;
    RewardWeights w;
    active.forEach([&](RewardSignal s) {
      values[s] = v;
      w.set(s, alpha(rng));
    });
    CHECK(totalReward(values, w, active) == v);
  }
}

TEST_CASE("perfect promotional iconography response") {
  const auto r = record(RuleId::PromotionalIconography, BoxTruth{true, {{0, 0, 10, 10}, {20, 20, 30, 30}}});
  const auto b =
      scoreSample(r, "<think>Two discount badges are visible.</think><answer>suitable [[20,20,30,30],[0,0,10,10]]</answer>");
  CHECK(b.format_valid);
  for (const auto& [signal, value] : b.per_signal) CHECK(value == 1.0);
  CHECK(b.total == 1.0);
  CHECK(b.notes.empty());
}

TEST_CASE("malformed transcript scores below its well-formed twin") {
  const auto r = record(RuleId::ImageFidelity, BinaryTruth{true});
  const auto good = scoreSample(r, "<think>Crisp product edges.</think><answer>suitable</answer>");
  const auto bad = scoreSample(r, "<think>Crisp product edges.</think><answer>suitable</answer> trailing");
  CHECK(good.per_signal.at(RewardSignal::Format) == 1.0);
  CHECK(bad.per_signal.at(RewardSignal::Format) == 0.0);
  CHECK(bad.per_signal.at(RewardSignal::Accuracy) == 0.0);
  CHECK(bad.per_signal.at(RewardSignal::NonRepeat) == good.per_signal.at(RewardSignal::NonRepeat));
  CHECK(bad.total < good.total);
  CHECK(bad.notes == std::vector<std::string>{"format_invalid"});
}

TEST_CASE("score rules and notes") {
  const auto r = record(RuleId::AestheticAttribute, ScoreTruth{4.0});
  auto b = scoreSample(r, "<think>Balanced and calm palette overall.</think><answer>4</answer>");
  CHECK(b.per_signal.at(RewardSignal::ContinuousScore) == 1.0);
  CHECK_FALSE(b.per_signal.count(RewardSignal::Accuracy));
  b = scoreSample(r, "<think>Stunning work.</think><answer>9</answer>");
  CHECK(b.per_signal.at(RewardSignal::ContinuousScore) == doctest::Approx(std::exp(-1.0 / (2 * 1.237 * 1.237))));
  CHECK(b.notes == std::vector<std::string>{"score_clamped", "ngrams_vacuous"});
  b = scoreSample(r, std::nullopt);
  CHECK(b.notes ==
        std::vector<std::string>{"missing_transcript", "format_invalid", "sentences_vacuous", "ngrams_vacuous"});
  CHECK(b.total == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("tool rewards survive a format failure") {
  const auto r = record(RuleId::CopywritingTone, BinaryTruth{true});
  const auto b = scoreSample(r,
                             "<tool_call name=ocr>{}</tool_call><tool_output id=1>SALE</tool_output>"
                             "<think>The slogan [tool:ocr] is punchy.</think><answer>definitely</answer>");
  CHECK_FALSE(b.format_valid);
  CHECK(b.per_signal.at(RewardSignal::Tool) == 1.0);
}

TEST_CASE("zero weight drops a signal from the total") {
  const auto r = record(RuleId::ImageFidelity, BinaryTruth{false});
  ScoringConfig cfg;
  cfg.weights.set(RewardSignal::Accuracy, 0.0);
  const auto b = scoreSample(r, "<think>Crisp product edges.</think><answer>suitable</answer>", cfg);
  CHECK(b.per_signal.at(RewardSignal::Accuracy) == 0.0);
  CHECK(b.total == 1.0);
}

TEST_CASE("inconsistent records are rejected") {
  const auto r = record(RuleId::AestheticAttribute, BinaryTruth{true});
  CHECK_THROWS_AS(scoreSample(r, "<think>x</think><answer>3</answer>"), Error);
}

TEST_CASE("breakdown json line") {
  const auto r = record(RuleId::ImageFidelity, BinaryTruth{true});
  const auto b = scoreSample(r, "<think>Crisp product edges.</think><answer>yes</answer>");
  CHECK(toJsonLine(b) ==
        "{\"sample_id\":\"x\",\"rule\":\"image_fidelity\",\"format_valid\":true,"
        "\"active\":[\"format\",\"non_repeat\",\"accuracy\"],"
        "\"signals\":{\"format\":1.000000,\"non_repeat\":1.000000,\"accuracy\":1.000000},"
        "\"weights\":{\"format\":1.000000,\"non_repeat\":1.000000,\"accuracy\":1.000000,\"tool\":1.000000,"
        "\"iou\":1.000000,\"continuous_score\":1.000000},\"total\":1.000000,\"notes\":[]}");
}
