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

// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "a3/assignment.hpp"
#include "a3/dataset.hpp"
#include "a3/error.hpp"
#include "a3/metrics.hpp"
#include "a3/qc.hpp"
#include "a3/reward_aggregate.hpp"
#include "a3/reward_general.hpp"
#include "a3/reward_rule.hpp"
#include "a3/visual_tools.hpp"
#include "commands.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace {

using namespace a3;
using Clock = std::chrono::steady_clock;

// Collects the first few failure descriptions for one criterion.
struct Check {
  std::size_t failures = 0;
  std::vector<std::string> first;
  std::string note;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures;
    if (first.size() < 3) first.push_back(what);
  }
};

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- continuous score ----

void gaussianGrid(Check& c) {
  const auto start = Clock::now();
  const double sigma = 1.237;
  std::size_t points = 0;
  double worst = 0.0;
  for (int i = 0; i < 40; ++i) {
    for (int j = 0; j < 25; ++j) {
      const double s = 1.0 + 4.0 * i / 39.0;
      const double ref = 1.0 + 4.0 * j / 24.0;
      const double direct = std::exp(-((s - ref) * (s - ref)) / (2.0 * sigma * sigma));
      const double got = continuousScoreReward(s, ref);
      worst = std::max(worst, std::abs(got - direct));
      c.expect(std::abs(got - direct) <= 1e-9, "s=" + num(s) + " ref=" + num(ref));
      ++points;
    }
  }
  const double elapsed = secondsSince(start);
  c.expect(points == 1000, "grid size " + std::to_string(points));
  c.expect(elapsed < 1.0, "runtime " + num(elapsed) + " s");
  c.note = std::to_string(points) + " points, max |err| " + num(worst) + ", " + num(elapsed) + " s";
}

// ---- total reward ----

void totalRewardProperties(Check& c) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> alpha(0.0, 5.0);
  std::bernoulli_distribution coin(0.5), zero(0.15);
  std::size_t tuples = 0, zero_sums = 0;
  while (tuples < 10000) {
    SignalSet active;
    SignalValues values;
    RewardWeights weights;
    for (RewardSignal s : kAllSignals) {
      if (coin(rng)) active.insert(s);
      values[s] = unit(rng);
      weights.set(s, zero(rng) ? 0.0 : alpha(rng));
    }
    if (active.empty()) continue;
    ++tuples;

    long double num_sum = 0, den_sum = 0;
    double lo = 1.0, hi = 0.0;
    for (RewardSignal s : kAllSignals) {
      if (!active.contains(s) || weights[s] == 0.0) continue;
      num_sum += static_cast<long double>(weights[s]) * values[s];
      den_sum += weights[s];
      lo = std::min(lo, values[s]);
      hi = std::max(hi, values[s]);
    }
    if (den_sum == 0) {
      ++zero_sums;
      bool threw = false;
      try {
        totalReward(values, weights, active);
      } catch (const Error& e) {
        threw = e.kind() == ErrorKind::ZeroWeightSum;
      }
      c.expect(threw, "zero active weight did not raise ZeroWeightSum");
      continue;
    }
    const double total = totalReward(values, weights, active);
    const double expected = static_cast<double>(num_sum / den_sum);
    c.expect(std::abs(total - expected) <= 1e-12, "definitional sum: " + num(total) + " vs " + num(expected));
    c.expect(total >= lo && total <= hi, "bounds: " + num(total) + " outside [" + num(lo) + ", " + num(hi) + "]");
    for (double k : {1e-3, 0.37, 7.5, 1e4}) {
      RewardWeights scaled;
      for (RewardSignal s : kAllSignals) scaled.set(s, weights[s] * k);
      const double again = totalReward(values, scaled, active);
      c.expect(std::abs(again - total) <= 1e-12, "scale " + num(k) + ": " + num(again) + " vs " + num(total));
    }
  }
  c.note = std::to_string(tuples) + " tuples (" + std::to_string(zero_sums) + " with zero active weight)";
}

// ---- matching ----

void hungarianOptimality(Check& c) {
  const auto start = Clock::now();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> count(0, 6);
  std::uniform_int_distribution<int> limit_pick(0, 2);
  std::size_t instances = 0;
  for (; instances < 6000; ++instances) {
    const int limit = std::array{8, 24, 200}[static_cast<std::size_t>(limit_pick(rng))];
    const auto g = testgen::randomBoxes(rng, count(rng), limit);
    const auto p = testgen::randomBoxes(rng, count(rng), limit);
    const Matching m = hungarianMatch(g, p);
    c.expect(m.pairs.size() <= std::min(g.size(), p.size()), "too many pairs");
    for (const auto& [gi, pi] : m.pairs) c.expect(oracle::exactIou(g[gi], p[pi]) > 0, "zero-overlap pair kept");
    c.expect(oracle::pairingCost(g, p, m.pairs) == oracle::exhaustiveOptimum(g, p),
             "instance " + std::to_string(instances) + " is not optimal");
  }
  const double elapsed = secondsSince(start);
  c.expect(elapsed < 30.0, "runtime " + num(elapsed) + " s");
  c.note = std::to_string(instances) + " instances, exact rational costs, " + num(elapsed) + " s";
}

void iouThreshold(Check& c) {
  std::size_t cases = 0;
  const BoundingBox gt{0, 0, 100, 100};
  const auto single = [&](const BoundingBox& pred) {
    const double want = oracle::exactIou(gt, pred) * 2 > 1 ? 1.0 : 0.0;
    const std::vector<BoundingBox> g{gt}, p{pred};
    const double got = iouReward(g, p);
    c.expect(got == want, toString(pred) + " got " + num(got));
    ++cases;
  };
  // Height sweep: IoU = h / 100.
  for (int h = 40; h <= 60; ++h) single({0, 0, 100, h});
  // Width overhang sweep: IoU = 100 / (100 + w); exactly 0.5 at w = 100.
  for (int w = 90; w <= 110; ++w) single({0, 0, 100 + w, 100});
  // Diagonal shift: IoU = (100-d)^2 / (20000 - (100-d)^2).
  for (int d = 15; d <= 25; ++d) single({d, d, 100 + d, 100 + d});

  const std::vector<BoundingBox> half{{0, 0, 100, 50}};
  const std::vector<BoundingBox> wide{{0, 0, 200, 100}};
  const std::vector<BoundingBox> g{gt};
  c.expect(iouReward(g, half) == 0.0, "exact 0.5 (contained) must not count");
  c.expect(iouReward(g, wide) == 0.0, "exact 0.5 (overhang) must not count");
  const std::vector<BoundingBox> g2{gt, {200, 200, 300, 300}};
  const std::vector<BoundingBox> p2{{0, 0, 100, 51}, {200, 200, 300, 250}};
  c.expect(iouReward(g2, p2) == 0.5, "one of two pairs above threshold");
  c.note = std::to_string(cases + 3) + " fixtures including two exact-0.5 cases";
}

// ---- non-repeat ----

void nonRepeat(Check& c) {
  std::mt19937_64 rng(11);
  std::size_t texts = 0;
  for (; texts < 200; ++texts) {
    const std::string text = testgen::randomText(rng);
    const double s = sentenceReward(text);
    const double s_brute = oracle::sentenceRewardBrute(text);
    c.expect(std::abs(s - s_brute) <= 1e-12, "sentence " + num(s) + " vs " + num(s_brute));
    for (int n : {2, 3, 4}) {
      const double g = ngramReward(text, {n, {}});
      const double g_brute = oracle::ngramRewardBrute(text, static_cast<std::size_t>(n));
      c.expect(std::abs(g - g_brute) <= 1e-12, "ngram n=" + std::to_string(n) + " " + num(g) + " vs " + num(g_brute));
    }
    for (const char* sep : {"", " ", "\n"}) {
      const std::string doubled = text + sep + text;
      c.expect(nonRepeatReward(doubled) <= nonRepeatReward(text) + 1e-15, "self-concatenation increased the reward");
    }
  }
  c.note = std::to_string(texts) + " texts, n in {2,3,4}, three concatenation separators";
}

// ---- metrics ----

PredictionEntry detectionEntry(std::vector<BoundingBox> truth, std::vector<Detection> dets) {
  PredictionEntry e;
  e.truth_label = !truth.empty();
  e.predicted_label = !dets.empty();
  e.truth_boxes = std::move(truth);
  e.detections = std::move(dets);
  return e;
}

void metricOracles(Check& c) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> len(3, 200);
  std::uniform_int_distribution<int> coarse(1, 5);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::size_t vectors = 0, degenerate = 0;
  for (; vectors < 500; ++vectors) {
    const std::size_t n = len(rng);
    std::vector<double> x, y;
    for (std::size_t k = 0; k < n; ++k) {
      x.push_back(vectors % 3 == 0 ? coarse(rng) : noise(rng));
      y.push_back(vectors % 2 == 0 ? 0.7 * x.back() + noise(rng) : std::round(2 * noise(rng)));
    }
    try {
      const double s = srcc(x, y);
      const double p = plcc(x, y);
      c.expect(std::abs(s - oracle::srccDefinition(x, y)) <= 1e-9, "srcc vector " + std::to_string(vectors));
      c.expect(std::abs(p - oracle::plccDefinition(x, y)) <= 1e-9, "plcc vector " + std::to_string(vectors));
    } catch (const Error& e) {
      ++degenerate;
      c.expect(e.kind() == ErrorKind::DegenerateVector, "unexpected error " + std::string(e.what()));
    }
  }
  const std::vector<double> a{1, 2, 3, 4}, b{1, 3, 2, 4};
  c.expect(std::abs(srcc(a, b) - 0.8) <= 1e-9, "srcc([1,2,3,4],[1,3,2,4]) = " + num(srcc(a, b)));

  const BoundingBox A{0, 0, 10, 10}, B{20, 20, 30, 30}, C{40, 40, 50, 50}, F{100, 100, 110, 110},
      F2{200, 200, 210, 210};
  struct Fixture {
    const char* name;
    std::vector<PredictionEntry> entries;
    double expected;
  };
  const std::vector<Fixture> fixtures = {
      {"perfect", {detectionEntry({A, B}, {{A, 0.9}, {B, 0.8}})}, 1.0},
      {"empty detections", {detectionEntry({A}, {})}, 0.0},
      {"all false positives", {detectionEntry({A}, {{F, 0.9}})}, 0.0},
      {"false positive ranked first", {detectionEntry({A}, {{F, 0.9}, {A, 0.4}})}, 0.5},
      {"false positive ranked last", {detectionEntry({A}, {{A, 0.9}, {F, 0.4}})}, 1.0},
      {"half recall", {detectionEntry({A, B}, {{A, 0.9}})}, 0.5},
      {"duplicate detection", {detectionEntry({A}, {{A, 0.9}, {A, 0.8}})}, 1.0},
      {"IoU exactly 0.5", {detectionEntry({A}, {{{0, 0, 10, 5}, 0.9}})}, 0.0},
      {"interleaved", {detectionEntry({A, B, C}, {{A, 0.9}, {F, 0.8}, {B, 0.7}, {F2, 0.6}, {C, 0.5}})}, 34.0 / 45.0},
      {"pooled across images",
       {detectionEntry({A}, {{A, 0.3}}), detectionEntry({B}, {{F, 0.9}, {B, 0.6}})},
       2.0 / 3.0},
      {"detection on an image without truth",
       {detectionEntry({}, {{A, 0.95}}), detectionEntry({A}, {{A, 0.5}})},
       0.5},
      {"missing confidence ranks first", {detectionEntry({A, B}, {{B, std::nullopt}, {F, 0.99}})}, 0.5},
  };
  for (const auto& f : fixtures) {
    PredictionSet set;
    set.kind = GroundTruthKind::BinaryLabelWithBoxes;
    set.entries = f.entries;
    const double got = mapAt50(set);
    c.expect(std::abs(got - f.expected) <= 1e-12, std::string("mAP ") + f.name + ": " + num(got));
  }
  c.note = std::to_string(vectors) + " vectors (" + std::to_string(degenerate) + " degenerate), " +
           std::to_string(fixtures.size()) + " mAP fixtures";
}

// ---- colorfulness ----

void colorfulnessChecks(Check& c) {
  for (std::uint8_t level : {0, 37, 128, 255}) {
    const double m = colorfulness(ImageBuffer::solid(7, 5, {level, level, level})).M;
    c.expect(m == 0.0, "gray " + std::to_string(level) + " gives " + num(m));
  }
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> channel(0, 255);
  std::vector<Rgb> grays(64);
  for (auto& p : grays) {
    const auto v = static_cast<std::uint8_t>(channel(rng));
    p = {v, v, v};
  }
  c.expect(colorfulness(ImageBuffer(8, 8, grays)).M == 0.0, "random gray image");

  const double closed = 0.3 * std::sqrt(255.0 * 255.0 + 127.5 * 127.5);
  const double red = colorfulness(ImageBuffer::solid(9, 4, {255, 0, 0})).M;
  c.expect(std::abs(red - closed) <= 1e-6, "red " + num(red) + " vs " + num(closed));

  for (int i = 0; i < 50; ++i) {
    const ImageBuffer img = testgen::randomImage(rng, 3 + i % 7, 2 + i % 5);
    const ColorfulnessReport base = colorfulness(img);
    std::vector<Rgb> shuffled(img.pixels().begin(), img.pixels().end());
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const ColorfulnessReport perm = colorfulness(ImageBuffer(img.width(), img.height(), shuffled));
    c.expect(std::abs(perm.M - base.M) <= 1e-12, "pixel permutation changed M");
    const ColorfulnessReport rot = colorfulness(img.rotated90());
    c.expect(std::abs(rot.M - base.M) <= 1e-12, "rotation changed M");
  }
  c.note = "red M=" + num(red) + ", closed form " + num(closed) + ", 50 random images";
}

// ---- QC ----

QcBatch binaryBatch(int correct, int total) {
  QcBatch b;
  b.batch_id = "binary";
  for (int i = 0; i < total; ++i) b.binary.push_back({i < correct, true});
  return b;
}

QcBatch detectionBatch(int height) {
  QcBatch b;
  b.batch_id = "detection";
  b.detection.push_back({{{0, 0, 100, height}}, {{0, 0, 100, 100}}});
  return b;
}

QcBatch ratingBatch(const std::vector<double>& ranks) {
  QcBatch b;
  b.batch_id = "rating";
  for (std::size_t i = 0; i < ranks.size(); ++i) b.rating.push_back({ranks[i], static_cast<double>(i + 1)});
  return b;
}

QcBatch cotBatch(int accepted, int total) {
  QcBatch b;
  b.batch_id = "cot";
  for (int i = 0; i < total; ++i)
    b.cot.push_back(CotAcceptance::fromVotes(i < accepted ? std::vector<bool>{true, false, true, false, true}
                                                          : std::vector<bool>{false, true, false, true, false}));
  return b;
}

void qcGates(Check& c) {
  struct Row {
    const char* name;
    QcBatch batch;
    bool pass;
  };
  const std::vector<Row> rows = {
      {"accuracy 0.93", binaryBatch(93, 100), false},
      {"accuracy 0.95", binaryBatch(95, 100), true},
      {"mean IoU 0.92", detectionBatch(92), false},
      {"mean IoU 0.93", detectionBatch(93), true},
      // Squared rank differences 18 and 12 over nine items.
      {"SRCC 0.85", ratingBatch({3, 2, 1, 6, 5, 4, 8, 7, 9}), false},
      {"SRCC 0.90", ratingBatch({3, 2, 1, 5, 4, 7, 6, 8, 9}), true},
      {"CoT rate 0.85", cotBatch(17, 20), false},
      {"CoT rate 0.90", cotBatch(9, 10), true},
  };
  for (const auto& row : rows) c.expect(qcGate(row.batch).pass == row.pass, row.name);

  struct Votes {
    std::vector<bool> votes;
    bool accepted;
  };
  const std::vector<Votes> votes = {
      {{true, true, true, true, true}, true},    {{true, true, true, false, false}, true},
      {{false, true, false, true, true}, true},  {{true, true, false, false, false}, false},
      {{false, false, false, false, true}, false}, {{false, false, false, false, false}, false},
  };
  for (const auto& v : votes)
    c.expect(CotAcceptance::fromVotes(v.votes).accepted == v.accepted, "vote tally");
  const auto rate85 = cotAcceptanceRate(cotBatch(17, 20).cot);
  const auto rate90 = cotAcceptanceRate(cotBatch(9, 10).cot);
  c.expect(!rate85.meets_bar, "rate 0.85 must miss the bar");
  c.expect(rate90.meets_bar, "rate 0.90 must meet the bar");
  c.note = std::to_string(rows.size()) + " gate rows, " + std::to_string(votes.size()) + " vote tallies";
}

// ---- split ----

void splitContract(Check& c) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> group(1, 3);
  std::vector<SampleRecord> corpus;
  for (int image = 0; corpus.size() < 1000; ++image) {
    for (int k = group(rng); k > 0 && corpus.size() < 1000; --k) {
      SampleRecord r;
      r.sample_id = "r" + std::to_string(corpus.size());
      r.image_ref = "img/" + std::to_string(image) + ".png";
      r.instruction = "q";
      r.ground_truth = BinaryTruth{true};
      corpus.push_back(r);
    }
  }
  const auto ids = [](const std::vector<SampleRecord>& v) {
    std::vector<std::string> out;
    for (const auto& r : v) out.push_back(r.sample_id);
    std::sort(out.begin(), out.end());
    return out;
  };
  std::size_t seeds = 0;
  for (std::uint64_t seed : {0ULL, 1ULL, 7ULL, 42ULL, 1234567ULL}) {
    ++seeds;
    const DatasetSplit s = splitDataset(corpus, seed);
    const auto within = [](std::size_t got, long want) { return std::labs(static_cast<long>(got) - want) <= 1; };
    c.expect(within(s.train.size(), 800) && within(s.val.size(), 100) && within(s.test.size(), 100),
             "seed " + std::to_string(seed) + ": " + std::to_string(s.train.size()) + "/" +
                 std::to_string(s.val.size()) + "/" + std::to_string(s.test.size()));
    c.expect(s.train.size() + s.val.size() + s.test.size() == corpus.size(), "records lost");

    std::map<std::string, int> bucket_of;
    bool disjoint = true;
    int bucket = 0;
    for (const auto* part : {&s.train, &s.val, &s.test}) {
      for (const auto& r : *part) {
        const auto [it, fresh] = bucket_of.emplace(r.image_ref, bucket);
        disjoint = disjoint && (fresh || it->second == bucket);
      }
      ++bucket;
    }
    c.expect(disjoint, "image shared across buckets for seed " + std::to_string(seed));

    const DatasetSplit again = splitDataset(corpus, seed);
    std::vector<SampleRecord> reversed(corpus.rbegin(), corpus.rend());
    const DatasetSplit shuffled = splitDataset(reversed, seed);
    c.expect(ids(again.val) == ids(s.val) && ids(again.test) == ids(s.test), "not deterministic");
    c.expect(ids(shuffled.val) == ids(s.val) && ids(shuffled.test) == ids(s.test), "depends on input order");
  }
  c.note = "1000 records over multi-record images, " + std::to_string(seeds) + " seeds";
}

// ---- end to end ----

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void goldenRun(Check& c) {
  const std::string data = A3_TEST_DATA;
  const auto start = Clock::now();
  cli::ScoreOptions options;
  options.samples = data + "/samples.jsonl";
  options.transcripts = data + "/transcripts.jsonl";
  std::ostringstream out, err;
  const int code = cli::cmdScore(options, out, err);
  const double elapsed = secondsSince(start);
  const std::string golden = slurp(data + "/golden_breakdowns.jsonl");
  c.expect(code == 0, "exit code " + std::to_string(code));
  c.expect(!golden.empty() && out.str() == golden, "breakdowns differ from the committed golden file");

  std::set<std::string> rules;
  std::size_t lines = 0;
  std::istringstream rows(golden);
  for (std::string line; std::getline(rows, line); ++lines) {
    const auto at = line.find("\"rule\":\"");
    if (at != std::string::npos) rules.insert(line.substr(at + 8, line.find('"', at + 8) - at - 8));
  }
  c.expect(lines == 50, "golden has " + std::to_string(lines) + " rows");
  c.expect(rules.size() == kAllRules.size(), "golden covers " + std::to_string(rules.size()) + " rules");
  c.expect(elapsed < 10.0, "runtime " + num(elapsed) + " s");
  c.note = std::to_string(lines) + " samples, " + std::to_string(rules.size()) + " rules, " + num(elapsed) + " s";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Check&)>>> criteria = {
      {"continuous-score reward matches direct Gaussian on a 1000-point grid", gaussianGrid},
      {"total reward: definitional sum, bounds, weight-scale invariance", totalRewardProperties},
      {"Hungarian matching equals exhaustive optimum (|G|,|P| <= 6)", hungarianOptimality},
      {"IoU reward counts pairs strictly above 0.5", iouThreshold},
      {"non-repeat rewards match brute force; self-concatenation never helps", nonRepeat},
      {"SRCC/PLCC definitional oracles and mAP@0.5 fixtures", metricOracles},
      {"colorfulness: gray, solid red, invariances", colorfulnessChecks},
      {"QC gates are strict; CoT majority and acceptance bar", qcGates},
      {"8:1:1 image-level split on 1000 records", splitContract},
      {"end-to-end score run reproduces golden breakdowns", goldenRun},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Check check;
    try {
      run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const bool ok = check.failures == 0;
    failed += ok ? 0 : 1;
    std::printf("%s  %s  [%s]\n", ok ? "PASS" : "FAIL", name, check.note.c_str());
    for (const auto& why : check.first) std::printf("      %s\n", why.c_str());
    if (check.failures > check.first.size())
      std::printf("      ... %zu more\n", check.failures - check.first.size());
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
