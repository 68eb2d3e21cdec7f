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

#include "a3/reward_aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "a3/error.hpp"
#include "format.hpp"

namespace a3 {

void RewardWeights::set(RewardSignal s, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw Error(ErrorKind::InvalidConfig,
                "weight for " + std::string(toString(s)) + " must be a non-negative finite number");
  alphas_[index(s)] = alpha;
}

double totalReward(const SignalValues& per_signal, const RewardWeights& weights, SignalSet active) {
  if (active.empty()) throw Error(ErrorKind::InvalidArgument, "active reward set is empty");
  double weighted = 0.0;
  double norm = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  active.forEach([&](RewardSignal s) {
    const auto it = per_signal.find(s);
    if (it == per_signal.end())
      throw Error(ErrorKind::InvalidArgument, "no value for active signal " + std::string(toString(s)));
    weighted += weights[s] * it->second;
    norm += weights[s];
    if (weights[s] > 0.0) {
      lo = std::min(lo, it->second);
      hi = std::max(hi, it->second);
    }
  });
  if (!(norm > 0.0)) throw Error(ErrorKind::ZeroWeightSum, "all active reward weights are zero");
  // Rounding can push the quotient an ulp past the inputs.
  return std::clamp(weighted / norm, lo, hi);
}

void ScoringConfig::validate() const {
  non_repeat.validate();
  gaussian.validate();
}

RewardBreakdown scoreSample(const SampleRecord& record, std::optional<std::string_view> transcript,
                            const ScoringConfig& config) {
  validateRecord(record);
  config.validate();

  RewardBreakdown out;
  out.sample_id = record.sample_id;
  out.rule = record.rule;
  out.active_set = activeRewards(record.rule);
  out.weights_used = config.weights;
  if (!transcript) out.notes.emplace_back("missing_transcript");

  const ParsedResponse parsed = parseTranscript(transcript.value_or(std::string_view{}), record.rule);
  out.format_valid = parsed.format_valid;

  std::string reasoning;
  std::vector<ToolInvocation> calls;
  if (parsed.format_valid) {
    reasoning = parsed.reasoning;
    calls = parsed.tool_calls;
  } else {
    out.notes.emplace_back("format_invalid");
    auto scan = scanTranscriptLeniently(transcript.value_or(std::string_view{}));
    reasoning = std::move(scan.reasoning);
    calls = std::move(scan.tool_calls);
  }
  if (parsed.score_clamped) out.notes.emplace_back("score_clamped");

  const NonRepeatDetail non_repeat = nonRepeatDetail(reasoning, config.non_repeat);
  if (non_repeat.sentences_vacuous) out.notes.emplace_back("sentences_vacuous");
  if (non_repeat.ngrams_vacuous) out.notes.emplace_back("ngrams_vacuous");

  auto& values = out.per_signal;
  values[RewardSignal::Format] = formatReward(parsed);
  values[RewardSignal::NonRepeat] = non_repeat.value;

  const bool valid = parsed.format_valid;
  if (out.active_set.contains(RewardSignal::Accuracy)) {
    bool truth = false;
    if (const auto* t = std::get_if<BinaryTruth>(&record.ground_truth)) truth = t->label;
    if (const auto* t = std::get_if<BoxTruth>(&record.ground_truth)) truth = t->label;
    values[RewardSignal::Accuracy] = valid ? accuracyReward(*parsed.binary_label, truth) : 0.0;
  }
  if (out.active_set.contains(RewardSignal::Tool)) values[RewardSignal::Tool] = toolReward(calls, record.rule);
  if (out.active_set.contains(RewardSignal::IoU)) {
    const auto& truth = std::get<BoxTruth>(record.ground_truth);
    values[RewardSignal::IoU] = valid ? iouReward(truth.boxes, parsed.boxes) : 0.0;
  }
  if (out.active_set.contains(RewardSignal::ContinuousScore)) {
    const auto& truth = std::get<ScoreTruth>(record.ground_truth);
    values[RewardSignal::ContinuousScore] =
        valid ? continuousScoreReward(*parsed.score, truth.score, config.gaussian) : 0.0;
  }

  out.total = totalReward(values, config.weights, out.active_set);
  return out;
}

std::string toJsonLine(const RewardBreakdown& b) {
  std::string line = "{\"sample_id\":" + detail::quoted(b.sample_id);
  line += ",\"rule\":\"" + std::string(toString(b.rule)) + "\"";
  line += std::string(",\"format_valid\":") + (b.format_valid ? "true" : "false");
  line += ",\"active\":[";
  bool first = true;
  b.active_set.forEach([&](RewardSignal s) {
    line += (first ? "\"" : ",\"") + std::string(toString(s)) + "\"";
    first = false;
  });
  line += "],\"signals\":{";
  first = true;
  for (const auto& [signal, value] : b.per_signal) {
    line += (first ? "\"" : ",\"") + std::string(toString(signal)) + "\":" + detail::fixed(value, 6);
    first = false;
  }
  line += "},\"weights\":{";
  first = true;
  for (auto s : kAllSignals) {
    line += (first ? "\"" : ",\"") + std::string(toString(s)) + "\":" + detail::fixed(b.weights_used[s], 6);
    first = false;
  }
  line += "},\"total\":" + detail::fixed(b.total, 6) + ",\"notes\":[";
  for (std::size_t i = 0; i < b.notes.size(); ++i) line += (i ? "," : "") + detail::quoted(b.notes[i]);
  line += "]}";
  return line;
}

}  // namespace a3
