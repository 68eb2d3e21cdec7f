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

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a3/dataset.hpp"
#include "a3/reward_general.hpp"
#include "a3/reward_rule.hpp"
#include "a3/taxonomy.hpp"

namespace a3 {

/// Non-negative weight per reward signal; every signal defaults to 1.
class RewardWeights {
 public:
  RewardWeights() { alphas_.fill(1.0); }

  double operator[](RewardSignal s) const noexcept { return alphas_[index(s)]; }

  /// Throws InvalidConfig for negative or non-finite weights.
  void set(RewardSignal s, double alpha);

  friend bool operator==(const RewardWeights&, const RewardWeights&) = default;

 private:
  std::array<double, kSignalCount> alphas_{};
};

using SignalValues = std::map<RewardSignal, double>;

/// Normalized weighted sum over the active set, accumulated in canonical
/// signal order. Throws ZeroWeightSum if the active weights sum to zero and
/// InvalidArgument if an active signal has no value.
double totalReward(const SignalValues& per_signal, const RewardWeights& weights, SignalSet active);

struct ScoringConfig {
  RewardWeights weights;
  NonRepeatConfig non_repeat;
  GaussianScoreConfig gaussian;

  void validate() const;
};

struct RewardBreakdown {
  std::string sample_id;
  RuleId rule = RuleId::ImageFidelity;
  bool format_valid = false;
  SignalSet active_set;
  SignalValues per_signal;
  RewardWeights weights_used;
  double total = 0.0;
  // Stable machine codes: missing_transcript, format_invalid, score_clamped,
  // sentences_vacuous, ngrams_vacuous.
  std::vector<std::string> notes;

  friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

/// Scores one transcript against its record. A missing transcript (nullopt)
/// is scored as an empty, format-invalid transcript. On format failure the
/// payload-dependent signals are 0 and Tool/NonRepeat read the transcript
/// leniently. Throws GroundTruthMismatch for inconsistent records.
RewardBreakdown scoreSample(const SampleRecord& record, std::optional<std::string_view> transcript,
                            const ScoringConfig& config = {});

/// One JSON object per line with six-decimal fixed-point numbers.
std::string toJsonLine(const RewardBreakdown& breakdown);

}  // namespace a3
