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

#include <span>

#include "a3/assignment.hpp"
#include "a3/geometry.hpp"
#include "a3/taxonomy.hpp"
#include "a3/transcript.hpp"

namespace a3 {

inline constexpr double kDefaultSigma = 1.237;
inline constexpr double kIouHitThreshold = 0.5;

struct GaussianScoreConfig {
  double sigma = kDefaultSigma;

  void validate() const;
};

double accuracyReward(bool predicted, bool truth) noexcept;

/// 1 iff a call of the rule's designated tool is cited in the reasoning.
/// Throws RuleNotToolAssisted for rules without a designated tool.
double toolReward(const ParsedResponse& parsed, RuleId rule);
double toolReward(std::span<const ToolInvocation> calls, RuleId rule);

/// Matched pairs with IoU strictly above 0.5, divided by max(N, K).
/// 1.0 when both lists are empty, 0.0 when exactly one is.
double iouReward(std::span<const BoundingBox> ground_truth, std::span<const BoundingBox> predicted);

/// exp(-(s - s_ref)^2 / (2 sigma^2)). Throws ScoreOutOfRange outside [1, 5].
double continuousScoreReward(double predicted, double reference, const GaussianScoreConfig& cfg = {});

}  // namespace a3
