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

#include "a3/reward_rule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "a3/error.hpp"

namespace a3 {

void GaussianScoreConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    throw Error(ErrorKind::InvalidConfig, "sigma must be a positive finite number");
}

double accuracyReward(bool predicted, bool truth) noexcept { return predicted == truth ? 1.0 : 0.0; }

double toolReward(const ParsedResponse& parsed, RuleId rule) { return toolReward(parsed.tool_calls, rule); }

double toolReward(std::span<const ToolInvocation> calls, RuleId rule) {
  const auto tool = designatedTool(rule);
  if (!tool) throw Error(ErrorKind::RuleNotToolAssisted, std::string(toString(rule)));
  const bool hit = std::any_of(calls.begin(), calls.end(), [&](const ToolInvocation& call) {
    return call.tool == *tool && call.referenced_in_reasoning;
  });
  return hit ? 1.0 : 0.0;
}

double iouReward(std::span<const BoundingBox> ground_truth, std::span<const BoundingBox> predicted) {
  if (ground_truth.empty() && predicted.empty()) return 1.0;
  if (ground_truth.empty() || predicted.empty()) return 0.0;
  const Matching matching = hungarianMatch(ground_truth, predicted);
  std::size_t hits = 0;
  for (const auto& [g, p] : matching.pairs)
    if (iou(ground_truth[g], predicted[p]) > kIouHitThreshold) ++hits;
  return static_cast<double>(hits) / static_cast<double>(std::max(ground_truth.size(), predicted.size()));
}

double continuousScoreReward(double predicted, double reference, const GaussianScoreConfig& cfg) {
  cfg.validate();
  const auto in_range = [](double s) { return s >= 1.0 && s <= 5.0; };
  if (!in_range(predicted) || !in_range(reference))
    throw Error(ErrorKind::ScoreOutOfRange,
                "scores must lie in [1,5], got " + std::to_string(predicted) + " and " + std::to_string(reference));
  const double d = predicted - reference;
  return std::exp(-(d * d) / (2.0 * cfg.sigma * cfg.sigma));
}

}  // namespace a3
