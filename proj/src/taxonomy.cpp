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

#include "a3/taxonomy.hpp"

namespace a3 {
namespace {

constexpr std::array<std::string_view, 10> kRuleNames = {
    "image_fidelity",     "integration_realism",  "professional_polish",     "hue_adaptability",
    "color_harmonization", "layout_adaptability", "copywriting_tone",        "promotional_iconography",
    "aesthetic_attribute", "advertising_attribute",
};

constexpr std::array<std::string_view, 6> kSignalNames = {
    "format", "non_repeat", "accuracy", "tool", "iou", "continuous_score",
};

constexpr std::array<std::string_view, 3> kToolNames = {"hue_analysis", "color_harmonization", "ocr"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view name) {
  for (std::size_t i = 0; i < N; ++i)
    if (names[i] == name) return static_cast<Enum>(i);
  return std::nullopt;
}

}  // namespace

std::string_view toString(RuleId rule) noexcept { return kRuleNames[static_cast<std::size_t>(rule)]; }

std::string_view toString(Stage stage) noexcept {
  switch (stage) {
    case Stage::PerceptualAttention: return "perceptual_attention";
    case Stage::FormalInterest: return "formal_interest";
    case Stage::DesireImpact: return "desire_impact";
  }
  return "";
}

std::string_view toString(GroundTruthKind kind) noexcept {
  switch (kind) {
    case GroundTruthKind::BinaryLabel: return "binary";
    case GroundTruthKind::BinaryLabelWithBoxes: return "binary_with_boxes";
    case GroundTruthKind::ContinuousScore: return "score";
  }
  return "";
}

std::string_view toString(RewardSignal signal) noexcept { return kSignalNames[index(signal)]; }

std::string_view toString(ToolName tool) noexcept { return kToolNames[static_cast<std::size_t>(tool)]; }

std::optional<RuleId> parseRuleId(std::string_view name) noexcept { return lookup<RuleId>(kRuleNames, name); }

std::optional<RewardSignal> parseRewardSignal(std::string_view name) noexcept {
  return lookup<RewardSignal>(kSignalNames, name);
}

std::optional<ToolName> parseToolName(std::string_view name) noexcept {
  return lookup<ToolName>(kToolNames, name);
}

}  // namespace a3
