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
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>

namespace a3 {

enum class Stage : std::uint8_t { PerceptualAttention, FormalInterest, DesireImpact };

// Declaration order follows the benchmark table's column order.
enum class RuleId : std::uint8_t {
  ImageFidelity,
  IntegrationRealism,
  ProfessionalPolish,
  HueAdaptability,
  ColorHarmonization,
  LayoutAdaptability,
  CopywritingTone,
  PromotionalIconography,
  AestheticAttribute,
  AdvertisingAttribute,
};

enum class GroundTruthKind : std::uint8_t { BinaryLabel, BinaryLabelWithBoxes, ContinuousScore };

// Declaration order is the canonical order used for iteration, serialization
// and summation of the total reward.
enum class RewardSignal : std::uint8_t { Format, NonRepeat, Accuracy, Tool, IoU, ContinuousScore };

enum class ToolName : std::uint8_t { HueAnalysis, ColorHarmonization, Ocr };

inline constexpr std::array<RuleId, 10> kAllRules = {
    RuleId::ImageFidelity,      RuleId::IntegrationRealism,  RuleId::ProfessionalPolish,
    RuleId::HueAdaptability,    RuleId::ColorHarmonization,  RuleId::LayoutAdaptability,
    RuleId::CopywritingTone,    RuleId::PromotionalIconography, RuleId::AestheticAttribute,
    RuleId::AdvertisingAttribute,
};

inline constexpr std::array<Stage, 3> kAllStages = {Stage::PerceptualAttention, Stage::FormalInterest,
                                                    Stage::DesireImpact};

inline constexpr std::array<RewardSignal, 6> kAllSignals = {
    RewardSignal::Format, RewardSignal::NonRepeat, RewardSignal::Accuracy,
    RewardSignal::Tool,   RewardSignal::IoU,       RewardSignal::ContinuousScore,
};

inline constexpr std::size_t kSignalCount = kAllSignals.size();

constexpr std::size_t index(RewardSignal s) noexcept { return static_cast<std::size_t>(s); }

/// Small value-type set of reward signals, iterated in canonical order.
class SignalSet {
 public:
  constexpr SignalSet() = default;
  constexpr SignalSet(std::initializer_list<RewardSignal> signals) {
    for (auto s : signals) insert(s);
  }

  constexpr void insert(RewardSignal s) noexcept { bits_ |= bit(s); }
  constexpr void erase(RewardSignal s) noexcept { bits_ &= static_cast<std::uint8_t>(~bit(s)); }
  constexpr bool contains(RewardSignal s) const noexcept { return (bits_ & bit(s)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto s : kAllSignals) n += contains(s) ? 1 : 0;
    return n;
  }
  constexpr std::uint8_t bits() const noexcept { return bits_; }

  template <typename F>
  constexpr void forEach(F&& f) const {
    for (auto s : kAllSignals)
      if (contains(s)) f(s);
  }

  friend constexpr bool operator==(SignalSet, SignalSet) = default;

 private:
  static constexpr std::uint8_t bit(RewardSignal s) noexcept {
    return static_cast<std::uint8_t>(1u << index(s));
  }
  std::uint8_t bits_ = 0;
};

constexpr Stage stageOf(RuleId rule) noexcept {
  switch (rule) {
    case RuleId::ImageFidelity:
    case RuleId::IntegrationRealism:
    case RuleId::ProfessionalPolish:
      return Stage::PerceptualAttention;
    case RuleId::HueAdaptability:
    case RuleId::ColorHarmonization:
    case RuleId::LayoutAdaptability:
      return Stage::FormalInterest;
    case RuleId::CopywritingTone:
    case RuleId::PromotionalIconography:
    case RuleId::AestheticAttribute:
    case RuleId::AdvertisingAttribute:
      return Stage::DesireImpact;
  }
  return Stage::DesireImpact;
}

constexpr GroundTruthKind groundTruthKind(RuleId rule) noexcept {
  switch (rule) {
    case RuleId::PromotionalIconography:
      return GroundTruthKind::BinaryLabelWithBoxes;
    case RuleId::AestheticAttribute:
    case RuleId::AdvertisingAttribute:
      return GroundTruthKind::ContinuousScore;
    default:
      return GroundTruthKind::BinaryLabel;
  }
}

constexpr bool isBinaryRule(RuleId rule) noexcept {
  return groundTruthKind(rule) != GroundTruthKind::ContinuousScore;
}

/// The tool whose evidence a tool-assisted rule may cite; nullopt otherwise.
constexpr std::optional<ToolName> designatedTool(RuleId rule) noexcept {
  switch (rule) {
    case RuleId::HueAdaptability:
      return ToolName::HueAnalysis;
    case RuleId::ColorHarmonization:
      return ToolName::ColorHarmonization;
    case RuleId::CopywritingTone:
      return ToolName::Ocr;
    default:
      return std::nullopt;
  }
}

constexpr bool isToolAssisted(RuleId rule) noexcept { return designatedTool(rule).has_value(); }

/// Format and NonRepeat always, plus the rule-specific terms that apply.
constexpr SignalSet activeRewards(RuleId rule) noexcept {
  SignalSet set{RewardSignal::Format, RewardSignal::NonRepeat};
  if (isBinaryRule(rule)) set.insert(RewardSignal::Accuracy);
  if (isToolAssisted(rule)) set.insert(RewardSignal::Tool);
  if (rule == RuleId::PromotionalIconography) set.insert(RewardSignal::IoU);
  if (groundTruthKind(rule) == GroundTruthKind::ContinuousScore) set.insert(RewardSignal::ContinuousScore);
  return set;
}

// Stable lower_snake_case wire names.
std::string_view toString(RuleId rule) noexcept;
std::string_view toString(Stage stage) noexcept;
std::string_view toString(GroundTruthKind kind) noexcept;
std::string_view toString(RewardSignal signal) noexcept;
std::string_view toString(ToolName tool) noexcept;

std::optional<RuleId> parseRuleId(std::string_view name) noexcept;
std::optional<RewardSignal> parseRewardSignal(std::string_view name) noexcept;
std::optional<ToolName> parseToolName(std::string_view name) noexcept;

}  // namespace a3
