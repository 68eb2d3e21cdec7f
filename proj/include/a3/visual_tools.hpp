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

#include <string>
#include <vector>

#include "a3/image.hpp"

namespace a3 {

// Hue analysis constants.
inline constexpr double kAchromaticSaturation = 0.1;
inline constexpr double kMinLightness = 0.05;
inline constexpr double kMaxLightness = 0.95;
inline constexpr int kHueSectors = 12;
inline constexpr double kMinClusterFraction = 0.01;

struct Hsl {
  double hue = 0.0;  // degrees in [0, 360)
  double saturation = 0.0;
  double lightness = 0.0;
};

/// Hexcone HSL from 8-bit sRGB, no linearization.
Hsl toHsl(Rgb color) noexcept;

bool isAchromatic(const Hsl& hsl) noexcept;

struct HueCluster {
  double central_hue = 0.0;
  double mean_lightness = 0.0;
  double mean_saturation = 0.0;
  double pixel_fraction = 0.0;

  friend bool operator==(const HueCluster&, const HueCluster&) = default;
};

struct HueClusterReport {
  std::vector<HueCluster> clusters;  // ordered by hue sector
  double achromatic_fraction = 0.0;
  bool degenerate = false;  // every pixel achromatic

  friend bool operator==(const HueClusterReport&, const HueClusterReport&) = default;
};

/// Bins chromatic pixels into twelve 30-degree sectors, merges sectors below
/// 1% of the image into their larger neighbouring cluster, and reports each
/// cluster's circular-mean hue, mean lightness and saturation.
HueClusterReport hueAnalysis(const ImageBuffer& image);

struct ColorfulnessReport {
  double M = 0.0;
  double sigma_rgyb = 0.0;
  double mu_rgyb = 0.0;

  friend bool operator==(const ColorfulnessReport&, const ColorfulnessReport&) = default;
};

/// Hasler-Suesstrunk colorfulness on opponent channels rg = R-G and
/// yb = (R+G)/2 - B: M = sqrt(var_rg + var_yb) + 0.3 * sqrt(mean_rg^2 + mean_yb^2).
ColorfulnessReport colorfulness(const ImageBuffer& image);

std::string renderToolOutput(const HueClusterReport& report);
std::string renderToolOutput(const ColorfulnessReport& report);

}  // namespace a3
