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

#include "a3/visual_tools.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "format.hpp"

namespace a3 {
namespace {

struct SectorStats {
  std::size_t count = 0;
  double sum_sin = 0.0;
  double sum_cos = 0.0;
  double sum_lightness = 0.0;
  double sum_saturation = 0.0;

  void absorb(const SectorStats& other) {
    count += other.count;
    sum_sin += other.sum_sin;
    sum_cos += other.sum_cos;
    sum_lightness += other.sum_lightness;
    sum_saturation += other.sum_saturation;
  }
};

__extension__ using Int128 = __int128;

std::uint32_t pack(Rgb c) { return (std::uint32_t{c.r} << 16) | (std::uint32_t{c.g} << 8) | c.b; }
Rgb unpack(std::uint32_t v) {
  return {static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

// Distinct colours with multiplicities in ascending colour order, so every
// accumulation below is independent of pixel order.
std::vector<std::pair<Rgb, std::size_t>> colorHistogram(const ImageBuffer& image) {
  std::vector<std::uint32_t> packed;
  packed.reserve(image.pixelCount());
  for (const auto& p : image.pixels()) packed.push_back(pack(p));
  std::sort(packed.begin(), packed.end());
  std::vector<std::pair<Rgb, std::size_t>> hist;
  for (std::size_t i = 0; i < packed.size();) {
    std::size_t j = i;
    while (j < packed.size() && packed[j] == packed[i]) ++j;
    hist.emplace_back(unpack(packed[i]), j - i);
    i = j;
  }
  return hist;
}

double degrees(double radians) {
  double d = radians * 180.0 / std::numbers::pi;
  if (d < 0.0) d += 360.0;
  if (d >= 360.0) d -= 360.0;
  return d;
}

}  // namespace

Hsl toHsl(Rgb color) noexcept {
  const double r = color.r / 255.0;
  const double g = color.g / 255.0;
  const double b = color.b / 255.0;
  const double max = std::max({r, g, b});
  const double min = std::min({r, g, b});
  const double delta = max - min;
  Hsl out;
  out.lightness = (max + min) / 2.0;
  if (delta == 0.0) return out;
  out.saturation = delta / (1.0 - std::abs(2.0 * out.lightness - 1.0));
  double h = 0.0;
  if (max == r) {
    h = std::fmod((g - b) / delta, 6.0);
  } else if (max == g) {
    h = (b - r) / delta + 2.0;
  } else {
    h = (r - g) / delta + 4.0;
  }
  h *= 60.0;
  if (h < 0.0) h += 360.0;
  out.hue = h >= 360.0 ? h - 360.0 : h;
  return out;
}

bool isAchromatic(const Hsl& hsl) noexcept {
  return hsl.saturation < kAchromaticSaturation || hsl.lightness < kMinLightness || hsl.lightness > kMaxLightness;
}

HueClusterReport hueAnalysis(const ImageBuffer& image) {
  std::array<SectorStats, kHueSectors> sectors{};
  std::size_t achromatic = 0;
  for (const auto& [color, count] : colorHistogram(image)) {
    const Hsl hsl = toHsl(color);
    if (isAchromatic(hsl)) {
      achromatic += count;
      continue;
    }
    const auto sector = std::min(kHueSectors - 1, static_cast<int>(hsl.hue / (360.0 / kHueSectors)));
    auto& s = sectors[static_cast<std::size_t>(sector)];
    const double n = static_cast<double>(count);
    const double rad = hsl.hue * std::numbers::pi / 180.0;
    s.count += count;
    s.sum_sin += n * std::sin(rad);
    s.sum_cos += n * std::cos(rad);
    s.sum_lightness += n * hsl.lightness;
    s.sum_saturation += n * hsl.saturation;
  }

  // Live clusters in sector order; small ones fold into the larger of their
  // circular neighbours, smallest first (lowest sector on ties).
  std::vector<SectorStats> live;
  for (const auto& s : sectors)
    if (s.count > 0) live.push_back(s);
  const std::size_t total = image.pixelCount();
  const auto too_small = [&](const SectorStats& s) {
    return static_cast<double>(s.count) < kMinClusterFraction * static_cast<double>(total);
  };
  while (live.size() > 1) {
    std::size_t victim = live.size();
    for (std::size_t i = 0; i < live.size(); ++i)
      if (too_small(live[i]) && (victim == live.size() || live[i].count < live[victim].count)) victim = i;
    if (victim == live.size()) break;
    const std::size_t prev = (victim + live.size() - 1) % live.size();
    const std::size_t next = (victim + 1) % live.size();
    const std::size_t into = live[next].count > live[prev].count ? next : prev;
    live[into].absorb(live[victim]);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(victim));
  }

  HueClusterReport report;
  report.achromatic_fraction = static_cast<double>(achromatic) / static_cast<double>(total);
  report.degenerate = live.empty();
  for (const auto& s : live) {
    const double n = static_cast<double>(s.count);
    report.clusters.push_back({degrees(std::atan2(s.sum_sin, s.sum_cos)), s.sum_lightness / n,
                               s.sum_saturation / n, n / static_cast<double>(total)});
  }
  return report;
}

ColorfulnessReport colorfulness(const ImageBuffer& image) {
  // Exact integer moments; yb is carried doubled to stay integral.
  std::int64_t sum_rg = 0, sum_rg2 = 0, sum_yb2 = 0, sum_yb2_sq = 0;
  for (const auto& p : image.pixels()) {
    const std::int64_t rg = std::int64_t{p.r} - p.g;
    const std::int64_t yb2 = std::int64_t{p.r} + p.g - 2 * std::int64_t{p.b};
    sum_rg += rg;
    sum_rg2 += rg * rg;
    sum_yb2 += yb2;
    sum_yb2_sq += yb2 * yb2;
  }
  const auto n = static_cast<Int128>(image.pixelCount());
  const long double n2 = static_cast<long double>(n) * static_cast<long double>(n);
  const auto var_rg = static_cast<long double>(n * sum_rg2 - static_cast<Int128>(sum_rg) * sum_rg) / n2;
  const auto var_yb = static_cast<long double>(n * sum_yb2_sq - static_cast<Int128>(sum_yb2) * sum_yb2) / n2 / 4.0L;
  const long double mean_rg = static_cast<long double>(sum_rg) / static_cast<long double>(n);
  const long double mean_yb = static_cast<long double>(sum_yb2) / static_cast<long double>(n) / 2.0L;

  ColorfulnessReport report;
  report.sigma_rgyb = static_cast<double>(std::sqrt(var_rg + var_yb));
  report.mu_rgyb = static_cast<double>(std::sqrt(mean_rg * mean_rg + mean_yb * mean_yb));
  report.M = report.sigma_rgyb + 0.3 * report.mu_rgyb;
  return report;
}

std::string renderToolOutput(const HueClusterReport& report) {
  std::string out = "hue_analysis clusters=" + std::to_string(report.clusters.size()) +
                    " achromatic=" + detail::fixed(report.achromatic_fraction, 3);
  if (report.degenerate) out += " degenerate=true";
  for (const auto& c : report.clusters) {
    // 359.9996 would print as 360.000; the printed hue stays in [0, 360).
    std::string hue = detail::fixed(c.central_hue, 3);
    if (hue == "360.000") hue = "0.000";
    out += "\ncluster hue=" + hue + " lightness=" + detail::fixed(c.mean_lightness, 3) +
           " saturation=" + detail::fixed(c.mean_saturation, 3) + " fraction=" + detail::fixed(c.pixel_fraction, 3);
  }
  return out;
}

std::string renderToolOutput(const ColorfulnessReport& report) {
  return "colorfulness M=" + detail::fixed(report.M, 3) + " sigma_rgyb=" + detail::fixed(report.sigma_rgyb, 3) +
         " mu_rgyb=" + detail::fixed(report.mu_rgyb, 3);
}

}  // namespace a3
