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

#include <cstdint>
#include <string>

namespace a3 {

/// Axis-aligned pixel rectangle with exclusive extent: x1 < x2, y1 < y2.
struct BoundingBox {
  std::int32_t x1 = 0;
  std::int32_t y1 = 0;
  std::int32_t x2 = 0;
  std::int32_t y2 = 0;

  constexpr bool valid() const noexcept { return x1 >= 0 && y1 >= 0 && x1 < x2 && y1 < y2; }
  constexpr std::int64_t area() const noexcept {
    return static_cast<std::int64_t>(x2 - x1) * static_cast<std::int64_t>(y2 - y1);
  }

  friend constexpr bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Throws MalformedBox if the corners are inverted, degenerate or negative.
BoundingBox checkedBox(std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2);

std::int64_t intersectionArea(const BoundingBox& a, const BoundingBox& b) noexcept;

/// Intersection over union of two valid boxes.
double iou(const BoundingBox& a, const BoundingBox& b) noexcept;

std::string toString(const BoundingBox& box);

}  // namespace a3
