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

#include "a3/geometry.hpp"

#include <algorithm>
#include <limits>

#include "a3/error.hpp"

namespace a3 {

BoundingBox checkedBox(std::int64_t x1, std::int64_t y1, std::int64_t x2, std::int64_t y2) {
  constexpr auto kMax = std::numeric_limits<std::int32_t>::max();
  if (x1 < 0 || y1 < 0 || x2 > kMax || y2 > kMax)
    throw Error(ErrorKind::MalformedBox, "coordinates out of range");
  BoundingBox box{static_cast<std::int32_t>(x1), static_cast<std::int32_t>(y1),
                  static_cast<std::int32_t>(x2), static_cast<std::int32_t>(y2)};
  if (!box.valid()) throw Error(ErrorKind::MalformedBox, "expected x1<x2 and y1<y2, got " + toString(box));
  return box;
}

std::int64_t intersectionArea(const BoundingBox& a, const BoundingBox& b) noexcept {
  const std::int64_t w = std::int64_t{std::min(a.x2, b.x2)} - std::max(a.x1, b.x1);
  const std::int64_t h = std::int64_t{std::min(a.y2, b.y2)} - std::max(a.y1, b.y1);
  if (w <= 0 || h <= 0) return 0;
  return w * h;
}

double iou(const BoundingBox& a, const BoundingBox& b) noexcept {
  const std::int64_t inter = intersectionArea(a, b);
  const std::int64_t uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::string toString(const BoundingBox& box) {
  return "[" + std::to_string(box.x1) + "," + std::to_string(box.y1) + "," + std::to_string(box.x2) + "," +
         std::to_string(box.y2) + "]";
}

}  // namespace a3
