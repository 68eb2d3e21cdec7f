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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace a3 {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 8-bit RGB image.
class ImageBuffer {
 public:
  /// Throws InvalidArgument unless width, height >= 1 and the pixel vector has
  /// exactly width * height entries.
  ImageBuffer(std::size_t width, std::size_t height, std::vector<Rgb> pixels);

  static ImageBuffer solid(std::size_t width, std::size_t height, Rgb color);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixelCount() const noexcept { return pixels_.size(); }
  std::span<const Rgb> pixels() const noexcept { return pixels_; }
  const Rgb& at(std::size_t x, std::size_t y) const noexcept { return pixels_[y * width_ + x]; }
  Rgb& at(std::size_t x, std::size_t y) noexcept { return pixels_[y * width_ + x]; }

  /// Clockwise quarter turn.
  ImageBuffer rotated90() const;

  friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<Rgb> pixels_;
};

/// Decodes any raster format OpenCV's codecs understand. Throws ImageLoad.
ImageBuffer loadImage(const std::filesystem::path& path);

/// Binary PPM (P6) encoding, the OCR request body.
std::string encodePpm(const ImageBuffer& image);

}  // namespace a3
