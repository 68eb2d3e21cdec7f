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

#include "a3/image.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "a3/error.hpp"

namespace a3 {

ImageBuffer::ImageBuffer(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) throw Error(ErrorKind::InvalidArgument, "image dimensions must be >= 1");
  if (pixels_.size() != width_ * height_)
    throw Error(ErrorKind::InvalidArgument, "pixel count does not match width * height");
}

ImageBuffer ImageBuffer::solid(std::size_t width, std::size_t height, Rgb color) {
  return ImageBuffer(width, height, std::vector<Rgb>(width * height, color));
}

ImageBuffer ImageBuffer::rotated90() const {
  std::vector<Rgb> out(pixels_.size());
  const std::size_t new_width = height_;
  for (std::size_t y = 0; y < height_; ++y)
    for (std::size_t x = 0; x < width_; ++x) out[x * new_width + (height_ - 1 - y)] = at(x, y);
  return ImageBuffer(new_width, width_, std::move(out));
}

ImageBuffer loadImage(const std::filesystem::path& path) {
  cv::Mat bgr;
  try {
    bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  } catch (const cv::Exception& e) {
    throw Error(ErrorKind::ImageLoad, path.string() + ": " + e.what());
  }
  if (bgr.empty()) throw Error(ErrorKind::ImageLoad, "cannot decode " + path.string());
  std::vector<Rgb> pixels;
  pixels.reserve(static_cast<std::size_t>(bgr.rows) * static_cast<std::size_t>(bgr.cols));
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) pixels.push_back({row[x][2], row[x][1], row[x][0]});
  }
  return ImageBuffer(static_cast<std::size_t>(bgr.cols), static_cast<std::size_t>(bgr.rows), std::move(pixels));
}

std::string encodePpm(const ImageBuffer& image) {
  std::string out = "P6\n" + std::to_string(image.width()) + " " + std::to_string(image.height()) + "\n255\n";
  out.reserve(out.size() + image.pixelCount() * 3);
  for (const auto& p : image.pixels()) {
    out += static_cast<char>(p.r);
    out += static_cast<char>(p.g);
    out += static_cast<char>(p.b);
  }
  return out;
}

}  // namespace a3
