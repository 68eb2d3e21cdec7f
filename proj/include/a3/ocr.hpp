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

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <condition_variable>
#include <string>
#include <string_view>
#include <vector>

#include "a3/geometry.hpp"
#include "a3/image.hpp"

namespace a3 {

inline constexpr const char* kOcrEndpointEnv = "A3_OCR_ENDPOINT";
inline constexpr const char* kOcrTokenEnv = "A3_OCR_TOKEN";

/// One block as the OCR service reports it, before validation.
struct OcrReplyBlock {
  std::string text;
  std::int64_t x1 = 0;
  std::int64_t y1 = 0;
  std::int64_t x2 = 0;
  std::int64_t y2 = 0;
};

struct OcrTextBlock {
  std::string text;
  BoundingBox box;

  friend bool operator==(const OcrTextBlock&, const OcrTextBlock&) = default;
};

struct OcrResult {
  std::vector<OcrTextBlock> text_blocks;

  friend bool operator==(const OcrResult&, const OcrResult&) = default;
};

class OcrClient {
 public:
  virtual ~OcrClient() = default;

  /// Throws OcrUnavailable on transport failure and OcrMalformedReply when the
  /// reply does not follow the wire schema.
  virtual std::vector<OcrReplyBlock> recognize(const ImageBuffer& image) = 0;
};

/// Always replies with no text. For offline runs and tests.
class NullOcrClient final : public OcrClient {
 public:
  std::vector<OcrReplyBlock> recognize(const ImageBuffer&) override { return {}; }
};

/// POSTs the image as binary PPM to an HTTP(S) endpoint and expects a JSON
/// array of {"text", "x1", "y1", "x2", "y2"} objects. At most
/// `max_in_flight` requests run concurrently through one instance.
class HttpOcrClient final : public OcrClient {
 public:
  struct Options {
    std::string endpoint;  // e.g. http://localhost:8080/ocr
    std::string token;     // sent as "Authorization: Bearer <token>" when nonempty
    std::size_t max_in_flight = 4;
    std::chrono::seconds timeout{30};
  };

  explicit HttpOcrClient(Options options);

  std::vector<OcrReplyBlock> recognize(const ImageBuffer& image) override;

 private:
  Options options_;
  std::string base_url_;
  std::string path_;
  std::mutex mutex_;
  std::condition_variable slot_freed_;
  std::size_t in_flight_ = 0;
};

/// Reads A3_OCR_ENDPOINT / A3_OCR_TOKEN. Returns nullptr when no endpoint is set.
std::unique_ptr<OcrClient> ocrClientFromEnvironment();

/// Throws OcrMalformedReply on any schema violation.
std::vector<OcrReplyBlock> parseOcrReply(std::string_view body);

/// Runs the client and validates that every box is well formed and inside the
/// image; violations raise OcrMalformedReply.
OcrResult runOcr(const ImageBuffer& image, OcrClient& client);

std::string renderToolOutput(const OcrResult& result);

}  // namespace a3
