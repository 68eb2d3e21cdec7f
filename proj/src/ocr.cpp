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

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include "a3/ocr.hpp"

#include <cstdlib>

#include <json.hpp>

#include "a3/error.hpp"
#include "format.hpp"

namespace a3 {
namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorKind::OcrMalformedReply, why); }

}  // namespace

HttpOcrClient::HttpOcrClient(Options options) : options_(std::move(options)) {
  if (options_.max_in_flight == 0) throw Error(ErrorKind::InvalidConfig, "max_in_flight must be >= 1");
  const std::string& url = options_.endpoint;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos || (url.compare(0, scheme_end, "http") != 0 &&
                                          url.compare(0, scheme_end, "https") != 0))
    throw Error(ErrorKind::InvalidConfig, "OCR endpoint must be an http:// or https:// URL: " + url);
  const auto path_begin = url.find('/', scheme_end + 3);
  base_url_ = url.substr(0, path_begin);
  path_ = path_begin == std::string::npos ? "/" : url.substr(path_begin);
}

std::vector<OcrReplyBlock> HttpOcrClient::recognize(const ImageBuffer& image) {
  {
    std::unique_lock lock(mutex_);
    slot_freed_.wait(lock, [this] { return in_flight_ < options_.max_in_flight; });
    ++in_flight_;
  }
  struct Release {
    HttpOcrClient* self;
    ~Release() {
      {
        std::lock_guard lock(self->mutex_);
        --self->in_flight_;
      }
      self->slot_freed_.notify_one();
    }
  } release{this};

  httplib::Client client(base_url_);
  client.set_connection_timeout(options_.timeout);
  client.set_read_timeout(options_.timeout);
  client.set_write_timeout(options_.timeout);
  httplib::Headers headers;
  if (!options_.token.empty()) headers.emplace("Authorization", "Bearer " + options_.token);

  const auto response = client.Post(path_, headers, encodePpm(image), "image/x-portable-pixmap");
  if (!response)
    throw Error(ErrorKind::OcrUnavailable, options_.endpoint + ": " + httplib::to_string(response.error()));
  if (response->status < 200 || response->status >= 300)
    throw Error(ErrorKind::OcrUnavailable, options_.endpoint + ": HTTP " + std::to_string(response->status));
  return parseOcrReply(response->body);
}

std::unique_ptr<OcrClient> ocrClientFromEnvironment() {
  const char* endpoint = std::getenv(kOcrEndpointEnv);
  if (endpoint == nullptr || *endpoint == '\0') return nullptr;
  HttpOcrClient::Options options;
  options.endpoint = endpoint;
  if (const char* token = std::getenv(kOcrTokenEnv)) options.token = token;
  return std::make_unique<HttpOcrClient>(std::move(options));
}

std::vector<OcrReplyBlock> parseOcrReply(std::string_view body) {
  nlohmann::json reply;
  try {
    reply = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    malformed(std::string("reply is not JSON: ") + e.what());
  }
  if (!reply.is_array()) malformed("reply must be a JSON array");
  std::vector<OcrReplyBlock> blocks;
  for (std::size_t i = 0; i < reply.size(); ++i) {
    const auto& item = reply[i];
    const std::string where = "block " + std::to_string(i);
    if (!item.is_object()) malformed(where + " is not an object");
    const auto text = item.find("text");
    if (text == item.end() || !text->is_string()) malformed(where + " lacks a string 'text'");
    OcrReplyBlock block;
    block.text = text->get<std::string>();
    const auto coord = [&](const char* key) {
      const auto it = item.find(key);
      if (it == item.end() || !it->is_number_integer()) malformed(where + " lacks an integer '" + key + "'");
      return it->get<std::int64_t>();
    };
    block.x1 = coord("x1");
    block.y1 = coord("y1");
    block.x2 = coord("x2");
    block.y2 = coord("y2");
    blocks.push_back(std::move(block));
  }
  return blocks;
}

OcrResult runOcr(const ImageBuffer& image, OcrClient& client) {
  OcrResult result;
  const auto width = static_cast<std::int64_t>(image.width());
  const auto height = static_cast<std::int64_t>(image.height());
  for (auto& block : client.recognize(image)) {
    if (!(block.x1 >= 0 && block.y1 >= 0 && block.x1 < block.x2 && block.y1 < block.y2))
      malformed("block '" + block.text + "' has an invalid box");
    if (block.x2 > width || block.y2 > height) malformed("block '" + block.text + "' exceeds the image bounds");
    result.text_blocks.push_back({std::move(block.text),
                                  checkedBox(block.x1, block.y1, block.x2, block.y2)});
  }
  return result;
}

std::string renderToolOutput(const OcrResult& result) {
  std::string out = "ocr blocks=" + std::to_string(result.text_blocks.size());
  for (const auto& b : result.text_blocks) {
    out += "\nblock x1=" + std::to_string(b.box.x1) + " y1=" + std::to_string(b.box.y1) +
           " x2=" + std::to_string(b.box.x2) + " y2=" + std::to_string(b.box.y2) + " text=" + detail::quoted(b.text);
  }
  return out;
}

}  // namespace a3
