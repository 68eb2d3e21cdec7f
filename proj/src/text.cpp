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

#include "text.hpp"

namespace a3::text {

CodePoint decodeAt(std::string_view s, std::size_t offset) noexcept {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(s[i]); };
  const unsigned char lead = byte(offset);
  if (lead < 0x80) return {lead, offset, 1};

  std::size_t length = 0;
  char32_t value = 0;
  if ((lead & 0xE0) == 0xC0) {
    length = 2;
    value = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    length = 3;
    value = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    length = 4;
    value = lead & 0x07;
  } else {
    return {char32_t{0xFFFD}, offset, 1};
  }
  if (offset + length > s.size()) return {char32_t{0xFFFD}, offset, 1};
  for (std::size_t i = 1; i < length; ++i) {
    const unsigned char cont = byte(offset + i);
    if ((cont & 0xC0) != 0x80) return {char32_t{0xFFFD}, offset, 1};
    value = (value << 6) | (cont & 0x3F);
  }
  return {value, offset, length};
}

bool isSpace(char32_t cp) noexcept {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool isPunctuation(char32_t cp) noexcept {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  // General punctuation, CJK symbols and punctuation, full-width ASCII forms.
  return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) || (cp >= 0x3001 && cp <= 0x3003) ||
         (cp >= 0x3008 && cp <= 0x3011) || (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65);
}

bool isSentenceTerminator(char32_t cp) noexcept {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x3002 || cp == 0xFF01 || cp == 0xFF1F;
}

std::string_view trim(std::string_view s) noexcept {
  std::size_t begin = 0;
  while (begin < s.size()) {
    const auto cp = decodeAt(s, begin);
    if (!isSpace(cp.value)) break;
    begin += cp.length;
  }
  std::size_t end = begin;
  for (std::size_t i = begin; i < s.size();) {
    const auto cp = decodeAt(s, i);
    i += cp.length;
    if (!isSpace(cp.value)) end = i;
  }
  return s.substr(begin, end - begin);
}

std::string asciiLower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out)
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  return out;
}

std::vector<std::string> splitWhitespace(std::string_view s) {
  std::vector<std::string> tokens;
  std::size_t start = std::string_view::npos;
  for (std::size_t i = 0; i < s.size();) {
    const auto cp = decodeAt(s, i);
    if (isSpace(cp.value)) {
      if (start != std::string_view::npos) tokens.emplace_back(s.substr(start, i - start));
      start = std::string_view::npos;
    } else if (start == std::string_view::npos) {
      start = i;
    }
    i += cp.length;
  }
  if (start != std::string_view::npos) tokens.emplace_back(s.substr(start));
  return tokens;
}

}  // namespace a3::text
