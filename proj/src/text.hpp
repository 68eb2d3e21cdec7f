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
#include <string_view>
#include <vector>

// UTF-8 helpers shared by the parser and the repetition rewards. Decoding is
// lenient: malformed sequences decode to U+FFFD one byte at a time.
namespace a3::text {

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first unit
  std::size_t length;  // byte length of the encoding
};

CodePoint decodeAt(std::string_view s, std::size_t offset) noexcept;

bool isSpace(char32_t cp) noexcept;

/// ASCII punctuation plus common CJK and general punctuation marks.
bool isPunctuation(char32_t cp) noexcept;

/// Sentence terminators: . ! ? and their full-width forms.
bool isSentenceTerminator(char32_t cp) noexcept;

std::string_view trim(std::string_view s) noexcept;

std::string asciiLower(std::string_view s);

std::vector<std::string> splitWhitespace(std::string_view s);

}  // namespace a3::text
