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

#include "a3/transcript.hpp"

namespace a3 {

struct SentenceNormalization {
  bool lowercase = true;
  bool strip_punctuation = true;
  bool collapse_whitespace = true;
};

struct NonRepeatConfig {
  int ngram_n = 3;
  SentenceNormalization normalization;

  /// Throws InvalidConfig unless ngram_n >= 2.
  void validate() const;
};

/// Splits on . ! ? and their full-width forms when followed by whitespace or
/// end of text. Segments that normalize to nothing are discarded.
std::vector<std::string> segmentSentences(std::string_view text, const SentenceNormalization& norm = {});

std::string normalizeSentence(std::string_view sentence, const SentenceNormalization& norm);

double formatReward(const ParsedResponse& parsed) noexcept;

/// 1 - d/N over normalized sentences; 1.0 when there are none.
double sentenceReward(std::string_view text, const SentenceNormalization& norm = {});

/// Unique over total n-grams of lowercased whitespace tokens; 1.0 when the
/// text has fewer than n tokens.
double ngramReward(std::string_view text, const NonRepeatConfig& cfg = {});

double nonRepeatReward(std::string_view text, const NonRepeatConfig& cfg = {});

struct NonRepeatDetail {
  double sentence = 1.0;
  double ngram = 1.0;
  double value = 1.0;
  bool sentences_vacuous = false;  // no sentences found
  bool ngrams_vacuous = false;     // fewer than n tokens
};

NonRepeatDetail nonRepeatDetail(std::string_view text, const NonRepeatConfig& cfg = {});

}  // namespace a3
