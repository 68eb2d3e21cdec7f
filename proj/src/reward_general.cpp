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

#include "a3/reward_general.hpp"

#include <set>
#include <unordered_set>

#include "a3/error.hpp"
#include "text.hpp"

namespace a3 {
namespace {

struct SentenceStats {
  std::size_t total = 0;
  std::size_t duplicates = 0;
};

SentenceStats countSentences(std::string_view text, const SentenceNormalization& norm) {
  SentenceStats stats;
  std::unordered_set<std::string> seen;
  for (auto& sentence : segmentSentences(text, norm)) {
    ++stats.total;
    if (!seen.insert(std::move(sentence)).second) ++stats.duplicates;
  }
  return stats;
}

struct NgramStats {
  std::size_t total = 0;
  std::size_t unique = 0;
};

NgramStats countNgrams(std::string_view text, int n) {
  const auto tokens = text::splitWhitespace(text::asciiLower(text));
  NgramStats stats;
  const auto width = static_cast<std::size_t>(n);
  if (tokens.size() < width) return stats;
  std::set<std::vector<std::string_view>> unique;
  for (std::size_t i = 0; i + width <= tokens.size(); ++i) {
    std::vector<std::string_view> gram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                       tokens.begin() + static_cast<std::ptrdiff_t>(i + width));
    unique.insert(std::move(gram));
    ++stats.total;
  }
  stats.unique = unique.size();
  return stats;
}

}  // namespace

void NonRepeatConfig::validate() const {
  if (ngram_n < 2) throw Error(ErrorKind::InvalidConfig, "ngram_n must be >= 2, got " + std::to_string(ngram_n));
}

std::string normalizeSentence(std::string_view sentence, const SentenceNormalization& norm) {
  std::string out;
  bool pending_space = false;
  for (std::size_t i = 0; i < sentence.size();) {
    const auto cp = text::decodeAt(sentence, i);
    i += cp.length;
    if (norm.strip_punctuation && text::isPunctuation(cp.value)) continue;
    if (norm.collapse_whitespace && text::isSpace(cp.value)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += sentence.substr(cp.offset, cp.length);
  }
  if (norm.lowercase) out = text::asciiLower(out);
  if (!norm.collapse_whitespace) out = std::string(text::trim(out));
  return out;
}

std::vector<std::string> segmentSentences(std::string_view text, const SentenceNormalization& norm) {
  std::vector<std::string> sentences;
  const auto flush = [&](std::size_t begin, std::size_t end) {
    auto normalized = normalizeSentence(text.substr(begin, end - begin), norm);
    if (!normalized.empty()) sentences.push_back(std::move(normalized));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size();) {
    const auto cp = text::decodeAt(text, i);
    i += cp.length;
    if (!text::isSentenceTerminator(cp.value)) continue;
    if (i == text.size() || text::isSpace(text::decodeAt(text, i).value)) {
      flush(start, i);
      start = i;
    }
  }
  if (start < text.size()) flush(start, text.size());
  return sentences;
}

double formatReward(const ParsedResponse& parsed) noexcept { return parsed.format_valid ? 1.0 : 0.0; }

double sentenceReward(std::string_view text, const SentenceNormalization& norm) {
  const auto stats = countSentences(text, norm);
  if (stats.total == 0) return 1.0;
  return 1.0 - static_cast<double>(stats.duplicates) / static_cast<double>(stats.total);
}

double ngramReward(std::string_view text, const NonRepeatConfig& cfg) {
  cfg.validate();
  const auto stats = countNgrams(text, cfg.ngram_n);
  if (stats.total == 0) return 1.0;
  return static_cast<double>(stats.unique) / static_cast<double>(stats.total);
}

double nonRepeatReward(std::string_view text, const NonRepeatConfig& cfg) {
  return nonRepeatDetail(text, cfg).value;
}

NonRepeatDetail nonRepeatDetail(std::string_view text, const NonRepeatConfig& cfg) {
  cfg.validate();
  NonRepeatDetail detail;
  const auto sentences = countSentences(text, cfg.normalization);
  if (sentences.total == 0) {
    detail.sentences_vacuous = true;
  } else {
    detail.sentence = 1.0 - static_cast<double>(sentences.duplicates) / static_cast<double>(sentences.total);
  }
  const auto grams = countNgrams(text, cfg.ngram_n);
  if (grams.total == 0) {
    detail.ngrams_vacuous = true;
  } else {
    detail.ngram = static_cast<double>(grams.unique) / static_cast<double>(grams.total);
  }
  detail.value = 0.5 * (detail.sentence + detail.ngram);
  return detail;
}

}  // namespace a3
