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

#include "a3/transcript.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <utility>

#include "a3/error.hpp"
#include "text.hpp"

namespace a3 {
namespace {

enum class Tag { None, OpenThink, CloseThink, OpenAnswer, CloseAnswer, OpenCall, CloseCall, OpenOutput, CloseOutput };

constexpr std::string_view kOpenThink = "<think>";
constexpr std::string_view kCloseThink = "</think>";
constexpr std::string_view kOpenAnswer = "<answer>";
constexpr std::string_view kCloseAnswer = "</answer>";
constexpr std::string_view kOpenCall = "<tool_call";
constexpr std::string_view kCloseCall = "</tool_call>";
constexpr std::string_view kOpenOutput = "<tool_output";
constexpr std::string_view kCloseOutput = "</tool_output>";

bool startsWithAt(std::string_view s, std::size_t at, std::string_view prefix) {
  return s.substr(at, prefix.size()) == prefix;
}

// Opening tool tags must be followed by an attribute or '>' to count as tags.
bool openerAt(std::string_view s, std::size_t at, std::string_view opener) {
  if (!startsWithAt(s, at, opener)) return false;
  const std::size_t next = at + opener.size();
  return next < s.size() && (s[next] == ' ' || s[next] == '>');
}

Tag tagAt(std::string_view s, std::size_t at) {
  if (at >= s.size() || s[at] != '<') return Tag::None;
  if (startsWithAt(s, at, kOpenThink)) return Tag::OpenThink;
  if (startsWithAt(s, at, kCloseThink)) return Tag::CloseThink;
  if (startsWithAt(s, at, kOpenAnswer)) return Tag::OpenAnswer;
  if (startsWithAt(s, at, kCloseAnswer)) return Tag::CloseAnswer;
  if (openerAt(s, at, kOpenCall)) return Tag::OpenCall;
  if (startsWithAt(s, at, kCloseCall)) return Tag::CloseCall;
  if (openerAt(s, at, kOpenOutput)) return Tag::OpenOutput;
  if (startsWithAt(s, at, kCloseOutput)) return Tag::CloseOutput;
  return Tag::None;
}

std::string_view tagName(Tag tag) {
  switch (tag) {
    case Tag::OpenThink: return kOpenThink;
    case Tag::CloseThink: return kCloseThink;
    case Tag::OpenAnswer: return kOpenAnswer;
    case Tag::CloseAnswer: return kCloseAnswer;
    case Tag::OpenCall: return "<tool_call>";
    case Tag::CloseCall: return kCloseCall;
    case Tag::OpenOutput: return "<tool_output>";
    case Tag::CloseOutput: return kCloseOutput;
    case Tag::None: break;
  }
  return "";
}

struct TagHit {
  Tag tag = Tag::None;
  std::size_t pos = std::string_view::npos;
};

TagHit nextTag(std::string_view s, std::size_t from) {
  for (std::size_t i = s.find('<', from); i != std::string_view::npos; i = s.find('<', i + 1)) {
    const Tag tag = tagAt(s, i);
    if (tag != Tag::None) return {tag, i};
  }
  return {};
}

std::size_t skipSpace(std::string_view s, std::size_t i) {
  while (i < s.size()) {
    const auto cp = text::decodeAt(s, i);
    if (!text::isSpace(cp.value)) break;
    i += cp.length;
  }
  return i;
}

// Parses `name=VALUE>` at `at`; VALUE is [a-z0-9_]+. Returns the position past '>'.
std::optional<std::pair<std::string_view, std::size_t>> attribute(std::string_view s, std::size_t at,
                                                                  std::string_view key) {
  if (at >= s.size() || s[at] != ' ') return std::nullopt;
  ++at;
  if (!startsWithAt(s, at, key) || !startsWithAt(s, at + key.size(), "=")) return std::nullopt;
  const std::size_t begin = at + key.size() + 1;
  std::size_t end = begin;
  while (end < s.size() && ((s[end] >= 'a' && s[end] <= 'z') || (s[end] >= '0' && s[end] <= '9') || s[end] == '_'))
    ++end;
  if (end == begin || end >= s.size() || s[end] != '>') return std::nullopt;
  return std::pair{s.substr(begin, end - begin), end + 1};
}

struct ToolBlock {
  ToolInvocation call;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Parses one <tool_call ...>...</tool_call><tool_output ...>...</tool_output>
// pair starting at `at`. On failure returns nullopt and sets `why`.
std::optional<ToolBlock> parseToolBlock(std::string_view s, std::size_t at, std::string& why) {
  auto name = attribute(s, at + kOpenCall.size(), "name");
  if (!name) {
    why = "malformed <tool_call> header";
    return std::nullopt;
  }
  const auto tool = parseToolName(name->first);
  if (!tool) {
    why = "unknown tool '" + std::string(name->first) + "'";
    return std::nullopt;
  }
  const TagHit close_call = nextTag(s, name->second);
  if (close_call.tag != Tag::CloseCall) {
    why = "<tool_call> not closed by </tool_call>";
    return std::nullopt;
  }
  ToolBlock block;
  block.begin = at;
  block.call.tool = *tool;
  block.call.arguments_raw = std::string(text::trim(s.substr(name->second, close_call.pos - name->second)));

  const std::size_t out_at = skipSpace(s, close_call.pos + kCloseCall.size());
  if (tagAt(s, out_at) != Tag::OpenOutput) {
    why = "<tool_call> not followed by <tool_output>";
    return std::nullopt;
  }
  auto id = attribute(s, out_at + kOpenOutput.size(), "id");
  std::size_t output_id = 0;
  if (!id || std::from_chars(id->first.data(), id->first.data() + id->first.size(), output_id).ec != std::errc{} ||
      id->first.find_first_not_of("0123456789") != std::string_view::npos) {
    why = "malformed <tool_output> header";
    return std::nullopt;
  }
  const TagHit close_out = nextTag(s, id->second);
  if (close_out.tag != Tag::CloseOutput) {
    why = "<tool_output> not closed by </tool_output>";
    return std::nullopt;
  }
  block.call.output_id = output_id;
  block.call.output_raw = std::string(text::trim(s.substr(id->second, close_out.pos - id->second)));
  block.end = close_out.pos + kCloseOutput.size();
  return block;
}

class TranscriptParser {
 public:
  TranscriptParser(std::string_view raw, RuleId rule) : s_(raw), rule_(rule) {}

  ParsedResponse run() {
    if (parseBlocks() && checkAnswer()) {
      out_.format_valid = true;
      out_.tool_calls = detectToolReference(out_.reasoning, std::move(out_.tool_calls));
      return std::move(out_);
    }
    ParsedResponse invalid;
    invalid.diagnostics = std::move(out_.diagnostics);
    return invalid;
  }

 private:
  bool fail(std::string message) {
    out_.diagnostics.push_back(std::move(message));
    return false;
  }

  bool addToolBlock(std::size_t& i) {
    std::string why;
    auto block = parseToolBlock(s_, i, why);
    if (!block) return fail(why);
    for (const auto& existing : out_.tool_calls)
      if (existing.output_id == block->call.output_id)
        return fail("duplicate tool_output id " + std::to_string(block->call.output_id));
    out_.tool_calls.push_back(std::move(block->call));
    i = block->end;
    return true;
  }

  bool parseThink(std::size_t& i) {
    if (seen_think_) return fail("more than one <think> block");
    if (seen_answer_) return fail("<think> block after <answer> block");
    seen_think_ = true;
    std::string reasoning;
    std::size_t j = i + kOpenThink.size();
    for (;;) {
      const TagHit hit = nextTag(s_, j);
      if (hit.tag == Tag::None) return fail("<think> not closed");
      if (!reasoning.empty()) reasoning += '\n';
      reasoning += s_.substr(j, hit.pos - j);
      if (hit.tag == Tag::CloseThink) {
        i = hit.pos + kCloseThink.size();
        break;
      }
      if (hit.tag != Tag::OpenCall) return fail("unexpected " + std::string(tagName(hit.tag)) + " inside <think>");
      j = hit.pos;
      if (!addToolBlock(j)) return false;
    }
    out_.reasoning = std::string(text::trim(reasoning));
    return true;
  }

  bool parseAnswer(std::size_t& i) {
    if (seen_answer_) return fail("more than one <answer> block");
    if (!seen_think_) return fail("<answer> block before <think> block");
    seen_answer_ = true;
    const std::size_t body = i + kOpenAnswer.size();
    const TagHit hit = nextTag(s_, body);
    if (hit.tag == Tag::None) return fail("<answer> not closed");
    if (hit.tag != Tag::CloseAnswer) return fail("unexpected " + std::string(tagName(hit.tag)) + " inside <answer>");
    out_.answer_raw = std::string(text::trim(s_.substr(body, hit.pos - body)));
    i = hit.pos + kCloseAnswer.size();
    return true;
  }

  bool parseBlocks() {
    std::size_t i = 0;
    for (;;) {
      i = skipSpace(s_, i);
      if (i >= s_.size()) break;
      const Tag tag = tagAt(s_, i);
      bool ok = false;
      switch (tag) {
        case Tag::OpenThink: ok = parseThink(i); break;
        case Tag::OpenAnswer: ok = parseAnswer(i); break;
        case Tag::OpenCall: ok = addToolBlock(i); break;
        case Tag::None: return fail("unexpected text outside blocks at byte " + std::to_string(i));
        default: return fail("unexpected " + std::string(tagName(tag)) + " at byte " + std::to_string(i));
      }
      if (!ok) return false;
    }
    if (!seen_think_) return fail("missing <think> block");
    if (!seen_answer_) return fail("missing <answer> block");
    return true;
  }

  std::optional<bool> label(std::string_view word) {
    const std::string lower = text::asciiLower(word);
    if (lower == "suitable" || lower == "yes") return true;
    if (lower == "unsuitable" || lower == "no") return false;
    return std::nullopt;
  }

  bool checkAnswer() {
    const std::string_view answer = out_.answer_raw;
    switch (groundTruthKind(rule_)) {
      case GroundTruthKind::BinaryLabel: {
        out_.binary_label = label(answer);
        if (!out_.binary_label) return fail("answer is not a binary label");
        return true;
      }
      case GroundTruthKind::BinaryLabelWithBoxes: {
        std::size_t word_end = 0;
        while (word_end < answer.size() && answer[word_end] != '[' &&
               !text::isSpace(text::decodeAt(answer, word_end).value))
          ++word_end;
        out_.binary_label = label(answer.substr(0, word_end));
        if (!out_.binary_label) return fail("answer does not start with a binary label");
        const std::string_view rest = text::trim(answer.substr(word_end));
        if (rest.empty()) return true;
        if (rest.front() != '[') return fail("expected a box list after the label");
        auto parsed = extractBoxes(rest);
        if (!parsed.list_well_formed || !text::trim(rest.substr(parsed.consumed)).empty())
          return fail("box list is not a bracketed list of [x1,y1,x2,y2] entries");
        for (const auto& err : parsed.errors)
          out_.diagnostics.push_back("MalformedBox entry " + std::to_string(err.entry) + ": " + err.message);
        out_.boxes = std::move(parsed.boxes);
        return true;
      }
      case GroundTruthKind::ContinuousScore: {
        std::size_t k = 0;
        if (k < answer.size() && (answer[k] == '+' || answer[k] == '-')) ++k;
        const std::size_t int_begin = k;
        while (k < answer.size() && answer[k] >= '0' && answer[k] <= '9') ++k;
        bool ok = k > int_begin;
        if (ok && k < answer.size() && answer[k] == '.') {
          const std::size_t frac_begin = ++k;
          while (k < answer.size() && answer[k] >= '0' && answer[k] <= '9') ++k;
          ok = k > frac_begin;
        }
        if (!ok || k != answer.size()) return fail("answer is not a decimal score");
        const std::size_t num_begin = answer[0] == '+' ? 1 : 0;
        double value = 0.0;
        std::from_chars(answer.data() + num_begin, answer.data() + answer.size(), value);
        if (value < 1.0 || value > 5.0) {
          out_.diagnostics.push_back("score " + std::string(answer) + " clamped to [1,5]");
          out_.score_clamped = true;
          value = std::clamp(value, 1.0, 5.0);
        }
        out_.score = value;
        return true;
      }
    }
    return false;
  }

  std::string_view s_;
  RuleId rule_;
  ParsedResponse out_;
  bool seen_think_ = false;
  bool seen_answer_ = false;
};

std::optional<std::int64_t> parseInteger(std::string_view field) {
  field = text::trim(field);
  if (field.empty()) return std::nullopt;
  std::int64_t value = 0;
  const char* begin = field.data();
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

ParsedResponse parseTranscript(std::string_view raw, RuleId rule) { return TranscriptParser(raw, rule).run(); }

BoxParseResult extractBoxes(std::string_view answer_raw) {
  BoxParseResult result;
  const std::string_view s = answer_raw;
  std::size_t i = s.find('[');
  if (i == std::string_view::npos) return result;
  const auto malformed = [&result]() {
    result.list_well_formed = false;
    return result;
  };

  i = skipSpace(s, i + 1);
  if (i < s.size() && s[i] == ']') {
    result.consumed = i + 1;
    return result;
  }
  for (std::size_t entry = 0;; ++entry) {
    i = skipSpace(s, i);
    if (i >= s.size() || s[i] != '[') return malformed();
    const std::size_t close = s.find(']', i + 1);
    if (close == std::string_view::npos) return malformed();
    const std::string_view content = s.substr(i + 1, close - i - 1);
    if (content.find('[') != std::string_view::npos) return malformed();

    std::vector<std::string_view> fields;
    for (std::size_t from = 0;;) {
      const std::size_t comma = content.find(',', from);
      fields.push_back(content.substr(from, comma == std::string_view::npos ? std::string_view::npos : comma - from));
      if (comma == std::string_view::npos) break;
      from = comma + 1;
    }
    if (fields.size() != 4) {
      result.errors.push_back({entry, "expected 4 coordinates, got " + std::to_string(fields.size())});
    } else {
      std::array<std::int64_t, 4> v{};
      bool numeric = true;
      for (std::size_t f = 0; f < 4; ++f) {
        const auto value = parseInteger(fields[f]);
        if (!value) {
          numeric = false;
          break;
        }
        v[f] = *value;
      }
      if (!numeric) {
        result.errors.push_back({entry, "coordinates must be integers"});
      } else {
        try {
          result.boxes.push_back(checkedBox(v[0], v[1], v[2], v[3]));
        } catch (const Error& e) {
          result.errors.push_back({entry, e.what()});
        }
      }
    }

    i = skipSpace(s, close + 1);
    if (i < s.size() && s[i] == ',') {
      ++i;
      continue;
    }
    if (i < s.size() && s[i] == ']') {
      result.consumed = i + 1;
      return result;
    }
    return malformed();
  }
}

std::vector<ToolInvocation> detectToolReference(std::string_view reasoning, std::vector<ToolInvocation> calls) {
  for (auto& call : calls) {
    const std::string by_name = "[tool:" + std::string(toString(call.tool)) + "]";
    const std::string by_id = "[tool#" + std::to_string(call.output_id) + "]";
    call.referenced_in_reasoning =
        reasoning.find(by_name) != std::string_view::npos || reasoning.find(by_id) != std::string_view::npos;
  }
  return calls;
}

LenientScan scanTranscriptLeniently(std::string_view raw) {
  LenientScan scan;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (std::size_t i = raw.find(kOpenCall); i != std::string_view::npos; i = raw.find(kOpenCall, i + 1)) {
    if (!openerAt(raw, i, kOpenCall)) continue;
    std::string why;
    if (auto block = parseToolBlock(raw, i, why)) {
      spans.emplace_back(block->begin, block->end);
      scan.tool_calls.push_back(std::move(block->call));
      i = block->end - 1;
    }
  }

  std::size_t begin = 0;
  std::size_t end = raw.size();
  if (const auto open = raw.find(kOpenThink); open != std::string_view::npos) {
    if (const auto close = raw.find(kCloseThink, open); close != std::string_view::npos) {
      begin = open + kOpenThink.size();
      end = close;
    }
  }
  std::string reasoning;
  std::size_t cursor = begin;
  for (const auto& [b, e] : spans) {
    if (e <= cursor || b >= end) continue;
    if (b > cursor) reasoning += raw.substr(cursor, b - cursor);
    reasoning += '\n';
    cursor = std::min(e, end);
  }
  if (cursor < end) reasoning += raw.substr(cursor, end - cursor);
  scan.reasoning = std::string(text::trim(reasoning));
  scan.tool_calls = detectToolReference(scan.reasoning, std::move(scan.tool_calls));
  return scan;
}

std::string canonicalBinaryAnswer(bool label) { return label ? "suitable" : "unsuitable"; }

std::string canonicalScoreAnswer(double score) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), score, std::chars_format::fixed);
  if (ec != std::errc{}) throw Error(ErrorKind::InvalidArgument, "score not representable");
  return std::string(buf.data(), ptr);
}

std::string canonicalBoxAnswer(bool label, const std::vector<BoundingBox>& boxes) {
  std::string out = canonicalBinaryAnswer(label) + " [";
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (i > 0) out += ',';
    out += toString(boxes[i]);
  }
  out += ']';
  return out;
}

std::string serializeTranscript(const ParsedResponse& parsed) {
  std::string out;
  for (const auto& call : parsed.tool_calls) {
    out += "<tool_call name=";
    out += toString(call.tool);
    out += '>';
    out += call.arguments_raw;
    out += "</tool_call><tool_output id=";
    out += std::to_string(call.output_id);
    out += '>';
    out += call.output_raw;
    out += "</tool_output>\n";
  }
  out += "<think>";
  out += parsed.reasoning;
  out += "</think>\n<answer>";
  out += parsed.answer_raw;
  out += "</answer>";
  return out;
}

}  // namespace a3
