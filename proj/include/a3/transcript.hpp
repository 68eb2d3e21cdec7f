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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a3/geometry.hpp"
#include "a3/taxonomy.hpp"

// Transcript grammar (case-sensitive, top level, whitespace between blocks):
//
//   <tool_call name=NAME>ARGS</tool_call><tool_output id=K>OUTPUT</tool_output>   (zero or more)
//   <think>REASONING</think>
//   <answer>PAYLOAD</answer>
//
// Tool blocks may also appear inside the think block. The reasoning segment
// is the think content with embedded tool blocks removed. A reasoning cites a
// call through the literal marker "[tool:NAME]" or "[tool#K]".
namespace a3 {

struct ToolInvocation {
  ToolName tool = ToolName::HueAnalysis;
  std::string arguments_raw;
  std::string output_raw;
  std::size_t output_id = 0;
  bool referenced_in_reasoning = false;

  friend bool operator==(const ToolInvocation&, const ToolInvocation&) = default;
};

struct ParsedResponse {
  bool format_valid = false;
  std::string reasoning;
  std::string answer_raw;
  std::vector<ToolInvocation> tool_calls;
  std::optional<bool> binary_label;
  std::optional<double> score;
  bool score_clamped = false;
  std::vector<BoundingBox> boxes;
  std::vector<std::string> diagnostics;

  friend bool operator==(const ParsedResponse&, const ParsedResponse&) = default;
};

ParsedResponse parseTranscript(std::string_view raw, RuleId rule);

struct BoxEntryError {
  std::size_t entry = 0;
  std::string message;
};

struct BoxParseResult {
  std::vector<BoundingBox> boxes;
  std::vector<BoxEntryError> errors;
  // False when the bracketed list itself is unparseable (not a per-entry fault).
  bool list_well_formed = true;
  // Byte offset just past the closing bracket of the list.
  std::size_t consumed = 0;
};

/// Parses "[[x1,y1,x2,y2], ...]" starting at the first '['. No '[' yields an
/// empty list. Bad entries are reported individually; siblings are kept.
BoxParseResult extractBoxes(std::string_view answer_raw);

/// Returns `calls` with referenced_in_reasoning set from the marker convention.
std::vector<ToolInvocation> detectToolReference(std::string_view reasoning, std::vector<ToolInvocation> calls);

/// Best-effort view of a transcript that failed the format check: every
/// well-delimited tool block, and the reasoning text (first closed think
/// block, else the whole transcript) with tool blocks stripped.
struct LenientScan {
  std::string reasoning;
  std::vector<ToolInvocation> tool_calls;
};

LenientScan scanTranscriptLeniently(std::string_view raw);

/// Canonical answer payloads.
std::string canonicalBinaryAnswer(bool label);
std::string canonicalScoreAnswer(double score);
std::string canonicalBoxAnswer(bool label, const std::vector<BoundingBox>& boxes);

/// Renders a well-formed response through the canonical template: tool
/// blocks (one per line), then the think block, then the answer block.
std::string serializeTranscript(const ParsedResponse& parsed);

}  // namespace a3
