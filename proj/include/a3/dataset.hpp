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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "a3/geometry.hpp"
#include "a3/taxonomy.hpp"

namespace a3 {

inline constexpr int kSchemaVersion = 1;

struct BinaryTruth {
  bool label = false;
  friend bool operator==(const BinaryTruth&, const BinaryTruth&) = default;
};

struct BoxTruth {
  bool label = false;
  std::vector<BoundingBox> boxes;
  friend bool operator==(const BoxTruth&, const BoxTruth&) = default;
};

struct ScoreTruth {
  double score = 1.0;
  friend bool operator==(const ScoreTruth&, const ScoreTruth&) = default;
};

using GroundTruth = std::variant<BinaryTruth, BoxTruth, ScoreTruth>;

GroundTruthKind kindOf(const GroundTruth& truth) noexcept;

struct SampleRecord {
  std::string sample_id;
  RuleId rule = RuleId::ImageFidelity;
  std::string image_ref;
  std::string instruction;
  std::optional<std::string> reference_response;
  GroundTruth ground_truth;
  // Fields this version does not know about, kept for lossless rewrite.
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

/// Throws GroundTruthMismatch when the truth kind does not fit the rule, and
/// SchemaError for out-of-range scores or invalid boxes.
void validateRecord(const SampleRecord& record);

nlohmann::ordered_json toJson(const SampleRecord& record);

/// Throws SchemaError (or GroundTruthMismatch) describing the first violation.
SampleRecord sampleFromJson(const nlohmann::ordered_json& j);

struct LineError {
  std::size_t line = 0;
  std::string message;
};

struct SampleLoad {
  std::vector<SampleRecord> records;
  std::vector<LineError> errors;
};

/// Newline-delimited records. Bad lines are reported with their 1-based line
/// number and skipped; a repeated sample_id is an error on the later line.
SampleLoad readSamples(std::istream& in);
SampleLoad readSamples(const std::filesystem::path& path);

void writeSamples(const std::vector<SampleRecord>& records, std::ostream& out);
void writeSamples(const std::vector<SampleRecord>& records, const std::filesystem::path& path);

struct TranscriptLoad {
  std::map<std::string, std::string> by_sample;
  std::vector<LineError> errors;
};

/// Newline-delimited {"sample_id": ..., "transcript": ...} objects.
TranscriptLoad readTranscripts(std::istream& in);

struct DatasetSplit {
  std::vector<SampleRecord> train;
  std::vector<SampleRecord> val;
  std::vector<SampleRecord> test;
};

/// Image-level 8:1:1 split. All records sharing an image_ref land in the same
/// bucket. Deterministic for a given seed regardless of input order.
DatasetSplit splitDataset(const std::vector<SampleRecord>& records, std::uint64_t seed);

}  // namespace a3
