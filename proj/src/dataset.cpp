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

#include "a3/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>

#include "a3/error.hpp"

namespace a3 {
namespace {

using json = nlohmann::ordered_json;

constexpr std::array<std::string_view, 7> kKnownFields = {
    "a3_schema", "sample_id", "rule", "image_ref", "instruction", "reference_response", "ground_truth",
};

[[noreturn]] void schemaError(const std::string& message) { throw Error(ErrorKind::SchemaError, message); }

const json& requireField(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) schemaError(std::string("missing field '") + key + "'");
  return *it;
}

std::string requireString(const json& j, const char* key) {
  const json& v = requireField(j, key);
  if (!v.is_string()) schemaError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

json boxesToJson(const std::vector<BoundingBox>& boxes) {
  json arr = json::array();
  for (const auto& b : boxes) arr.push_back(json::array({b.x1, b.y1, b.x2, b.y2}));
  return arr;
}

std::vector<BoundingBox> boxesFromJson(const json& j) {
  if (!j.is_array()) schemaError("boxes must be an array");
  std::vector<BoundingBox> boxes;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& entry = j[i];
    if (!entry.is_array() || entry.size() != 4 ||
        !std::all_of(entry.begin(), entry.end(), [](const json& v) { return v.is_number_integer(); }))
      schemaError("box " + std::to_string(i) + " must be [x1,y1,x2,y2] integers");
    try {
      boxes.push_back(checkedBox(entry[0].get<std::int64_t>(), entry[1].get<std::int64_t>(),
                                 entry[2].get<std::int64_t>(), entry[3].get<std::int64_t>()));
    } catch (const Error& e) {
      schemaError("box " + std::to_string(i) + ": " + e.what());
    }
  }
  return boxes;
}

json truthToJson(const GroundTruth& truth) {
  return std::visit(
      [](const auto& t) -> json {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, BinaryTruth>) {
          return json{{"binary", t.label}};
        } else if constexpr (std::is_same_v<T, BoxTruth>) {
          return json{{"binary_with_boxes", json{{"label", t.label}, {"boxes", boxesToJson(t.boxes)}}}};
        } else {
          return json{{"score", t.score}};
        }
      },
      truth);
}

GroundTruth truthFromJson(const json& j) {
  if (!j.is_object() || j.size() != 1) schemaError("ground_truth must be an object with exactly one kind");
  const auto& [key, value] = *j.items().begin();
  if (key == "binary") {
    if (!value.is_boolean()) schemaError("ground_truth.binary must be a boolean");
    return BinaryTruth{value.get<bool>()};
  }
  if (key == "binary_with_boxes") {
    if (!value.is_object()) schemaError("ground_truth.binary_with_boxes must be an object");
    const json& label = requireField(value, "label");
    if (!label.is_boolean()) schemaError("ground_truth.binary_with_boxes.label must be a boolean");
    return BoxTruth{label.get<bool>(), boxesFromJson(requireField(value, "boxes"))};
  }
  if (key == "score") {
    if (!value.is_number()) schemaError("ground_truth.score must be a number");
    return ScoreTruth{value.get<double>()};
  }
  schemaError("unknown ground_truth kind '" + key + "'");
}

std::uint64_t boundedDraw(std::mt19937_64& rng, std::uint64_t bound) {
  // Uniform in [0, bound) by rejection; avoids the implementation-defined
  // std::uniform_int_distribution so splits are portable.
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t draw = 0;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace

GroundTruthKind kindOf(const GroundTruth& truth) noexcept {
  switch (truth.index()) {
    case 0: return GroundTruthKind::BinaryLabel;
    case 1: return GroundTruthKind::BinaryLabelWithBoxes;
    default: return GroundTruthKind::ContinuousScore;
  }
}

void validateRecord(const SampleRecord& record) {
  if (record.sample_id.empty()) schemaError("sample_id must be nonempty");
  const GroundTruthKind expected = groundTruthKind(record.rule);
  if (kindOf(record.ground_truth) != expected)
    throw Error(ErrorKind::GroundTruthMismatch, "rule " + std::string(toString(record.rule)) + " expects " +
                                                    std::string(toString(expected)) + " ground truth");
  if (const auto* s = std::get_if<ScoreTruth>(&record.ground_truth)) {
    if (!(s->score >= 1.0 && s->score <= 5.0))
      schemaError("score " + json(s->score).dump() + " outside [1,5]");
  }
  if (const auto* b = std::get_if<BoxTruth>(&record.ground_truth)) {
    for (const auto& box : b->boxes)
      if (!box.valid()) schemaError("invalid box " + toString(box));
  }
}

json toJson(const SampleRecord& record) {
  json j;
  j["a3_schema"] = kSchemaVersion;
  j["sample_id"] = record.sample_id;
  j["rule"] = std::string(toString(record.rule));
  j["image_ref"] = record.image_ref;
  j["instruction"] = record.instruction;
  if (record.reference_response) j["reference_response"] = *record.reference_response;
  j["ground_truth"] = truthToJson(record.ground_truth);
  for (const auto& [key, value] : record.extras.items()) j[key] = value;
  return j;
}

SampleRecord sampleFromJson(const json& j) {
  if (!j.is_object()) schemaError("record must be an object");
  const json& version = requireField(j, "a3_schema");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
    schemaError("unsupported a3_schema " + version.dump());

  SampleRecord record;
  record.sample_id = requireString(j, "sample_id");
  const std::string rule = requireString(j, "rule");
  const auto rule_id = parseRuleId(rule);
  if (!rule_id) schemaError("unknown rule '" + rule + "'");
  record.rule = *rule_id;
  record.image_ref = requireString(j, "image_ref");
  record.instruction = requireString(j, "instruction");
  if (const auto it = j.find("reference_response"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) schemaError("reference_response must be a string");
    record.reference_response = it->get<std::string>();
  }
  record.ground_truth = truthFromJson(requireField(j, "ground_truth"));
  for (const auto& [key, value] : j.items())
    if (std::find(kKnownFields.begin(), kKnownFields.end(), key) == kKnownFields.end()) record.extras[key] = value;
  validateRecord(record);
  return record;
}

SampleLoad readSamples(std::istream& in) {
  SampleLoad load;
  std::set<std::string> ids;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto record = sampleFromJson(json::parse(line));
      if (!ids.insert(record.sample_id).second) schemaError("duplicate sample_id '" + record.sample_id + "'");
      load.records.push_back(std::move(record));
    } catch (const json::exception& e) {
      load.errors.push_back({number, std::string("invalid JSON: ") + e.what()});
    } catch (const Error& e) {
      load.errors.push_back({number, e.what()});
    }
  }
  return load;
}

SampleLoad readSamples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return readSamples(in);
}

void writeSamples(const std::vector<SampleRecord>& records, std::ostream& out) {
  for (const auto& record : records) out << toJson(record).dump() << '\n';
}

void writeSamples(const std::vector<SampleRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  writeSamples(records, out);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

TranscriptLoad readTranscripts(std::istream& in) {
  TranscriptLoad load;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!j.is_object()) schemaError("transcript row must be an object");
      const std::string id = requireString(j, "sample_id");
      std::string transcript = requireString(j, "transcript");
      if (!load.by_sample.emplace(id, std::move(transcript)).second)
        schemaError("duplicate transcript for sample_id '" + id + "'");
    } catch (const json::exception& e) {
      load.errors.push_back({number, std::string("invalid JSON: ") + e.what()});
    } catch (const Error& e) {
      load.errors.push_back({number, e.what()});
    }
  }
  return load;
}

DatasetSplit splitDataset(const std::vector<SampleRecord>& records, std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> by_image;
  for (std::size_t i = 0; i < records.size(); ++i) by_image[records[i].image_ref].push_back(i);

  std::vector<const std::vector<std::size_t>*> groups;
  groups.reserve(by_image.size());
  for (const auto& [image, members] : by_image) groups.push_back(&members);

  std::mt19937_64 rng(seed);
  for (std::size_t i = groups.size(); i > 1; --i) std::swap(groups[i - 1], groups[boundedDraw(rng, i)]);

  const std::size_t n = records.size();
  const std::size_t val_target = (n + 5) / 10;
  const std::size_t test_target = (n + 5) / 10;
  std::size_t val_size = 0;
  std::size_t test_size = 0;
  std::vector<int> bucket(n, 0);
  for (const auto* members : groups) {
    int target = 0;
    if (val_size + members->size() <= val_target) {
      target = 1;
      val_size += members->size();
    } else if (test_size + members->size() <= test_target) {
      target = 2;
      test_size += members->size();
    }
    for (std::size_t idx : *members) bucket[idx] = target;
  }

  DatasetSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    auto& dest = bucket[i] == 0 ? split.train : bucket[i] == 1 ? split.val : split.test;
    dest.push_back(records[i]);
  }
  return split;
}

}  // namespace a3
