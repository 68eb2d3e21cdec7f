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

#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "a3/dataset.hpp"
#include "a3/error.hpp"

using namespace a3;

namespace {

SampleRecord record(std::string id, std::string image, RuleId rule = RuleId::ImageFidelity) {
  SampleRecord r;
  r.sample_id = std::move(id);
  r.image_ref = std::move(image);
  r.rule = rule;
  r.instruction = "Judge this.";
  r.ground_truth = BinaryTruth{true};
  return r;
}

ErrorKind parseKind(const std::string& line) {
  try {
    sampleFromJson(nlohmann::ordered_json::parse(line));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an a3::Error");
  return ErrorKind::InvalidArgument;
}

std::set<std::string> ids(const std::vector<SampleRecord>& records) {
  std::set<std::string> out;
  for (const auto& r : records) out.insert(r.sample_id);
  return out;
}

}  // namespace

TEST_CASE("records round-trip through JSON lines") {
  std::vector<SampleRecord> records;
  records.push_back(record("a", "img/1.png"));
  SampleRecord boxes = record("b", "img/2.png", RuleId::PromotionalIconography);
  boxes.ground_truth = BoxTruth{true, {{1, 2, 30, 40}, {5, 5, 6, 6}}};
  boxes.reference_response = "<think>x</think>\n<answer>y</answer>";
  boxes.extras["source"] = "synthetic";
  boxes.extras["tags"] = {1, 2};
  records.push_back(boxes);
  SampleRecord score = record("c", "img/3.png", RuleId::AestheticAttribute);
  score.ground_truth = ScoreTruth{4.25};
  records.push_back(score);

  std::stringstream io;
  writeSamples(records, io);
  const SampleLoad load = readSamples(io);
  CHECK(load.errors.empty());
  CHECK(load.records == records);

  std::stringstream again;
  writeSamples(load.records, again);
  std::stringstream first;
  writeSamples(records, first);
  CHECK(again.str() == first.str());
}

TEST_CASE("schema violations") {
  const std::string ok =
      R"({"a3_schema":1,"sample_id":"x","rule":"aesthetic_attribute","image_ref":"i","instruction":"q","ground_truth":{"score":5}})";
  CHECK_NOTHROW(sampleFromJson(nlohmann::ordered_json::parse(ok)));
  CHECK(parseKind(R"({"a3_schema":1,"sample_id":"x","rule":"aesthetic_attribute","image_ref":"i","instruction":"q","ground_truth":{"score":7}})") ==
        ErrorKind::SchemaError);
  CHECK(parseKind(R"({"a3_schema":1,"sample_id":"x","rule":"aesthetic_attribute","image_ref":"i","instruction":"q","ground_truth":{"score":0.5}})") ==
        ErrorKind::SchemaError);
  CHECK(parseKind(R"({"a3_schema":1,"sample_id":"x","rule":"image_fidelity","image_ref":"i","instruction":"q","ground_truth":{"score":3}})") ==
        ErrorKind::GroundTruthMismatch);
  CHECK(parseKind(R"({"a3_schema":1,"sample_id":"x","rule":"promotional_iconography","image_ref":"i","instruction":"q","ground_truth":{"binary_with_boxes":{"label":true,"boxes":[[5,5,1,1]]}}})") ==
        ErrorKind::SchemaError);
  CHECK(parseKind(R"({"a3_schema":2,"sample_id":"x","rule":"image_fidelity","image_ref":"i","instruction":"q","ground_truth":{"binary":true}})") ==
        ErrorKind::SchemaError);
  CHECK(parseKind(R"({"sample_id":"x","rule":"image_fidelity","image_ref":"i","instruction":"q","ground_truth":{"binary":true}})") ==
        ErrorKind::SchemaError);
  CHECK(parseKind(R"({"a3_schema":1,"sample_id":"x","rule":"nope","image_ref":"i","instruction":"q","ground_truth":{"binary":true}})") ==
        ErrorKind::SchemaError);
  CHECK(parseKind(R"({"a3_schema":1,"rule":"image_fidelity","image_ref":"i","instruction":"q","ground_truth":{"binary":true}})") ==
        ErrorKind::SchemaError);
}

TEST_CASE("mixed file keeps good records and reports bad lines") {
  std::istringstream in(
      R"({"a3_schema":1,"sample_id":"a","rule":"image_fidelity","image_ref":"i","instruction":"q","ground_truth":{"binary":true}})"
      "\n"
      "{broken\n"
      "\n"
      R"({"a3_schema":1,"sample_id":"b","rule":"aesthetic_attribute","image_ref":"i","instruction":"q","ground_truth":{"score":7}})"
      "\n"
      R"({"a3_schema":1,"sample_id":"a","rule":"image_fidelity","image_ref":"i","instruction":"q","ground_truth":{"binary":false}})"
      "\n"
      R"({"a3_schema":1,"sample_id":"c","rule":"image_fidelity","image_ref":"i","instruction":"q","ground_truth":{"binary":false}})"
      "\n");
  const SampleLoad load = readSamples(in);
  CHECK(ids(load.records) == std::set<std::string>{"a", "c"});
  REQUIRE(load.errors.size() == 3);
  CHECK(load.errors[0].line == 2);
  CHECK(load.errors[1].line == 4);
  CHECK(load.errors[2].line == 5);
  CHECK_THROWS_AS(readSamples(std::filesystem::path("/nonexistent/a3/samples.jsonl")), Error);
}

TEST_CASE("transcript reader") {
  std::istringstream in(
      R"({"sample_id":"a","transcript":"<think>t</think><answer>1</answer>"})"
      "\n"
      R"({"sample_id":"b"})"
      "\n"
      R"({"sample_id":"a","transcript":"again"})"
      "\n"
      R"({"sample_id":"c","transcript":""})"
      "\n");
  const TranscriptLoad load = readTranscripts(in);
  CHECK(load.by_sample.size() == 2);
  CHECK(load.by_sample.at("a") == "<think>t</think><answer>1</answer>");
  CHECK(load.by_sample.at("c").empty());
  REQUIRE(load.errors.size() == 2);
  CHECK(load.errors[0].line == 2);
  CHECK(load.errors[1].line == 3);
}

TEST_CASE("split sizes") {
  std::vector<SampleRecord> ten;
  for (int i = 0; i < 10; ++i) ten.push_back(record("s" + std::to_string(i), "img/" + std::to_string(i)));
  const DatasetSplit s = splitDataset(ten, 1);
  CHECK(s.train.size() == 8);
  CHECK(s.val.size() == 1);
  CHECK(s.test.size() == 1);

  std::vector<SampleRecord> twenty;
  for (int i = 0; i < 20; ++i) twenty.push_back(record("t" + std::to_string(i), "img/" + std::to_string(i / 2)));
  const DatasetSplit p = splitDataset(twenty, 5);
  CHECK(p.train.size() == 16);
  CHECK(p.val.size() == 2);
  CHECK(p.test.size() == 2);
  for (const auto* bucket : {&p.train, &p.val, &p.test}) {
    std::map<std::string, int> count;
    for (const auto& r : *bucket) ++count[r.image_ref];
    for (const auto& [image, n] : count) CHECK(n == 2);
  }
  const DatasetSplit empty = splitDataset({}, 3);
  CHECK(empty.train.empty());
  CHECK(empty.val.empty());
  CHECK(empty.test.empty());
}

TEST_CASE("split is deterministic and independent of input order") {
  std::vector<SampleRecord> records;
  for (int i = 0; i < 137; ++i)
    records.push_back(record("r" + std::to_string(i), "img/" + std::to_string(i % 61)));
  const DatasetSplit a = splitDataset(records, 42);
  std::vector<SampleRecord> reversed(records.rbegin(), records.rend());
  const DatasetSplit b = splitDataset(reversed, 42);
  CHECK(ids(a.train) == ids(b.train));
  CHECK(ids(a.val) == ids(b.val));
  CHECK(ids(a.test) == ids(b.test));
  CHECK(a.train.size() + a.val.size() + a.test.size() == records.size());

  bool differs = false;
  for (std::uint64_t seed = 0; seed < 8 && !differs; ++seed) differs = ids(splitDataset(records, seed).val) != ids(a.val);
  CHECK(differs);
}
