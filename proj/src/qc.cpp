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

#include "a3/qc.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <random>

#include <json.hpp>

#include "a3/assignment.hpp"
#include "a3/error.hpp"
#include "a3/metrics.hpp"
#include "format.hpp"

namespace a3 {
namespace {

using json = nlohmann::json;

std::vector<BoundingBox> boxList(const json& j, const char* field) {
  if (!j.is_array()) throw Error(ErrorKind::SchemaError, std::string(field) + " must be a box list");
  std::vector<BoundingBox> boxes;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 4 ||
        !std::all_of(entry.begin(), entry.end(), [](const json& v) { return v.is_number_integer(); }))
      throw Error(ErrorKind::SchemaError, std::string(field) + " entries must be [x1,y1,x2,y2] integers");
    try {
      boxes.push_back(checkedBox(entry[0].get<std::int64_t>(), entry[1].get<std::int64_t>(),
                                 entry[2].get<std::int64_t>(), entry[3].get<std::int64_t>()));
    } catch (const Error& e) {
      throw Error(ErrorKind::SchemaError, std::string(field) + ": " + e.what());
    }
  }
  return boxes;
}

template <typename T>
std::vector<T> sampleItems(const std::vector<T>& items, double fraction, std::mt19937_64& rng) {
  const auto keep = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(items.size())));
  if (keep >= items.size()) return items;
  std::vector<std::size_t> order(items.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Partial Fisher-Yates with a portable bounded draw.
  for (std::size_t i = 0; i < keep; ++i) {
    const std::uint64_t span = order.size() - i;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % span;
    std::uint64_t draw = 0;
    do {
      draw = rng();
    } while (draw >= limit);
    std::swap(order[i], order[i + draw % span]);
  }
  order.resize(keep);
  std::sort(order.begin(), order.end());
  std::vector<T> out;
  for (std::size_t idx : order) out.push_back(items[idx]);
  return out;
}

std::string describe(const char* what, double value, double bar) {
  return std::string(what) + " " + detail::fixed(value, 6) + " not above " + detail::fixed(bar, 6);
}

}  // namespace

CotAcceptance CotAcceptance::fromVotes(std::vector<bool> votes) {
  if (votes.size() != kCotPanelSize)
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(kCotPanelSize) + " votes, got " +
                                                std::to_string(votes.size()));
  const auto yes = static_cast<std::size_t>(std::count(votes.begin(), votes.end(), true));
  return {std::move(votes), yes >= kCotMajority};
}

CotRate cotAcceptanceRate(std::span<const CotAcceptance> decisions, double bar) {
  if (decisions.empty()) throw Error(ErrorKind::EmptyBatch, "no CoT decisions");
  const auto accepted = std::count_if(decisions.begin(), decisions.end(), [](const auto& d) { return d.accepted; });
  const double rate = static_cast<double>(accepted) / static_cast<double>(decisions.size());
  return {rate, rate > bar};
}

double detectionMeanIou(std::span<const DetectionAnnotation> items) {
  double sum = 0.0;
  std::size_t slots = 0;
  for (const auto& item : items) {
    const Matching matching = hungarianMatch(item.gold, item.annotation);
    for (const auto& [g, a] : matching.pairs) sum += iou(item.gold[g], item.annotation[a]);
    slots += item.gold.size() + item.annotation.size() - matching.pairs.size();
  }
  if (slots == 0) return 1.0;
  return sum / static_cast<double>(slots);
}

QcBatchReport qcGate(const QcBatch& batch, const QcThresholds& thresholds) {
  if (batch.empty()) throw Error(ErrorKind::EmptyBatch, "batch '" + batch.batch_id + "' has no annotations");
  QcBatchReport report;
  report.batch_id = batch.batch_id;

  if (!batch.binary.empty()) {
    const auto correct = std::count_if(batch.binary.begin(), batch.binary.end(),
                                       [](const auto& a) { return a.annotation == a.gold; });
    report.objective_accuracy = static_cast<double>(correct) / static_cast<double>(batch.binary.size());
    if (!(*report.objective_accuracy > thresholds.objective_accuracy))
      report.reasons.push_back(describe("objective accuracy", *report.objective_accuracy,
                                        thresholds.objective_accuracy));
  }
  if (!batch.detection.empty()) {
    report.mean_iou = detectionMeanIou(batch.detection);
    if (!(*report.mean_iou > thresholds.mean_iou))
      report.reasons.push_back(describe("mean IoU", *report.mean_iou, thresholds.mean_iou));
  }
  if (!batch.rating.empty()) {
    std::vector<double> annotated, gold;
    for (const auto& r : batch.rating) {
      annotated.push_back(r.annotation);
      gold.push_back(r.gold);
    }
    try {
      report.srcc = srcc(annotated, gold);
      if (!(*report.srcc > thresholds.srcc))
        report.reasons.push_back(describe("rating SRCC", *report.srcc, thresholds.srcc));
    } catch (const Error& e) {
      report.reasons.push_back(std::string("rating SRCC undefined: ") + e.what());
    }
  }
  if (!batch.cot.empty()) {
    const CotRate rate = cotAcceptanceRate(batch.cot, thresholds.cot_acceptance_rate);
    report.cot_acceptance_rate = rate.rate;
    if (!rate.meets_bar)
      report.reasons.push_back(describe("CoT acceptance rate", rate.rate, thresholds.cot_acceptance_rate));
  }
  report.pass = report.reasons.empty();
  return report;
}

QcBatch sampleForInspection(const QcBatch& batch, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(ErrorKind::InvalidConfig, "sampling fraction must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  QcBatch out;
  out.batch_id = batch.batch_id;
  out.binary = sampleItems(batch.binary, fraction, rng);
  out.detection = sampleItems(batch.detection, fraction, rng);
  out.rating = sampleItems(batch.rating, fraction, rng);
  out.cot = sampleItems(batch.cot, fraction, rng);
  return out;
}

QcLoad readQcBatches(std::istream& in) {
  QcLoad load;
  std::map<std::string, std::size_t> index;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json item = json::parse(line);
      if (!item.is_object()) throw Error(ErrorKind::SchemaError, "item must be an object");
      const auto id = item.find("batch_id");
      const auto kind = item.find("kind");
      if (id == item.end() || !id->is_string()) throw Error(ErrorKind::SchemaError, "missing string 'batch_id'");
      if (kind == item.end() || !kind->is_string()) throw Error(ErrorKind::SchemaError, "missing string 'kind'");
      const auto field = [&](const char* key) -> const json& {
        const auto it = item.find(key);
        if (it == item.end()) throw Error(ErrorKind::SchemaError, std::string("missing '") + key + "'");
        return *it;
      };

      QcBatch parsed;
      const std::string k = kind->get<std::string>();
      if (k == "binary") {
        const json& a = field("annotation");
        const json& g = field("gold");
        if (!a.is_boolean() || !g.is_boolean())
          throw Error(ErrorKind::SchemaError, "binary annotation and gold must be booleans");
        parsed.binary.push_back({a.get<bool>(), g.get<bool>()});
      } else if (k == "detection") {
        parsed.detection.push_back({boxList(field("annotation"), "annotation"), boxList(field("gold"), "gold")});
      } else if (k == "rating") {
        const json& a = field("annotation");
        const json& g = field("gold");
        if (!a.is_number() || !g.is_number())
          throw Error(ErrorKind::SchemaError, "rating annotation and gold must be numbers");
        const double av = a.get<double>();
        const double gv = g.get<double>();
        if (av < 1.0 || av > 5.0 || gv < 1.0 || gv > 5.0)
          throw Error(ErrorKind::SchemaError, "ratings must lie on the 1 to 5 scale");
        parsed.rating.push_back({av, gv});
      } else if (k == "cot") {
        const json& v = field("votes");
        if (!v.is_array() || !std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_boolean(); }))
          throw Error(ErrorKind::SchemaError, "votes must be a boolean array");
        parsed.cot.push_back(CotAcceptance::fromVotes(v.get<std::vector<bool>>()));
      } else {
        throw Error(ErrorKind::SchemaError, "unknown kind '" + k + "'");
      }

      const std::string batch_id = id->get<std::string>();
      auto [it, inserted] = index.emplace(batch_id, load.batches.size());
      if (inserted) {
        load.batches.emplace_back();
        load.batches.back().batch_id = batch_id;
      }
      QcBatch& dest = load.batches[it->second];
      dest.binary.insert(dest.binary.end(), parsed.binary.begin(), parsed.binary.end());
      dest.detection.insert(dest.detection.end(), parsed.detection.begin(), parsed.detection.end());
      dest.rating.insert(dest.rating.end(), parsed.rating.begin(), parsed.rating.end());
      dest.cot.insert(dest.cot.end(), parsed.cot.begin(), parsed.cot.end());
    } catch (const json::exception& e) {
      load.errors.push_back({number, std::string("invalid JSON: ") + e.what()});
    } catch (const Error& e) {
      load.errors.push_back({number, e.what()});
    }
  }
  return load;
}

std::string toJsonLine(const QcBatchReport& r) {
  const auto cell = [](const std::optional<double>& v) { return v ? detail::fixed(*v, 6) : std::string("null"); };
  std::string line = "{\"batch_id\":" + detail::quoted(r.batch_id) + ",\"objective_accuracy\":" +
                     cell(r.objective_accuracy) + ",\"mean_iou\":" + cell(r.mean_iou) + ",\"srcc\":" + cell(r.srcc) +
                     ",\"cot_acceptance_rate\":" + cell(r.cot_acceptance_rate) +
                     ",\"pass\":" + (r.pass ? "true" : "false") + ",\"reasons\":[";
  for (std::size_t i = 0; i < r.reasons.size(); ++i) line += (i ? "," : "") + detail::quoted(r.reasons[i]);
  return line + "]}";
}

}  // namespace a3
