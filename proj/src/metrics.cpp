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

#include "a3/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <iomanip>
#include <istream>

#include <json.hpp>

#include "a3/error.hpp"
#include "format.hpp"

namespace a3 {
namespace {

void requireNonEmpty(const PredictionSet& preds) {
  if (preds.entries.empty()) throw Error(ErrorKind::EmptySet, "prediction set is empty");
}

void checkPair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorKind::LengthMismatch, std::to_string(x.size()) + " vs " + std::to_string(y.size()));
  if (x.size() < 3) throw Error(ErrorKind::InsufficientSamples, "correlation needs at least 3 pairs");
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
  };
  if (constant(x) || constant(y)) throw Error(ErrorKind::DegenerateVector, "constant input vector");
}

double pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

std::string_view statusName(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::Absent: return "absent";
    case RowStatus::Error: return "error";
  }
  return "";
}

std::string csvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void PredictionSet::validate() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto fail = [&](const char* what) {
      throw Error(ErrorKind::KindMismatch, "entry " + std::to_string(i) + " (" + e.sample_id + ") " + what +
                                               " for a " + std::string(toString(kind)) + " set");
    };
    switch (kind) {
      case GroundTruthKind::BinaryLabel:
        if (!e.truth_label) fail("has no truth label");
        if (!e.detections.empty() || !e.truth_boxes.empty()) fail("carries boxes");
        if (e.predicted_score || e.truth_score) fail("carries scores");
        break;
      case GroundTruthKind::BinaryLabelWithBoxes:
        if (!e.truth_label) fail("has no truth label");
        if (e.predicted_score || e.truth_score) fail("carries scores");
        break;
      case GroundTruthKind::ContinuousScore:
        if (!e.predicted_score || !e.truth_score) fail("lacks a predicted or truth score");
        if (e.predicted_label || e.truth_label || !e.detections.empty() || !e.truth_boxes.empty())
          fail("carries labels or boxes");
        break;
    }
  }
}

double accuracy(const PredictionSet& preds) {
  requireNonEmpty(preds);
  if (preds.kind == GroundTruthKind::ContinuousScore)
    throw Error(ErrorKind::KindMismatch, "accuracy needs a label prediction set");
  preds.validate();
  std::size_t correct = 0;
  for (const auto& e : preds.entries)
    if (e.predicted_label && *e.predicted_label == *e.truth_label) ++correct;
  return static_cast<double>(correct) / static_cast<double>(preds.entries.size());
}

double mapAt50(const PredictionSet& preds) {
  requireNonEmpty(preds);
  if (preds.kind != GroundTruthKind::BinaryLabelWithBoxes)
    throw Error(ErrorKind::KindMismatch, "mAP needs a detection prediction set");
  preds.validate();

  std::size_t total_truth = 0;
  for (const auto& e : preds.entries) total_truth += e.truth_boxes.size();
  if (total_truth == 0) throw Error(ErrorKind::NoGroundTruth, "no ground-truth boxes in the set");

  struct Ranked {
    std::size_t entry;
    std::size_t det;
    double confidence;
  };
  std::vector<Ranked> ranked;
  for (std::size_t i = 0; i < preds.entries.size(); ++i)
    for (std::size_t d = 0; d < preds.entries[i].detections.size(); ++d)
      ranked.push_back({i, d, preds.entries[i].detections[d].confidence.value_or(1.0)});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Ranked& a, const Ranked& b) { return a.confidence > b.confidence; });

  std::vector<std::vector<bool>> used(preds.entries.size());
  for (std::size_t i = 0; i < preds.entries.size(); ++i) used[i].assign(preds.entries[i].truth_boxes.size(), false);

  std::vector<double> precision, recall;
  std::size_t tp = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    const auto& r = ranked[k];
    const auto& entry = preds.entries[r.entry];
    const BoundingBox& box = entry.detections[r.det].box;
    std::size_t best = entry.truth_boxes.size();
    double best_iou = kApIouThreshold;
    for (std::size_t g = 0; g < entry.truth_boxes.size(); ++g) {
      if (used[r.entry][g]) continue;
      const double overlap = iou(entry.truth_boxes[g], box);
      if (overlap > best_iou) {
        best_iou = overlap;
        best = g;
      }
    }
    if (best < entry.truth_boxes.size()) {
      used[r.entry][best] = true;
      ++tp;
    }
    precision.push_back(static_cast<double>(tp) / static_cast<double>(k + 1));
    recall.push_back(static_cast<double>(tp) / static_cast<double>(total_truth));
  }

  // All-point interpolation over the precision envelope.
  std::vector<double> mrec{0.0}, mpre{0.0};
  mrec.insert(mrec.end(), recall.begin(), recall.end());
  mpre.insert(mpre.end(), precision.begin(), precision.end());
  mrec.push_back(1.0);
  mpre.push_back(0.0);
  for (std::size_t i = mpre.size() - 1; i > 0; --i) mpre[i - 1] = std::max(mpre[i - 1], mpre[i]);
  double ap = 0.0;
  for (std::size_t i = 0; i + 1 < mrec.size(); ++i)
    if (mrec[i + 1] != mrec[i]) ap += (mrec[i + 1] - mrec[i]) * mpre[i + 1];
  return ap;
}

std::vector<double> fractionalRanks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j share the mean of 1-based ranks i+1..j+1.
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

double plcc(std::span<const double> x, std::span<const double> y) {
  checkPair(x, y);
  return pearson(x, y);
}

double srcc(std::span<const double> x, std::span<const double> y) {
  checkPair(x, y);
  const auto rx = fractionalRanks(x);
  const auto ry = fractionalRanks(y);
  return pearson(rx, ry);
}

BenchTable benchReport(const std::map<RuleId, PredictionSet>& runs) {
  BenchTable table;
  for (RuleId rule : kAllRules) {
    BenchRow row;
    row.rule = rule;
    const auto it = runs.find(rule);
    if (it == runs.end()) {
      table.rows.push_back(row);
      continue;
    }
    const PredictionSet& preds = it->second;
    std::vector<std::string> errors;
    const auto attempt = [&](std::optional<double>& slot, auto&& metric) {
      try {
        slot = metric();
      } catch (const Error& e) {
        errors.emplace_back(e.what());
      }
    };
    if (preds.kind != groundTruthKind(rule)) {
      errors.push_back("KindMismatch: rule " + std::string(toString(rule)) + " expects " +
                       std::string(toString(groundTruthKind(rule))) + " predictions");
    } else if (preds.kind == GroundTruthKind::ContinuousScore) {
      std::vector<double> predicted, truth;
      for (const auto& e : preds.entries) {
        predicted.push_back(e.predicted_score.value_or(0.0));
        truth.push_back(e.truth_score.value_or(0.0));
      }
      try {
        preds.validate();
        if (preds.entries.empty()) throw Error(ErrorKind::EmptySet, "prediction set is empty");
        attempt(row.srcc, [&] { return srcc(predicted, truth); });
        attempt(row.plcc, [&] { return plcc(predicted, truth); });
      } catch (const Error& e) {
        errors.emplace_back(e.what());
      }
    } else {
      attempt(row.acc, [&] { return accuracy(preds); });
      if (preds.kind == GroundTruthKind::BinaryLabelWithBoxes) attempt(row.map50, [&] { return mapAt50(preds); });
    }
    row.status = errors.empty() ? RowStatus::Ok : RowStatus::Error;
    for (std::size_t i = 0; i < errors.size(); ++i) row.error += (i ? "; " : "") + errors[i];
    table.rows.push_back(std::move(row));
  }
  return table;
}

PredictionLoad readPredictions(std::istream& in) {
  using json = nlohmann::json;
  PredictionLoad load;
  const auto schema = [](const std::string& why) { return Error(ErrorKind::SchemaError, why); };
  const auto box = [&](const json& j) {
    if (!j.is_array() || j.size() != 4 ||
        !std::all_of(j.begin(), j.end(), [](const json& v) { return v.is_number_integer(); }))
      throw schema("boxes must be [x1,y1,x2,y2] integers");
    return checkedBox(j[0].get<std::int64_t>(), j[1].get<std::int64_t>(), j[2].get<std::int64_t>(),
                      j[3].get<std::int64_t>());
  };
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json row = json::parse(line);
      if (!row.is_object()) throw schema("row must be an object");
      const auto rule_it = row.find("rule");
      if (rule_it == row.end() || !rule_it->is_string()) throw schema("missing string 'rule'");
      const auto rule = parseRuleId(rule_it->get<std::string>());
      if (!rule) throw schema("unknown rule '" + rule_it->get<std::string>() + "'");
      const GroundTruthKind kind = groundTruthKind(*rule);

      PredictionEntry entry;
      if (const auto it = row.find("sample_id"); it != row.end() && it->is_string()) entry.sample_id = *it;
      const auto field = [&](const char* key) -> const json& {
        const auto it = row.find(key);
        if (it == row.end()) throw schema(std::string("missing '") + key + "'");
        return *it;
      };
      if (kind == GroundTruthKind::ContinuousScore) {
        const json& p = field("pred_score");
        const json& g = field("gt_score");
        if (!p.is_number() || !g.is_number()) throw schema("pred_score and gt_score must be numbers");
        entry.predicted_score = p.get<double>();
        entry.truth_score = g.get<double>();
      } else {
        const json& p = field("pred_label");
        const json& g = field("gt_label");
        if (!(p.is_boolean() || p.is_null()) || !g.is_boolean())
          throw schema("pred_label must be boolean or null and gt_label boolean");
        if (p.is_boolean()) entry.predicted_label = p.get<bool>();
        entry.truth_label = g.get<bool>();
        if (kind == GroundTruthKind::BinaryLabelWithBoxes) {
          const json& gt = field("gt_boxes");
          if (!gt.is_array()) throw schema("gt_boxes must be an array");
          for (const auto& b : gt) entry.truth_boxes.push_back(box(b));
          const json& pred = field("pred_boxes");
          if (!pred.is_array()) throw schema("pred_boxes must be an array");
          for (const auto& d : pred) {
            Detection det;
            if (d.is_object()) {
              det.box = box(d.contains("box") ? d.at("box") : json());
              if (const auto c = d.find("confidence"); c != d.end() && !c->is_null()) {
                if (!c->is_number() || c->get<double>() < 0.0 || c->get<double>() > 1.0)
                  throw schema("confidence must be a number in [0,1]");
                det.confidence = c->get<double>();
              }
            } else {
              det.box = box(d);
            }
            entry.detections.push_back(det);
          }
        }
      }
      auto& set = load.runs[*rule];
      set.kind = kind;
      set.entries.push_back(std::move(entry));
      ++load.rows;
    } catch (const json::exception& e) {
      load.errors.push_back({number, std::string("invalid JSON: ") + e.what()});
    } catch (const Error& e) {
      load.errors.push_back({number, e.what()});
    }
  }
  return load;
}

std::string renderCsv(const BenchTable& table) {
  const auto cell = [](const std::optional<double>& v) { return v ? detail::fixed(*v, 6) : std::string(); };
  std::string out = "rule,stage,status,acc,map50,srcc,plcc,error\n";
  for (const auto& r : table.rows) {
    out += std::string(toString(r.rule)) + "," + std::string(toString(stageOf(r.rule))) + "," +
           std::string(statusName(r.status)) + "," + cell(r.acc) + "," + cell(r.map50) + "," + cell(r.srcc) + "," +
           cell(r.plcc) + "," + csvField(r.error) + "\n";
  }
  return out;
}

std::string renderText(const BenchTable& table) {
  const auto cell = [](const std::optional<double>& v) { return v ? detail::fixed(*v, 3) : std::string("-"); };
  std::ostringstream out;
  out << std::left << std::setw(24) << "rule" << std::setw(22) << "stage" << std::setw(8) << "status" << std::right
      << std::setw(8) << "acc" << std::setw(8) << "map50" << std::setw(8) << "srcc" << std::setw(8) << "plcc"
      << '\n';
  for (const auto& r : table.rows) {
    out << std::left << std::setw(24) << toString(r.rule) << std::setw(22) << toString(stageOf(r.rule))
        << std::setw(8) << statusName(r.status) << std::right << std::setw(8) << cell(r.acc) << std::setw(8)
        << cell(r.map50) << std::setw(8) << cell(r.srcc) << std::setw(8) << cell(r.plcc);
    if (!r.error.empty()) out << "  " << r.error;
    out << '\n';
  }
  return out.str();
}

std::string renderJsonLines(const BenchTable& table) {
  const auto cell = [](const std::optional<double>& v) { return v ? detail::fixed(*v, 6) : std::string("null"); };
  std::string out;
  for (const auto& r : table.rows) {
    out += "{\"rule\":\"" + std::string(toString(r.rule)) + "\",\"stage\":\"" +
           std::string(toString(stageOf(r.rule))) + "\",\"status\":\"" + std::string(statusName(r.status)) +
           "\",\"acc\":" + cell(r.acc) + ",\"map50\":" + cell(r.map50) + ",\"srcc\":" + cell(r.srcc) +
           ",\"plcc\":" + cell(r.plcc) + ",\"error\":" + detail::quoted(r.error) + "}\n";
  }
  return out;
}

}  // namespace a3
