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

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "a3/dataset.hpp"
#include "a3/geometry.hpp"
#include "a3/taxonomy.hpp"

namespace a3 {

inline constexpr double kApIouThreshold = 0.5;

struct Detection {
  BoundingBox box;
  std::optional<double> confidence;  // missing ranks as 1.0
};

/// One benchmark sample. Which fields are required depends on the set's kind.
struct PredictionEntry {
  std::string sample_id;
  std::optional<bool> predicted_label;  // missing counts as wrong
  std::optional<bool> truth_label;
  std::vector<Detection> detections;
  std::vector<BoundingBox> truth_boxes;
  std::optional<double> predicted_score;
  std::optional<double> truth_score;
};

struct PredictionSet {
  GroundTruthKind kind = GroundTruthKind::BinaryLabel;
  std::vector<PredictionEntry> entries;

  /// Throws KindMismatch if an entry lacks a field its kind requires.
  void validate() const;
};

/// Fraction of exact label matches. Label kinds only; throws EmptySet.
double accuracy(const PredictionSet& preds);

/// Single-class AP at IoU > 0.5 over detections pooled across samples, ranked
/// by confidence (stable on ties), greedily matched to the best still
/// unmatched truth box, integrated with all-point interpolation.
double mapAt50(const PredictionSet& preds);

/// Average (fractional) 1-based ranks.
std::vector<double> fractionalRanks(std::span<const double> values);

/// Pearson correlation of raw values. Throws LengthMismatch,
/// InsufficientSamples (n < 3) or DegenerateVector (constant input).
double plcc(std::span<const double> x, std::span<const double> y);

/// Pearson correlation of fractional ranks; same errors as plcc.
double srcc(std::span<const double> x, std::span<const double> y);

enum class RowStatus { Ok, Absent, Error };

struct BenchRow {
  RuleId rule = RuleId::ImageFidelity;
  RowStatus status = RowStatus::Absent;
  std::optional<double> acc;
  std::optional<double> map50;
  std::optional<double> srcc;
  std::optional<double> plcc;
  std::string error;
};

/// Rows for all ten rules in benchmark column order.
struct BenchTable {
  std::vector<BenchRow> rows;
};

/// Acc for binary rules, Acc + mAP@0.5 for promotional iconography, SRCC +
/// PLCC for the attribute rules. Failures are recorded per row.
BenchTable benchReport(const std::map<RuleId, PredictionSet>& runs);

struct PredictionLoad {
  std::map<RuleId, PredictionSet> runs;
  std::vector<LineError> errors;
  std::size_t rows = 0;  // rows accepted
};

/// Newline-delimited prediction rows keyed by "rule". Binary rules carry
/// pred_label / gt_label (pred_label may be null); promotional_iconography adds
/// gt_boxes and pred_boxes, each detection either [x1,y1,x2,y2] or
/// {"box": [...], "confidence": c}; attribute rules carry pred_score / gt_score.
PredictionLoad readPredictions(std::istream& in);

std::string renderCsv(const BenchTable& table);
std::string renderText(const BenchTable& table);
std::string renderJsonLines(const BenchTable& table);

}  // namespace a3
