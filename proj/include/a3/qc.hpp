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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "a3/dataset.hpp"
#include "a3/geometry.hpp"

namespace a3 {

// Acceptance bars for annotation batches; every comparison is strict.
struct QcThresholds {
  double objective_accuracy = 0.93;
  double mean_iou = 0.92;
  double srcc = 0.85;
  double cot_acceptance_rate = 0.85;
};

inline constexpr std::size_t kCotPanelSize = 5;
inline constexpr std::size_t kCotMajority = 3;

/// One chain-of-thought reviewed by the expert panel.
struct CotAcceptance {
  std::vector<bool> votes;
  bool accepted = false;

  /// Throws InvalidArgument unless exactly five votes are given.
  static CotAcceptance fromVotes(std::vector<bool> votes);
};

struct CotRate {
  double rate = 0.0;
  bool meets_bar = false;
};

/// Accepted fraction and whether it exceeds the bar. Throws EmptyBatch.
CotRate cotAcceptanceRate(std::span<const CotAcceptance> decisions, double bar = QcThresholds{}.cot_acceptance_rate);

struct BinaryAnnotation {
  bool annotation = false;
  bool gold = false;
};

struct DetectionAnnotation {
  std::vector<BoundingBox> annotation;
  std::vector<BoundingBox> gold;
};

struct RatingAnnotation {
  double annotation = 0.0;
  double gold = 0.0;
};

struct QcBatch {
  std::string batch_id;
  std::vector<BinaryAnnotation> binary;
  std::vector<DetectionAnnotation> detection;
  std::vector<RatingAnnotation> rating;
  std::vector<CotAcceptance> cot;

  bool empty() const noexcept { return binary.empty() && detection.empty() && rating.empty() && cot.empty(); }
};

/// IoU pooled over Hungarian-matched pairs, with a zero for every unmatched
/// gold box and every unmatched annotator box. 1.0 if no boxes exist at all.
double detectionMeanIou(std::span<const DetectionAnnotation> items);

struct QcBatchReport {
  std::string batch_id;
  std::optional<double> objective_accuracy;
  std::optional<double> mean_iou;
  std::optional<double> srcc;
  std::optional<double> cot_acceptance_rate;
  bool pass = false;
  std::vector<std::string> reasons;  // one per failed check
};

/// Evaluates every check that applies to the kinds present. Throws EmptyBatch.
QcBatchReport qcGate(const QcBatch& batch, const QcThresholds& thresholds = {});

/// Deterministic inspection sample: ceil(fraction * n) items of each kind.
QcBatch sampleForInspection(const QcBatch& batch, double fraction, std::uint64_t seed);

struct QcLoad {
  std::vector<QcBatch> batches;  // in order of first appearance
  std::vector<LineError> errors;
};

/// Newline-delimited items: {"batch_id", "kind": binary|detection|rating|cot, ...}.
QcLoad readQcBatches(std::istream& in);

std::string toJsonLine(const QcBatchReport& report);

}  // namespace a3
