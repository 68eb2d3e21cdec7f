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
#include <span>
#include <utility>
#include <vector>

#include "a3/geometry.hpp"

namespace a3 {

/// Dense row-major square cost matrix.
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Minimum-cost perfect assignment (Hungarian method with potentials).
/// Returns the column assigned to each row.
std::vector<std::size_t> solveAssignment(const CostMatrix& cost);

/// Like solveAssignment, but among all optimal assignments (costs equal
/// within `tolerance`) returns the lexicographically smallest column vector
/// over the first `significant_rows` rows. Columns at index >= `first_dummy_col`
/// are interchangeable padding and compare after every real column.
std::vector<std::size_t> solveAssignmentLexicographic(const CostMatrix& cost, std::size_t significant_rows,
                                                      std::size_t first_dummy_col, double tolerance = 1e-10);

/// One-to-one (gt_index, pred_index) pairing, sorted by gt_index.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  friend bool operator==(const Matching&, const Matching&) = default;
};

/// Optimal one-to-one box matching minimizing the sum of (1 - IoU), padded to
/// square with unit cost. Pairs with zero overlap are dropped from the result.
Matching hungarianMatch(std::span<const BoundingBox> ground_truth, std::span<const BoundingBox> predicted);

/// Cost of a matching on the padded problem: sum of (1 - IoU) over pairs plus
/// one per unmatched slot of the max(N, K) square.
double matchingCost(std::span<const BoundingBox> ground_truth, std::span<const BoundingBox> predicted,
                    const Matching& matching);

}  // namespace a3
