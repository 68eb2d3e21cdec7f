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

#include "a3/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace a3 {

std::vector<std::size_t> solveAssignment(const CostMatrix& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // 1-based potentials; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> row_of_col(n + 1, 0), way(n + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of_col[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[row_of_col[j] - 1] = j - 1;
  return col_of_row;
}

namespace {

double assignmentCost(const CostMatrix& cost, const std::vector<std::size_t>& col_of_row) {
  double total = 0.0;
  for (std::size_t r = 0; r < col_of_row.size(); ++r) total += cost(r, col_of_row[r]);
  return total;
}

// Optimal cost of the subproblem restricted to the given rows and columns.
double subproblemCost(const CostMatrix& cost, const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
  CostMatrix sub(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) sub(r, c) = cost(rows[r], cols[c]);
  const auto assignment = solveAssignment(sub);
  return assignmentCost(sub, assignment);
}

}  // namespace

std::vector<std::size_t> solveAssignmentLexicographic(const CostMatrix& cost, std::size_t significant_rows,
                                                      std::size_t first_dummy_col, double tolerance) {
  const std::size_t n = cost.size();
  auto best = solveAssignment(cost);
  if (n <= 1) return best;
  const double optimum = assignmentCost(cost, best);
  significant_rows = std::min(significant_rows, n);

  std::vector<std::size_t> free_rows(n), free_cols(n);
  std::iota(free_rows.begin(), free_rows.end(), 0);
  std::iota(free_cols.begin(), free_cols.end(), 0);
  std::vector<std::size_t> fixed(n, n);
  double fixed_cost = 0.0;

  // Column preference for a row: real columns ascending, then the first free
  // dummy column. The incumbent optimum's choice bounds the scan.
  for (std::size_t r = 0; r < significant_rows; ++r) {
    free_rows.erase(std::find(free_rows.begin(), free_rows.end(), r));
    std::vector<std::size_t> candidates;
    bool dummy_added = false;
    for (std::size_t c : free_cols) {
      if (c < first_dummy_col) {
        candidates.push_back(c);
      } else if (!dummy_added) {
        candidates.push_back(c);
        dummy_added = true;
      }
    }
    std::size_t chosen = best[r];
    for (std::size_t c : candidates) {
      if (c == best[r]) break;
      if (best[r] >= first_dummy_col && c >= first_dummy_col) break;
      std::vector<std::size_t> rest_cols;
      for (std::size_t other : free_cols)
        if (other != c) rest_cols.push_back(other);
      const double total = fixed_cost + cost(r, c) + subproblemCost(cost, free_rows, rest_cols);
      if (total <= optimum + tolerance) {
        chosen = c;
        break;
      }
    }
    if (chosen >= first_dummy_col && best[r] >= first_dummy_col) chosen = best[r];
    fixed[r] = chosen;
    fixed_cost += cost(r, chosen);
    free_cols.erase(std::find(free_cols.begin(), free_cols.end(), chosen));

    // Re-solve the remainder so later rows start from an optimal incumbent
    // consistent with the rows fixed so far.
    if (!free_rows.empty()) {
      CostMatrix sub(free_rows.size());
      for (std::size_t i = 0; i < free_rows.size(); ++i)
        for (std::size_t j = 0; j < free_cols.size(); ++j) sub(i, j) = cost(free_rows[i], free_cols[j]);
      const auto sub_assignment = solveAssignment(sub);
      for (std::size_t i = 0; i < free_rows.size(); ++i) best[free_rows[i]] = free_cols[sub_assignment[i]];
    }
    best[r] = chosen;
  }
  return best;
}

Matching hungarianMatch(std::span<const BoundingBox> ground_truth, std::span<const BoundingBox> predicted) {
  const std::size_t rows = ground_truth.size();
  const std::size_t cols = predicted.size();
  const std::size_t n = std::max(rows, cols);
  Matching matching;
  if (rows == 0 || cols == 0) return matching;

  CostMatrix cost(n, 1.0);
  for (std::size_t g = 0; g < rows; ++g)
    for (std::size_t p = 0; p < cols; ++p) cost(g, p) = 1.0 - iou(ground_truth[g], predicted[p]);

  const auto assignment = solveAssignmentLexicographic(cost, rows, cols);
  for (std::size_t g = 0; g < rows; ++g) {
    const std::size_t p = assignment[g];
    if (p < cols && intersectionArea(ground_truth[g], predicted[p]) > 0) matching.pairs.emplace_back(g, p);
  }
  return matching;
}

double matchingCost(std::span<const BoundingBox> ground_truth, std::span<const BoundingBox> predicted,
                    const Matching& matching) {
  const std::size_t n = std::max(ground_truth.size(), predicted.size());
  double total = 0.0;
  for (const auto& [g, p] : matching.pairs) total += 1.0 - iou(ground_truth[g], predicted[p]);
  total += static_cast<double>(n - matching.pairs.size());
  return total;
}

}  // namespace a3
