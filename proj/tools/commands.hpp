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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "a3/reward_aggregate.hpp"

namespace a3::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kExternalError = 3 };

/// Recorded with every score summary; the engine itself never runs GRPO.
inline constexpr int kGrpoGroupSize = 4;

/// Values a config file may set. Unset fields fall through to defaults;
/// command-line flags override whatever is set here.
struct RunConfig {
  std::optional<double> sigma;
  std::optional<int> ngram_n;
  std::optional<int> jobs;
  std::optional<std::string> format;
  std::vector<std::pair<RewardSignal, double>> weights;
};

/// JSON object with optional keys: weights {signal: alpha}, sigma, ngram_n,
/// jobs, format. Throws InvalidConfig or Io.
RunConfig loadRunConfig(const std::filesystem::path& path);

/// Parses "signal=value". Throws InvalidConfig.
std::pair<RewardSignal, double> parseWeightOverride(const std::string& spec);

/// File values first, then command-line overrides. Validates the result.
ScoringConfig resolveScoring(const RunConfig& file, const std::optional<double>& sigma,
                             const std::optional<int>& ngram_n, const std::vector<std::string>& weight_flags);

struct ScoreOptions {
  std::filesystem::path samples;
  std::filesystem::path transcripts;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> summary;
  std::string format = "jsonl";  // jsonl | text
  int jobs = 1;
  ScoringConfig scoring;
};

struct BenchOptions {
  std::filesystem::path predictions;
  std::string format = "text";  // text | csv | jsonl
};

struct QcOptions {
  std::filesystem::path batch;
  double sample_fraction = 1.0;
  std::uint64_t seed = 0;
  std::string format = "jsonl";  // jsonl | text
};

struct SplitOptions {
  std::filesystem::path samples;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out_dir;
};

struct ToolOptions {
  std::string name;  // hue | colorfulness | ocr
  std::filesystem::path image;
  bool offline = false;  // ocr: use the null client
};

int cmdScore(const ScoreOptions& options, std::ostream& out, std::ostream& err);
int cmdBench(const BenchOptions& options, std::ostream& out, std::ostream& err);
int cmdQc(const QcOptions& options, std::ostream& out, std::ostream& err);
int cmdSplit(const SplitOptions& options, std::ostream& out, std::ostream& err);
int cmdTool(const ToolOptions& options, std::ostream& out, std::ostream& err);

}  // namespace a3::cli
