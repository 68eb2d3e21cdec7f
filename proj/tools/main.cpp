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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "a3/error.hpp"
#include "commands.hpp"

namespace {

constexpr const char* kPrecedence =
    "Settings resolve as: command-line flag, then --config file, then built-in default.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"a3: reward computation and benchmark scoring for advertising aesthetics"};
  app.footer(kPrecedence);
  app.require_subcommand(1);
  app.set_version_flag("--version", "a3 1.0.0");

  std::optional<std::string> config_path;
  std::optional<double> sigma;
  std::optional<int> ngram_n;
  std::optional<int> jobs;
  std::optional<std::string> format;
  std::vector<std::string> weight_flags;

  a3::cli::ScoreOptions score;
  std::string samples_path, transcripts_path;
  std::optional<std::string> out_path, summary_path;
  auto* score_cmd = app.add_subcommand("score", "Score transcripts against their samples");
  score_cmd->footer(kPrecedence);
  score_cmd->add_option("samples", samples_path, "Samples JSONL")->required();
  score_cmd->add_option("transcripts", transcripts_path, "Transcripts JSONL ({\"sample_id\",\"transcript\"})")
      ->required();
  score_cmd->add_option("--config", config_path, "JSON config with sigma, ngram_n, jobs, format, weights");
  score_cmd->add_option("--sigma", sigma, "Gaussian width of the score reward (default 1.237)");
  score_cmd->add_option("--ngram-n", ngram_n, "n-gram length for the repetition penalty (default 3)");
  score_cmd->add_option("--weight", weight_flags, "Reward weight override signal=value, repeatable")
      ->allow_extra_args(false);
  score_cmd->add_option("--jobs", jobs, "Worker threads (default 1)");
  score_cmd->add_option("--format", format, "jsonl or text (default jsonl)");
  score_cmd->add_option("--out", out_path, "Write breakdowns here instead of stdout");
  score_cmd->add_option("--summary", summary_path, "Write the run summary here instead of stderr");

  a3::cli::BenchOptions bench;
  std::string predictions_path;
  auto* bench_cmd = app.add_subcommand("bench", "Compute the benchmark table from prediction rows");
  bench_cmd->add_option("predictions", predictions_path, "Predictions JSONL")->required();
  bench_cmd->add_option("--format", bench.format, "text, csv or jsonl")
      ->check(CLI::IsMember({"text", "csv", "jsonl"}));

  a3::cli::QcOptions qc;
  std::string batch_path;
  auto* qc_cmd = app.add_subcommand("qc", "Gate annotation batches against the quality thresholds");
  qc_cmd->add_option("batch", batch_path, "Annotation JSONL")->required();
  qc_cmd->add_option("--sample-fraction", qc.sample_fraction, "Fraction of each kind to inspect (default 1)")
      ->check(CLI::Range(0.0, 1.0));
  qc_cmd->add_option("--seed", qc.seed, "Seed for inspection sampling");
  qc_cmd->add_option("--format", qc.format, "jsonl or text")->check(CLI::IsMember({"jsonl", "text"}));

  a3::cli::SplitOptions split;
  std::string split_samples;
  std::optional<std::string> out_dir;
  auto* split_cmd = app.add_subcommand("split", "Split samples 8:1:1 keeping each image in one split");
  split_cmd->add_option("samples", split_samples, "Samples JSONL")->required();
  split_cmd->add_option("--seed", split.seed, "Shuffle seed");
  split_cmd->add_option("--out-dir", out_dir, "Also write train/val/test JSONL here");

  a3::cli::ToolOptions tool;
  std::string image_path;
  auto* tool_cmd = app.add_subcommand("tool", "Run a visual tool on an image");
  tool_cmd->add_option("name", tool.name, "hue, colorfulness or ocr")
      ->required()
      ->check(CLI::IsMember({"hue", "colorfulness", "ocr"}));
  tool_cmd->add_option("image", image_path, "Image file")->required();
  tool_cmd->add_flag("--offline", tool.offline, "ocr: use the null client instead of A3_OCR_ENDPOINT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : a3::cli::kUsage;
  }

  try {
    if (*score_cmd) {
      a3::cli::RunConfig file;
      if (config_path) file = a3::cli::loadRunConfig(*config_path);
      score.samples = samples_path;
      score.transcripts = transcripts_path;
      if (out_path) score.out = *out_path;
      if (summary_path) score.summary = *summary_path;
      score.format = format.value_or(file.format.value_or("jsonl"));
      score.jobs = jobs.value_or(file.jobs.value_or(1));
      if (score.jobs < 1) throw a3::Error(a3::ErrorKind::InvalidConfig, "--jobs must be at least 1");
      score.scoring = a3::cli::resolveScoring(file, sigma, ngram_n, weight_flags);
      return a3::cli::cmdScore(score, std::cout, std::cerr);
    }
    if (*bench_cmd) {
      bench.predictions = predictions_path;
      return a3::cli::cmdBench(bench, std::cout, std::cerr);
    }
    if (*qc_cmd) {
      qc.batch = batch_path;
      return a3::cli::cmdQc(qc, std::cout, std::cerr);
    }
    if (*split_cmd) {
      split.samples = split_samples;
      if (out_dir) split.out_dir = *out_dir;
      return a3::cli::cmdSplit(split, std::cout, std::cerr);
    }
    if (*tool_cmd) {
      tool.image = image_path;
      return a3::cli::cmdTool(tool, std::cout, std::cerr);
    }
  } catch (const a3::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return a3::cli::kUsage;
  }
  return a3::cli::kUsage;
}
