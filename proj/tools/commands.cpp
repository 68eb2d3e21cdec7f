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

#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "a3/dataset.hpp"
#include "a3/error.hpp"
#include "a3/image.hpp"
#include "a3/metrics.hpp"
#include "a3/ocr.hpp"
#include "a3/qc.hpp"
#include "a3/visual_tools.hpp"

namespace a3::cli {
namespace {

std::string fixed6(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

void reportLineErrors(const std::filesystem::path& path, const std::vector<LineError>& errors, std::ostream& err) {
  for (const auto& e : errors) err << path.string() << ":" << e.line << ": " << e.message << "\n";
}

std::ifstream openInput(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

int exitCodeFor(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::OcrUnavailable:
    case ErrorKind::OcrMalformedReply:
      return kExternalError;
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidArgument:
      return kUsage;
    default:
      return kDataError;
  }
}

// Runs `fn` over `count` indices on up to `jobs` threads.
template <typename Fn>
void parallelFor(std::size_t count, int jobs, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 256));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

std::string scoreTextRow(const RewardBreakdown& b) {
  std::ostringstream row;
  row << std::left << std::setw(16) << b.sample_id << std::setw(24) << toString(b.rule) << std::right
      << std::setw(9) << std::fixed << std::setprecision(4) << b.total;
  for (const auto& [signal, value] : b.per_signal) row << "  " << toString(signal) << "=" << std::setprecision(4) << value;
  if (!b.notes.empty()) {
    row << "  [";
    for (std::size_t i = 0; i < b.notes.size(); ++i) row << (i ? "," : "") << b.notes[i];
    row << "]";
  }
  return row.str();
}

}  // namespace

RunConfig loadRunConfig(const std::filesystem::path& path) {
  auto in = openInput(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidConfig, path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::InvalidConfig, path.string() + ": config must be a JSON object");
  RunConfig config;
  for (const auto& [key, value] : j.items()) {
    const auto bad = [&](const char* what) {
      throw Error(ErrorKind::InvalidConfig, path.string() + ": '" + key + "' " + what);
    };
    if (key == "sigma") {
      if (!value.is_number()) bad("must be a number");
      config.sigma = value.get<double>();
    } else if (key == "ngram_n") {
      if (!value.is_number_integer()) bad("must be an integer");
      config.ngram_n = value.get<int>();
    } else if (key == "jobs") {
      if (!value.is_number_integer() || value.get<int>() < 1) bad("must be a positive integer");
      config.jobs = value.get<int>();
    } else if (key == "format") {
      if (!value.is_string()) bad("must be a string");
      config.format = value.get<std::string>();
    } else if (key == "weights") {
      if (!value.is_object()) bad("must be an object");
      for (const auto& [name, alpha] : value.items()) {
        const auto signal = parseRewardSignal(name);
        if (!signal) throw Error(ErrorKind::InvalidConfig, path.string() + ": unknown reward signal '" + name + "'");
        if (!alpha.is_number()) bad("values must be numbers");
        config.weights.emplace_back(*signal, alpha.get<double>());
      }
    } else {
      bad("is not a recognized setting");
    }
  }
  return config;
}

std::pair<RewardSignal, double> parseWeightOverride(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw Error(ErrorKind::InvalidConfig, "weight override must be signal=value: " + spec);
  const auto signal = parseRewardSignal(spec.substr(0, eq));
  if (!signal) throw Error(ErrorKind::InvalidConfig, "unknown reward signal '" + spec.substr(0, eq) + "'");
  const std::string number = spec.substr(eq + 1);
  std::size_t used = 0;
  double alpha = 0.0;
  try {
    alpha = std::stod(number, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != number.size())
    throw Error(ErrorKind::InvalidConfig, "weight override value is not a number: " + spec);
  return {*signal, alpha};
}

// Config-file values first, then explicit flags on top of the defaults.
ScoringConfig resolveScoring(const RunConfig& file, const std::optional<double>& sigma,
                             const std::optional<int>& ngram_n, const std::vector<std::string>& weight_flags) {
  ScoringConfig scoring;
  if (file.sigma) scoring.gaussian.sigma = *file.sigma;
  if (file.ngram_n) scoring.non_repeat.ngram_n = *file.ngram_n;
  for (const auto& [signal, alpha] : file.weights) scoring.weights.set(signal, alpha);
  if (sigma) scoring.gaussian.sigma = *sigma;
  if (ngram_n) scoring.non_repeat.ngram_n = *ngram_n;
  for (const auto& flag : weight_flags) {
    const auto [signal, alpha] = parseWeightOverride(flag);
    scoring.weights.set(signal, alpha);
  }
  scoring.validate();
  return scoring;
}

int cmdScore(const ScoreOptions& options, std::ostream& out, std::ostream& err) {
  try {
    options.scoring.validate();
    if (options.format != "jsonl" && options.format != "text")
      throw Error(ErrorKind::InvalidConfig, "score --format must be jsonl or text");

    auto samples_in = openInput(options.samples);
    const SampleLoad samples = readSamples(samples_in);
    reportLineErrors(options.samples, samples.errors, err);
    auto transcripts_in = openInput(options.transcripts);
    const TranscriptLoad transcripts = readTranscripts(transcripts_in);
    reportLineErrors(options.transcripts, transcripts.errors, err);
    bool data_error = !samples.errors.empty() || !transcripts.errors.empty();

    const auto& records = samples.records;
    std::vector<std::optional<RewardBreakdown>> results(records.size());
    std::vector<std::string> failures(records.size());
    parallelFor(records.size(), options.jobs, [&](std::size_t i) {
      const auto it = transcripts.by_sample.find(records[i].sample_id);
      std::optional<std::string_view> transcript;
      if (it != transcripts.by_sample.end()) transcript = it->second;
      try {
        results[i] = scoreSample(records[i], transcript, options.scoring);
      } catch (const Error& e) {
        failures[i] = e.what();
      }
    });

    std::vector<const RewardBreakdown*> ordered;
    std::size_t missing = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!results[i]) {
        err << "error: sample " << records[i].sample_id << ": " << failures[i] << "\n";
        data_error = true;
        continue;
      }
      if (!transcripts.by_sample.count(records[i].sample_id)) {
        err << "warning: no transcript for sample " << records[i].sample_id << "; scored as format failure\n";
        ++missing;
      }
      ordered.push_back(&*results[i]);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const RewardBreakdown* a, const RewardBreakdown* b) { return a->sample_id < b->sample_id; });

    std::ofstream file;
    if (options.out) {
      file.open(*options.out);
      if (!file) throw Error(ErrorKind::Io, "cannot write " + options.out->string());
    }
    std::ostream& sink = options.out ? static_cast<std::ostream&>(file) : out;
    for (const auto* b : ordered) sink << (options.format == "jsonl" ? toJsonLine(*b) : scoreTextRow(*b)) << "\n";
    if (!sink) throw Error(ErrorKind::Io, "failed writing breakdowns");

    std::array<double, kSignalCount> sums{};
    std::array<std::size_t, kSignalCount> counts{};
    double total_sum = 0.0;
    for (const auto* b : ordered) {
      total_sum += b->total;
      for (const auto& [signal, value] : b->per_signal) {
        sums[index(signal)] += value;
        ++counts[index(signal)];
      }
    }
    std::string summary = "{\"samples\":" + std::to_string(ordered.size()) +
                          ",\"mean_total\":" + (ordered.empty() ? "null" : fixed6(total_sum / static_cast<double>(ordered.size()))) +
                          ",\"per_signal_mean\":{";
    bool first = true;
    for (auto s : kAllSignals) {
      if (counts[index(s)] == 0) continue;
      summary += (first ? "\"" : ",\"") + std::string(toString(s)) +
                 "\":" + fixed6(sums[index(s)] / static_cast<double>(counts[index(s)]));
      first = false;
    }
    summary += "},\"missing_transcripts\":" + std::to_string(missing) +
               ",\"sigma\":" + fixed6(options.scoring.gaussian.sigma) +
               ",\"ngram_n\":" + std::to_string(options.scoring.non_repeat.ngram_n) +
               ",\"grpo_group_size\":" + std::to_string(kGrpoGroupSize) + "}";
    if (options.summary) {
      std::ofstream summary_file(*options.summary);
      if (!summary_file) throw Error(ErrorKind::Io, "cannot write " + options.summary->string());
      summary_file << summary << "\n";
    } else {
      err << summary << "\n";
    }
    return data_error ? kDataError : kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  }
}

int cmdBench(const BenchOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.format != "text" && options.format != "csv" && options.format != "jsonl")
      throw Error(ErrorKind::InvalidConfig, "bench --format must be text, csv or jsonl");
    auto in = openInput(options.predictions);
    const PredictionLoad load = readPredictions(in);
    reportLineErrors(options.predictions, load.errors, err);
    if (load.rows == 0) throw Error(ErrorKind::EmptySet, "no valid prediction rows in " + options.predictions.string());
    const BenchTable table = benchReport(load.runs);
    if (options.format == "csv") {
      out << renderCsv(table);
    } else if (options.format == "jsonl") {
      out << renderJsonLines(table);
    } else {
      out << renderText(table);
    }
    return load.errors.empty() ? kOk : kDataError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  }
}

int cmdQc(const QcOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.format != "jsonl" && options.format != "text")
      throw Error(ErrorKind::InvalidConfig, "qc --format must be jsonl or text");
    auto in = openInput(options.batch);
    const QcLoad load = readQcBatches(in);
    reportLineErrors(options.batch, load.errors, err);
    if (load.batches.empty()) throw Error(ErrorKind::EmptyBatch, "no annotations in " + options.batch.string());
    for (const auto& batch : load.batches) {
      const QcBatch inspected = options.sample_fraction < 1.0
                                    ? sampleForInspection(batch, options.sample_fraction, options.seed)
                                    : batch;
      const QcBatchReport report = qcGate(inspected);
      if (options.format == "jsonl") {
        out << toJsonLine(report) << "\n";
      } else {
        out << report.batch_id << ": " << (report.pass ? "PASS" : "FAIL");
        for (const auto& reason : report.reasons) out << "; " << reason;
        out << "\n";
      }
    }
    return load.errors.empty() ? kOk : kDataError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  }
}

int cmdSplit(const SplitOptions& options, std::ostream& out, std::ostream& err) {
  try {
    auto in = openInput(options.samples);
    const SampleLoad load = readSamples(in);
    reportLineErrors(options.samples, load.errors, err);
    if (load.records.empty()) throw Error(ErrorKind::EmptySet, "no valid samples in " + options.samples.string());
    const DatasetSplit split = splitDataset(load.records, options.seed);

    std::vector<std::pair<const SampleRecord*, const char*>> manifest;
    for (const auto& r : split.train) manifest.emplace_back(&r, "train");
    for (const auto& r : split.val) manifest.emplace_back(&r, "val");
    for (const auto& r : split.test) manifest.emplace_back(&r, "test");
    std::sort(manifest.begin(), manifest.end(),
              [](const auto& a, const auto& b) { return a.first->sample_id < b.first->sample_id; });
    for (const auto& [record, bucket] : manifest) {
      nlohmann::ordered_json row;
      row["sample_id"] = record->sample_id;
      row["image_ref"] = record->image_ref;
      row["split"] = bucket;
      out << row.dump() << "\n";
    }
    if (options.out_dir) {
      std::filesystem::create_directories(*options.out_dir);
      writeSamples(split.train, *options.out_dir / "train.jsonl");
      writeSamples(split.val, *options.out_dir / "val.jsonl");
      writeSamples(split.test, *options.out_dir / "test.jsonl");
    }
    err << "split: train=" << split.train.size() << " val=" << split.val.size() << " test=" << split.test.size()
        << "\n";
    return load.errors.empty() ? kOk : kDataError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

int cmdTool(const ToolOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (options.name != "hue" && options.name != "colorfulness" && options.name != "ocr")
      throw Error(ErrorKind::InvalidArgument, "unknown tool '" + options.name + "'");
    std::unique_ptr<OcrClient> client;
    if (options.name == "ocr") {
      client = options.offline ? std::make_unique<NullOcrClient>() : ocrClientFromEnvironment();
      if (!client)
        throw Error(ErrorKind::OcrUnavailable,
                    std::string(kOcrEndpointEnv) + " is not set (use --offline for the null client)");
    }
    const ImageBuffer image = loadImage(options.image);
    if (options.name == "hue") {
      out << renderToolOutput(hueAnalysis(image)) << "\n";
    } else if (options.name == "colorfulness") {
      out << renderToolOutput(colorfulness(image)) << "\n";
    } else {
      out << renderToolOutput(runOcr(image, *client)) << "\n";
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exitCodeFor(e);
  }
}

}  // namespace a3::cli
