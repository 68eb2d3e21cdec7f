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

#include <stdexcept>
#include <string>
#include <string_view>

namespace a3 {

// One kind per failure the engine can report. Kept flat so that foreign
// bindings can map each kind to a host exception type one-to-one.
enum class ErrorKind {
  InvalidArgument,
  InvalidConfig,
  MalformedBox,
  RuleNotToolAssisted,
  ScoreOutOfRange,
  ZeroWeightSum,
  GroundTruthMismatch,
  EmptySet,
  EmptyBatch,
  DegenerateVector,
  LengthMismatch,
  InsufficientSamples,
  KindMismatch,
  NoGroundTruth,
  SchemaError,
  Io,
  ImageLoad,
  OcrUnavailable,
  OcrMalformedReply,
};

std::string_view errorKindName(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(errorKindName(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace a3
