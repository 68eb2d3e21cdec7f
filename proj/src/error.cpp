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

#include "a3/error.hpp"

namespace a3 {

std::string_view errorKindName(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::MalformedBox: return "MalformedBox";
    case ErrorKind::RuleNotToolAssisted: return "RuleNotToolAssisted";
    case ErrorKind::ScoreOutOfRange: return "ScoreOutOfRange";
    case ErrorKind::ZeroWeightSum: return "ZeroWeightSum";
    case ErrorKind::GroundTruthMismatch: return "GroundTruthMismatch";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::EmptyBatch: return "EmptyBatch";
    case ErrorKind::DegenerateVector: return "DegenerateVector";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::NoGroundTruth: return "NoGroundTruth";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::Io: return "Io";
    case ErrorKind::ImageLoad: return "ImageLoad";
    case ErrorKind::OcrUnavailable: return "OcrUnavailable";
    case ErrorKind::OcrMalformedReply: return "OcrMalformedReply";
  }
  return "Unknown";
}

}  // namespace a3
