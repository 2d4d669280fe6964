// Copyright 2026 The Driftfilt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "driftfilt/common.h"

#include <charconv>
#include <cstdio>

namespace driftfilt {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kNotConverged: return "not_converged";
    case ErrorCode::kSignalTooShort: return "signal_too_short";
    case ErrorCode::kNonFinite: return "non_finite";
    case ErrorCode::kUnknownBasis: return "unknown_basis";
    case ErrorCode::kLengthIndivisible: return "length_indivisible";
    case ErrorCode::kSegmentTooShort: return "segment_too_short";
    case ErrorCode::kShapeMismatch: return "shape_mismatch";
    case ErrorCode::kRegionTooShort: return "region_too_short";
    case ErrorCode::kMismatchedConfiguration: return "mismatched_configuration";
    case ErrorCode::kEmptyExperiment: return "empty_experiment";
    case ErrorCode::kVacuousProblem: return "vacuous_problem";
    case ErrorCode::kMalformedRow: return "malformed_row";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

std::string FormatDouble(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::vector<std::string> SplitCsvLine(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma - start);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    fields.emplace_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool ParseDouble(std::string_view field, double& value) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace driftfilt
