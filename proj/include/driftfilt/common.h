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

#ifndef DRIFTFILT_COMMON_H_
#define DRIFTFILT_COMMON_H_

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace driftfilt {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Failure categories surfaced by the library. The CLI prints the snake_case
// name returned by ErrorCodeName() in its machine-readable error line.
enum class ErrorCode {
  kInvalidArgument,
  kOutOfRange,
  kNotConverged,
  kSignalTooShort,
  kNonFinite,
  kUnknownBasis,
  kLengthIndivisible,
  kSegmentTooShort,
  kShapeMismatch,
  kRegionTooShort,
  kMismatchedConfiguration,
  kEmptyExperiment,
  kVacuousProblem,
  kMalformedRow,
  kValidation,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Formats with 17 significant digits, enough for a bit-exact round trip.
std::string FormatDouble(double value);

// Splits one CSV line on commas. No quoting; fields are trimmed of spaces
// and a trailing carriage return.
std::vector<std::string> SplitCsvLine(std::string_view line);

// Parses a complete decimal field. Returns false on trailing garbage or an
// empty field; "nan" and "inf" parse and must be checked by the caller.
bool ParseDouble(std::string_view field, double& value);

}  // namespace driftfilt

#endif  // DRIFTFILT_COMMON_H_
