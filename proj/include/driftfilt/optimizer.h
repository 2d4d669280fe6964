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

#ifndef DRIFTFILT_OPTIMIZER_H_
#define DRIFTFILT_OPTIMIZER_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "driftfilt/iir_design.h"
#include "driftfilt/nelder_mead.h"
#include "driftfilt/pipeline.h"

namespace driftfilt {

// Value assigned to out-of-bounds vectors and failed designs.
inline constexpr double kPenalty = 1e12;

struct ParamBounds {
  double cutoff_lo_hz = 0.05;
  double cutoff_hi_hz = 4.5;
  double rp_lo_db = 0.01;
  double rp_hi_db = 3.0;
  double rs_lo_db = 20.0;
  double rs_hi_db = 120.0;
  int order_lo = 1;
  int order_hi = 10;
};

struct ParamVector {
  FilterFamily family = FilterFamily::kButterworth;
  double cutoff_hz = 1.0;
  int order = 7;
  std::optional<double> rp_db;
  std::optional<double> rs_db;

  // wc = 1 Hz, N = 7, Rp = 0.5 dB, Rs = 80 dB, keeping only the fields the
  // family uses.
  static ParamVector InitialGuess(FilterFamily family);

  bool WithinBounds(const ParamBounds& bounds) const;
  FilterSpec ToSpec(double sample_rate_hz) const;

  friend bool operator==(const ParamVector&, const ParamVector&) = default;
};

// J for the filter described by `params`, or kPenalty when the vector is out
// of bounds or the design fails. Data errors (short regions, bad records)
// still throw.
double EvaluateObjective(const ParamVector& params, const ObjectiveProblem& problem,
                         const ParamBounds& bounds = {});

enum class OrderMode {
  kDiscreteSweep,          // exhaustive N sweep, continuous simplex per N
  kContinuousRelaxation,   // N rounded inside one simplex
};

struct OptimizerOptions {
  NelderMeadOptions nelder_mead;  // initial_step is derived from the bounds
  ParamBounds bounds;
  OrderMode order_mode = OrderMode::kDiscreteSweep;
  // Elliptic only: hold Rs at frozen_rs_db instead of optimizing it.
  bool freeze_elliptic_rs = false;
  double frozen_rs_db = 80.0;
};

struct TraceEntry {
  ParamVector params;
  double j = 0.0;
};

struct OrderOutcome {
  int order = 0;
  ParamVector best;
  double j = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct OptimizationResult {
  ParamVector best;
  double j_min = 0.0;
  double j_initial_guess = 0.0;
  int evaluations = 0;
  std::vector<TraceEntry> trace;
  std::vector<OrderOutcome> per_order;  // one entry per simplex run
  Index segment_len = 0;
  std::string basis_name;
  int level = 0;
  bool converged = false;  // every simplex run met its tolerances
};

// Throws Error(kVacuousProblem) when fewer than two experiments remain
// after grouping, Error(kValidation) when recordings disagree on the
// sample rate.
OptimizationResult OptimizeFilter(FilterFamily family, const ObjectiveProblem& problem,
                                  const OptimizerOptions& options = {});

// JSON document with the best vector, J values, per-order outcomes and the
// full trace.
std::string OptimizationResultToJson(const OptimizationResult& result);
OptimizationResult OptimizationResultFromJson(const std::string& text);

// family,M,J_min,wc_hz,N,Rp_dB,Rs_dB; unused ripple fields are empty.
void WriteSummaryCsv(std::ostream& out, const std::vector<OptimizationResult>& results);

struct SummaryRow {
  FilterFamily family = FilterFamily::kButterworth;
  Index segment_len = 0;
  double j_min = 0.0;
  ParamVector best;
};
std::vector<SummaryRow> ReadSummaryCsv(std::istream& in);
void WriteSummaryRows(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace driftfilt

#endif  // DRIFTFILT_OPTIMIZER_H_
