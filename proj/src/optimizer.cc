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

#include "driftfilt/optimizer.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace driftfilt {
namespace {

using nlohmann::json;

// Layout of the continuous simplex vector for one family and mode.
struct Coordinates {
  bool rp = false;
  bool rs = false;
  bool order = false;

  Index Size() const { return 1 + rp + rs + order; }
};

Coordinates CoordinatesFor(FilterFamily family, const OptimizerOptions& options) {
  Coordinates c;
  c.rp = UsesPassbandRipple(family);
  c.rs = UsesStopbandAttenuation(family) &&
         !(family == FilterFamily::kElliptic && options.freeze_elliptic_rs);
  c.order = options.order_mode == OrderMode::kContinuousRelaxation;
  return c;
}

Vector Pack(const ParamVector& p, const Coordinates& c) {
  Vector x(c.Size());
  Index i = 0;
  x[i++] = p.cutoff_hz;
  if (c.rp) x[i++] = *p.rp_db;
  if (c.rs) x[i++] = *p.rs_db;
  if (c.order) x[i++] = p.order;
  return x;
}

// `continuous_order` receives the unrounded order coordinate, if any.
ParamVector Unpack(const Vector& x, const Coordinates& c, const ParamVector& base,
                   double* continuous_order = nullptr) {
  ParamVector p = base;
  Index i = 0;
  p.cutoff_hz = x[i++];
  if (c.rp) p.rp_db = x[i++];
  if (c.rs) p.rs_db = x[i++];
  if (c.order) {
    if (continuous_order != nullptr) *continuous_order = x[i];
    p.order = static_cast<int>(std::lround(std::clamp(x[i], -1e6, 1e6)));
    ++i;
  }
  return p;
}

Vector Steps(const Coordinates& c, const ParamBounds& b, const Vector& x0) {
  Vector step(c.Size());
  Vector hi(c.Size());
  Index i = 0;
  step[i] = 0.05 * (b.cutoff_hi_hz - b.cutoff_lo_hz);
  hi[i++] = b.cutoff_hi_hz;
  if (c.rp) {
    step[i] = 0.05 * (b.rp_hi_db - b.rp_lo_db);
    hi[i++] = b.rp_hi_db;
  }
  if (c.rs) {
    step[i] = 0.05 * (b.rs_hi_db - b.rs_lo_db);
    hi[i++] = b.rs_hi_db;
  }
  if (c.order) {
    step[i] = 0.05 * (b.order_hi - b.order_lo);
    hi[i++] = b.order_hi;
  }
  // Step inward when the start sits on an upper bound.
  for (Index k = 0; k < step.size(); ++k) {
    if (x0[k] + step[k] > hi[k]) step[k] = -step[k];
  }
  return step;
}

double Clip(double v, double lo, double hi) { return std::clamp(v, lo, hi); }

json ParamsToJson(const ParamVector& p) {
  json j;
  j["family"] = std::string(FamilyName(p.family));
  j["cutoff_hz"] = p.cutoff_hz;
  j["order"] = p.order;
  j["rp_db"] = p.rp_db ? json(*p.rp_db) : json(nullptr);
  j["rs_db"] = p.rs_db ? json(*p.rs_db) : json(nullptr);
  return j;
}

ParamVector ParamsFromJson(const json& j) {
  ParamVector p;
  p.family = ParseFamily(j.at("family").get<std::string>());
  p.cutoff_hz = j.at("cutoff_hz").get<double>();
  p.order = j.at("order").get<int>();
  if (j.contains("rp_db") && !j["rp_db"].is_null()) p.rp_db = j["rp_db"].get<double>();
  if (j.contains("rs_db") && !j["rs_db"].is_null()) p.rs_db = j["rs_db"].get<double>();
  return p;
}

std::string OptionalField(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

ParamVector ParamVector::InitialGuess(FilterFamily family) {
  ParamVector p;
  p.family = family;
  p.cutoff_hz = 1.0;
  p.order = 7;
  if (UsesPassbandRipple(family)) p.rp_db = 0.5;
  if (UsesStopbandAttenuation(family)) p.rs_db = 80.0;
  return p;
}

bool ParamVector::WithinBounds(const ParamBounds& b) const {
  auto inside = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  if (!inside(cutoff_hz, b.cutoff_lo_hz, b.cutoff_hi_hz)) return false;
  if (order < b.order_lo || order > b.order_hi) return false;
  if (UsesPassbandRipple(family) != rp_db.has_value()) return false;
  if (UsesStopbandAttenuation(family) != rs_db.has_value()) return false;
  if (rp_db && !inside(*rp_db, b.rp_lo_db, b.rp_hi_db)) return false;
  if (rs_db && !inside(*rs_db, b.rs_lo_db, b.rs_hi_db)) return false;
  return true;
}

FilterSpec ParamVector::ToSpec(double sample_rate_hz) const {
  FilterSpec spec;
  spec.family = family;
  spec.cutoff_hz = cutoff_hz;
  spec.order = order;
  spec.passband_ripple_db = rp_db;
  spec.stopband_atten_db = rs_db;
  spec.sample_rate_hz = sample_rate_hz;
  return spec;
}

double EvaluateObjective(const ParamVector& params, const ObjectiveProblem& problem,
                         const ParamBounds& bounds) {
  if (!params.WithinBounds(bounds)) return kPenalty;
  if (problem.dataset == nullptr || problem.dataset->empty()) {
    throw Error(ErrorCode::kInvalidArgument, "objective needs a nonempty dataset");
  }
  DigitalFilter filter;
  try {
    filter = DesignHighpass(params.ToSpec(problem.dataset->front().sample_rate_hz));
  } catch (const Error&) {
    return kPenalty;
  }
  const double j = EvaluateFilter(filter, problem);
  return std::isfinite(j) ? j : kPenalty;
}

OptimizationResult OptimizeFilter(FilterFamily family, const ObjectiveProblem& problem,
                                  const OptimizerOptions& options) {
  if (problem.dataset == nullptr || problem.basis == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "objective problem lacks dataset or basis");
  }
  const int experiments = problem.ExperimentCount();
  if (experiments < 2) {
    throw Error(ErrorCode::kVacuousProblem,
                "optimization needs at least two experiments, got " +
                    std::to_string(experiments) + "; J is identically zero");
  }
  const double fs = problem.dataset->front().sample_rate_hz;
  for (const Recording& r : *problem.dataset) {
    if (r.sample_rate_hz != fs) {
      throw Error(ErrorCode::kValidation,
                  "recording " + r.Key() + " has sample rate " +
                      FormatDouble(r.sample_rate_hz) + " Hz, expected " + FormatDouble(fs));
    }
  }
  problem.plan.Validate(*problem.basis, problem.level);

  const ParamBounds& b = options.bounds;
  const Coordinates coords = CoordinatesFor(family, options);
  ParamVector start = ParamVector::InitialGuess(family);
  start.cutoff_hz = Clip(start.cutoff_hz, b.cutoff_lo_hz, b.cutoff_hi_hz);
  start.order = std::clamp(start.order, b.order_lo, b.order_hi);
  if (start.rp_db) start.rp_db = Clip(*start.rp_db, b.rp_lo_db, b.rp_hi_db);
  if (start.rs_db) start.rs_db = Clip(*start.rs_db, b.rs_lo_db, b.rs_hi_db);
  if (family == FilterFamily::kElliptic && options.freeze_elliptic_rs) {
    start.rs_db = options.frozen_rs_db;
  }

  OptimizationResult result;
  result.segment_len = problem.plan.segment_len;
  result.basis_name = problem.basis->Name();
  result.level = problem.level;
  result.converged = true;
  result.j_initial_guess = EvaluateObjective(start, problem, b);
  result.j_min = INFINITY;

  auto run = [&](const ParamVector& base) {
    auto objective = [&](const Vector& x) {
      double raw_order = base.order;
      const ParamVector p = Unpack(x, coords, base, &raw_order);
      // The rounded order may sit inside the bounds while the coordinate
      // itself does not.
      const bool order_ok = !coords.order || (raw_order >= b.order_lo && raw_order <= b.order_hi);
      const double j = order_ok ? EvaluateObjective(p, problem, b) : kPenalty;
      result.trace.push_back({p, j});
      return j;
    };
    NelderMeadOptions nm = options.nelder_mead;
    const Vector x0 = Pack(base, coords);
    nm.initial_step = Steps(coords, b, x0);
    const NelderMeadResult r = NelderMead(objective, x0, nm);
    OrderOutcome outcome;
    outcome.best = Unpack(r.x_best, coords, base);
    outcome.order = outcome.best.order;
    outcome.j = r.f_best;
    outcome.iterations = r.iterations;
    outcome.converged = r.converged;
    result.per_order.push_back(outcome);
    result.converged = result.converged && r.converged;
    if (r.f_best < result.j_min && outcome.best.WithinBounds(b)) {
      result.j_min = r.f_best;
      result.best = outcome.best;
    }
  };

  if (options.order_mode == OrderMode::kDiscreteSweep) {
    for (int order = b.order_lo; order <= b.order_hi; ++order) {
      ParamVector base = start;
      base.order = order;
      run(base);
    }
  } else {
    run(start);
  }
  result.evaluations = static_cast<int>(result.trace.size());
  if (!std::isfinite(result.j_min)) {
    // Every simplex ended on a penalized vertex; fall back to the start.
    result.best = start;
    result.j_min = result.j_initial_guess;
  }
  return result;
}

std::string OptimizationResultToJson(const OptimizationResult& result) {
  json j;
  j["best"] = ParamsToJson(result.best);
  j["j_min"] = result.j_min;
  j["j_initial_guess"] = result.j_initial_guess;
  j["evaluations"] = result.evaluations;
  j["segment_len"] = result.segment_len;
  j["basis"] = result.basis_name;
  j["level"] = result.level;
  j["converged"] = result.converged;
  json per_order = json::array();
  for (const OrderOutcome& o : result.per_order) {
    per_order.push_back({{"order", o.order},
                         {"best", ParamsToJson(o.best)},
                         {"j", o.j},
                         {"iterations", o.iterations},
                         {"converged", o.converged}});
  }
  j["per_order"] = std::move(per_order);
  json trace = json::array();
  for (const TraceEntry& t : result.trace) {
    json entry = ParamsToJson(t.params);
    entry["j"] = t.j;
    trace.push_back(std::move(entry));
  }
  j["trace"] = std::move(trace);
  return j.dump(2);
}

OptimizationResult OptimizationResultFromJson(const std::string& text) {
  try {
    const json j = json::parse(text);
    OptimizationResult r;
    r.best = ParamsFromJson(j.at("best"));
    r.j_min = j.at("j_min").get<double>();
    r.j_initial_guess = j.at("j_initial_guess").get<double>();
    r.evaluations = j.at("evaluations").get<int>();
    r.segment_len = j.at("segment_len").get<Index>();
    r.basis_name = j.at("basis").get<std::string>();
    r.level = j.at("level").get<int>();
    r.converged = j.at("converged").get<bool>();
    for (const json& o : j.at("per_order")) {
      r.per_order.push_back({o.at("order").get<int>(), ParamsFromJson(o.at("best")),
                             o.at("j").get<double>(), o.at("iterations").get<int>(),
                             o.at("converged").get<bool>()});
    }
    for (const json& t : j.at("trace")) {
      r.trace.push_back({ParamsFromJson(t), t.at("j").get<double>()});
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedRow, std::string("optimization result JSON: ") + e.what());
  }
}

void WriteSummaryCsv(std::ostream& out, const std::vector<OptimizationResult>& results) {
  std::vector<SummaryRow> rows;
  for (const OptimizationResult& r : results) {
    rows.push_back({r.best.family, r.segment_len, r.j_min, r.best});
  }
  WriteSummaryRows(out, rows);
}

void WriteSummaryRows(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "family,M,J_min,wc_hz,N,Rp_dB,Rs_dB\n";
  for (const SummaryRow& r : rows) {
    out << FamilyName(r.family) << ',' << r.segment_len << ',' << FormatDouble(r.j_min)
        << ',' << FormatDouble(r.best.cutoff_hz) << ',' << r.best.order << ','
        << OptionalField(r.best.rp_db) << ',' << OptionalField(r.best.rs_db) << '\n';
  }
}

std::vector<SummaryRow> ReadSummaryCsv(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::vector<SummaryRow> rows;
  auto bad = [&](const std::string& what) {
    return Error(ErrorCode::kMalformedRow, "summary line " + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) {
    line_no = 1;
    throw bad("missing header");
  }
  line_no = 1;
  if (SplitCsvLine(line) != std::vector<std::string>{"family", "M", "J_min", "wc_hz", "N",
                                                     "Rp_dB", "Rs_dB"}) {
    throw bad("unexpected header '" + line + "'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != 7) throw bad("expected 7 fields");
    SummaryRow row;
    try {
      row.family = ParseFamily(f[0]);
    } catch (const Error& e) {
      throw bad(e.what());
    }
    double m, j, wc, n;
    if (!ParseDouble(f[1], m) || !ParseDouble(f[2], j) || !ParseDouble(f[3], wc) ||
        !ParseDouble(f[4], n)) {
      throw bad("non-numeric field");
    }
    row.segment_len = static_cast<Index>(m);
    row.j_min = j;
    row.best.family = row.family;
    row.best.cutoff_hz = wc;
    row.best.order = static_cast<int>(n);
    double v;
    if (!f[5].empty()) {
      if (!ParseDouble(f[5], v)) throw bad("bad Rp_dB");
      row.best.rp_db = v;
    }
    if (!f[6].empty()) {
      if (!ParseDouble(f[6], v)) throw bad("bad Rs_dB");
      row.best.rs_db = v;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace driftfilt
