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

#include "driftfilt/synth_data.h"

#include <cmath>
#include <numbers>
#include <string>

#include "driftfilt/zero_phase.h"

namespace driftfilt {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr const char* kLabels[] = {"O3", "H2SO4", "NaCl_5ml", "NaCl_10ml"};

enum Stream : std::uint64_t { kDriftStream = 1, kNoiseStream = 2, kBurstStream = 3 };

double StdDev(const Vector& x) {
  return std::sqrt((x.array() - x.mean()).square().sum() / static_cast<double>(x.size()));
}

Vector LowFreqSineShape(Rng& rng, Index n, double fs, double cutoff) {
  Vector x = Vector::Zero(n);
  for (int k = 0; k < 6; ++k) {
    const double f = rng.Uniform(0.1 * cutoff, cutoff);
    const double phase = rng.Uniform(0.0, kTwoPi);
    const double a = rng.Uniform(0.5, 1.0);
    for (Index i = 0; i < n; ++i) x[i] += a * std::cos(kTwoPi * f * i / fs + phase);
  }
  return x;
}

Vector RandomWalkShape(Rng& rng, Index n, double fs) {
  Vector x(n);
  double acc = 0.0;
  for (Index i = 0; i < n; ++i) x[i] = acc += rng.Normal();
  FilterSpec spec;
  spec.family = FilterFamily::kButterworth;
  spec.cutoff_hz = 0.01;
  spec.order = 2;
  spec.sample_rate_hz = fs;
  return FiltFilt(DesignHighpass(spec), x).samples;
}

Vector PolynomialShape(Rng& rng, Index n) {
  double c[4];
  for (double& v : c) v = rng.Normal();
  Vector x(n);
  for (Index i = 0; i < n; ++i) {
    const double t = n > 1 ? -1.0 + 2.0 * i / static_cast<double>(n - 1) : 0.0;
    x[i] = ((c[3] * t + c[2]) * t + c[1]) * t + c[0];
  }
  return x;
}

Vector Drift(const SynthConfig& config, Index n, int d) {
  Rng rng(DeriveSeed(config.seed, 4 * static_cast<std::uint64_t>(d) + kDriftStream));
  const double scale = rng.Uniform(0.5, 1.5);
  const double offset = rng.Uniform(-1.0, 1.0) * config.drift.amplitude;
  if (config.drift.amplitude == 0.0) return Vector::Zero(n);
  Vector shape;
  switch (config.drift.kind) {
    case DriftKind::kLowFreqSine:
      shape = LowFreqSineShape(rng, n, config.sample_rate_hz, config.drift.cutoff_hz);
      break;
    case DriftKind::kRandomWalk:
      shape = RandomWalkShape(rng, n, config.sample_rate_hz);
      break;
    case DriftKind::kPolynomial:
      shape = PolynomialShape(rng, n);
      break;
  }
  shape.array() -= shape.mean();
  const double size = config.drift.kind == DriftKind::kPolynomial
                          ? shape.cwiseAbs().maxCoeff()
                          : StdDev(shape);
  if (size > 0.0) shape *= config.drift.amplitude * scale / size;
  return (shape.array() + offset).matrix();
}

Vector Noise(const SynthConfig& config, Index n, int d) {
  Rng rng(DeriveSeed(config.seed, 4 * static_cast<std::uint64_t>(d) + kNoiseStream));
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = config.noise_sigma * rng.Normal();
  return x;
}

// Unit-RMS random-phase multitone filling the band, under a raised-cosine
// envelope with 10 s ramps.
Vector Burst(const SynthConfig& config, Index n, Index onset, int d) {
  Vector x = Vector::Zero(n);
  const BurstConfig& b = config.burst;
  if (b.amplitude == 0.0) return x;
  Rng rng(DeriveSeed(config.seed, 4 * static_cast<std::uint64_t>(d) + kBurstStream));
  const double fs = config.sample_rate_hz;
  const Index length = std::min<Index>(n - onset, std::llround(b.duration_s * fs));
  const int tones = std::max(8, static_cast<int>(std::ceil(100.0 * (b.band_high_hz - b.band_low_hz))));
  Vector carrier = Vector::Zero(length);
  for (int k = 0; k < tones; ++k) {
    const double f = rng.Uniform(b.band_low_hz, b.band_high_hz);
    const double phase = rng.Uniform(0.0, kTwoPi);
    for (Index i = 0; i < length; ++i) carrier[i] += std::cos(kTwoPi * f * i / fs + phase);
  }
  const double rms = std::sqrt(carrier.squaredNorm() / static_cast<double>(length));
  const Index ramp = std::min<Index>(length / 2, std::llround(10.0 * fs));
  const double gain = b.amplitude * (1.0 + d) / rms;
  for (Index i = 0; i < length; ++i) {
    double w = 1.0;
    if (i < ramp) w = 0.5 - 0.5 * std::cos(std::numbers::pi * i / ramp);
    if (length - 1 - i < ramp) {
      w = 0.5 - 0.5 * std::cos(std::numbers::pi * (length - 1 - i) / ramp);
    }
    x[onset + i] = gain * w * carrier[i];
  }
  return x;
}

}  // namespace

double Rng::Uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  const double u1 = 1.0 - Uniform();  // (0, 1]
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(kTwoPi * u2);
  return r * std::cos(kTwoPi * u2);
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string_view DriftKindName(DriftKind kind) {
  switch (kind) {
    case DriftKind::kPolynomial: return "polynomial";
    case DriftKind::kRandomWalk: return "random_walk";
    case DriftKind::kLowFreqSine: return "low_freq_sine";
  }
  return "unknown";
}

DriftKind ParseDriftKind(std::string_view name) {
  if (name == "polynomial") return DriftKind::kPolynomial;
  if (name == "random_walk") return DriftKind::kRandomWalk;
  if (name == "low_freq_sine") return DriftKind::kLowFreqSine;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown drift kind '" + std::string(name) +
                  "'; expected polynomial, random_walk or low_freq_sine");
}

void SynthConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kValidation, "synthetic config: " + what);
  };
  const double nyquist = sample_rate_hz / 2.0;
  if (num_experiments < 2) fail("num_experiments must be at least 2");
  if (!(sample_rate_hz > 0.0)) fail("sample_rate_hz must be positive");
  if (!(duration_s > 0.0)) fail("duration_s must be positive");
  if (!(stimulus_time_s > 0.0) || !(stimulus_time_s < duration_s)) {
    fail("stimulus_time_s must lie inside (0, duration_s)");
  }
  if (std::llround(stimulus_time_s * sample_rate_hz) < 1 ||
      std::llround(stimulus_time_s * sample_rate_hz) >=
          std::llround(duration_s * sample_rate_hz)) {
    fail("stimulus must fall strictly inside the sampled record");
  }
  if (!(drift.cutoff_hz > 0.0) || !(drift.cutoff_hz < 0.3)) {
    fail("drift.cutoff_hz must lie in (0, 0.3) Hz");
  }
  if (!(drift.amplitude >= 0.0)) fail("drift.amplitude must be non-negative");
  if (!(noise_sigma >= 0.0)) fail("noise_sigma must be non-negative");
  if (!(burst.band_low_hz > drift.cutoff_hz) || !(burst.band_high_hz < nyquist) ||
      !(burst.band_low_hz < burst.band_high_hz)) {
    fail("burst band must lie inside (drift.cutoff_hz, Nyquist)");
  }
  if (!(burst.amplitude >= 0.0)) fail("burst.amplitude must be non-negative");
  if (!(burst.duration_s > 0.0)) fail("burst.duration_s must be positive");
}

SynthConfig SynthConfig::DriftOnly() {
  SynthConfig config;
  config.burst.amplitude = 0.0;
  return config;
}

SynthDataset Generate(const SynthConfig& config) {
  config.Validate();
  const Index n = std::llround(config.duration_s * config.sample_rate_hz);
  const Index onset = std::llround(config.stimulus_time_s * config.sample_rate_hz);
  SynthDataset out;
  for (int d = 0; d < config.num_experiments; ++d) {
    SynthComponents c{Drift(config, n, d), Noise(config, n, d), Burst(config, n, onset, d)};
    Recording r;
    r.experiment_id = "exp" + std::to_string(d + 1);
    r.channel_id = "ch1";
    r.samples = (c.drift + c.noise) + c.burst;
    r.sample_rate_hz = config.sample_rate_hz;
    r.stimulus_index = onset;
    r.stimulus_label = kLabels[d % 4];
    out.recordings.push_back(std::move(r));
    out.components.push_back(std::move(c));
  }
  return out;
}

GridSearchResult OracleGridSearch(const ObjectiveProblem& problem, FilterFamily family,
                                  const GridSpec& grid, const ParamBounds& bounds) {
  if (grid.cutoffs_hz.empty() || grid.orders.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs at least one cutoff and one order");
  }
  GridSearchResult result;
  result.surface.resize(static_cast<Index>(grid.cutoffs_hz.size()),
                        static_cast<Index>(grid.orders.size()));
  result.j_best = INFINITY;
  for (std::size_t i = 0; i < grid.cutoffs_hz.size(); ++i) {
    for (std::size_t k = 0; k < grid.orders.size(); ++k) {
      ParamVector p;
      p.family = family;
      p.cutoff_hz = grid.cutoffs_hz[i];
      p.order = grid.orders[k];
      if (UsesPassbandRipple(family)) p.rp_db = grid.rp_db;
      if (UsesStopbandAttenuation(family)) p.rs_db = grid.rs_db;
      const double j = EvaluateObjective(p, problem, bounds);
      result.surface(static_cast<Index>(i), static_cast<Index>(k)) = j;
      if (j < result.j_best) {
        result.j_best = j;
        result.best = p;
      }
    }
  }
  return result;
}

}  // namespace driftfilt
