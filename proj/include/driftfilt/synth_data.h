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

#ifndef DRIFTFILT_SYNTH_DATA_H_
#define DRIFTFILT_SYNTH_DATA_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "driftfilt/optimizer.h"
#include "driftfilt/recording.h"

namespace driftfilt {

// Portable generator: std::mt19937_64 (bit-exact by definition in the C++
// standard) with hand-rolled uniform and Box-Muller normal draws, since the
// standard distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // 53-bit uniform on [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  double Normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// SplitMix64 mix of (seed, stream); independent streams per experiment and
// component.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

enum class DriftKind { kPolynomial, kRandomWalk, kLowFreqSine };
std::string_view DriftKindName(DriftKind kind);  // polynomial / random_walk / low_freq_sine
DriftKind ParseDriftKind(std::string_view name);

struct DriftConfig {
  DriftKind kind = DriftKind::kLowFreqSine;
  double amplitude = 5.0;  // mV; standard deviation (peak for polynomial)
  double cutoff_hz = 0.2;
};

struct BurstConfig {
  double band_low_hz = 0.5;
  double band_high_hz = 4.99;
  double amplitude = 2.0;  // mV RMS of experiment 0; experiment d gets (1 + d) times
  double duration_s = 600.0;
};

struct SynthConfig {
  int num_experiments = 3;
  double duration_s = 1600.0;
  double sample_rate_hz = 10.0;
  double stimulus_time_s = 800.0;
  DriftConfig drift;
  double noise_sigma = 1.0;
  BurstConfig burst;
  std::uint64_t seed = 20160904;

  // Throws Error(kValidation) on any violated invariant.
  void Validate() const;

  // Default configuration without bursts: experiments differ only by their
  // drift and their noise realization.
  static SynthConfig DriftOnly();
};

struct SynthComponents {
  Vector drift;
  Vector noise;
  Vector burst;
};

struct SynthDataset {
  std::vector<Recording> recordings;  // one channel per experiment
  std::vector<SynthComponents> components;
};

// Recording d is exactly (drift + noise) + burst. Deterministic in the seed.
SynthDataset Generate(const SynthConfig& config);

struct GridSpec {
  std::vector<double> cutoffs_hz;
  std::vector<int> orders;
  // Ripple values held fixed for families that use them; defaults are the
  // optimizer's initial guess.
  double rp_db = 0.5;
  double rs_db = 80.0;
};

struct GridSearchResult {
  ParamVector best;
  double j_best = 0.0;
  Matrix surface;  // cutoffs x orders
};

// Exhaustive evaluation of EvaluateObjective over the lattice; the first
// minimizer in row-major order wins ties.
GridSearchResult OracleGridSearch(const ObjectiveProblem& problem, FilterFamily family,
                                  const GridSpec& grid, const ParamBounds& bounds = {});

}  // namespace driftfilt

#endif  // DRIFTFILT_SYNTH_DATA_H_
