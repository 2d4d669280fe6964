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

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "driftfilt/iir_design.h"
#include "driftfilt/optimizer.h"
#include "driftfilt/pipeline.h"
#include "driftfilt/wavelet_packet.h"
#include "gtest/gtest.h"
#include "unsupported/Eigen/FFT"

namespace driftfilt {
namespace {

std::vector<double> Periodogram(const Vector& x) {
  Eigen::FFT<double> fft;
  std::vector<double> in(x.data(), x.data() + x.size());
  std::vector<std::complex<double>> out;
  fft.fwd(out, in);
  std::vector<double> p(x.size() / 2 + 1);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = std::norm(out[k]);
  return p;
}

double Correlation(const Vector& a, const Vector& b) {
  const Eigen::ArrayXd da = a.array() - a.mean();
  const Eigen::ArrayXd db = b.array() - b.mean();
  return (da * db).sum() / std::sqrt(da.square().sum() * db.square().sum());
}

ObjectiveProblem ProblemFor(const std::vector<Recording>& data) {
  ObjectiveProblem p;
  p.dataset = &data;
  p.basis = &LoadBasis("db3");
  p.plan.segment_len = 256;
  p.level = 2;
  return p;
}

TEST(RngTest, EngineIsTheStandardMersenneTwister) {
  std::mt19937_64 reference;
  reference.discard(9999);
  EXPECT_EQ(reference(), 9981545732273789042ULL);
}

TEST(RngTest, UniformAndNormalMoments) {
  Rng rng(11);
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    su += u;
    const double z = rng.Normal();
    sn += z;
    sn2 += z * z;
  }
  EXPECT_NEAR(su / n, 0.5, 0.005);
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.01);
}

TEST(RngTest, DerivedSeedsAreDistinct) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 64; ++s) seeds.push_back(DeriveSeed(5, s));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
  EXPECT_NE(DeriveSeed(5, 1), DeriveSeed(6, 1));
}

TEST(SynthDataTest, DriftKindNames) {
  for (DriftKind k : {DriftKind::kPolynomial, DriftKind::kRandomWalk, DriftKind::kLowFreqSine}) {
    EXPECT_EQ(ParseDriftKind(DriftKindName(k)), k);
  }
  EXPECT_THROW(ParseDriftKind("sawtooth"), Error);
}

TEST(SynthDataTest, ShapeAndMetadata) {
  const SynthDataset ds = Generate(SynthConfig{});
  ASSERT_EQ(ds.recordings.size(), 3u);
  ASSERT_EQ(ds.components.size(), 3u);
  for (std::size_t d = 0; d < 3; ++d) {
    const Recording& r = ds.recordings[d];
    EXPECT_EQ(r.experiment_id, "exp" + std::to_string(d + 1));
    EXPECT_EQ(r.samples.size(), 16000);
    EXPECT_EQ(r.stimulus_index, 8000);
    EXPECT_EQ(r.sample_rate_hz, 10.0);
    EXPECT_NO_THROW(r.Validate());
  }
  EXPECT_EQ(ds.recordings[0].stimulus_label, "O3");
}

TEST(SynthDataTest, ZeroAmplitudesGiveZeroRecordings) {
  SynthConfig c;
  c.drift.amplitude = 0.0;
  c.noise_sigma = 0.0;
  c.burst.amplitude = 0.0;
  for (const Recording& r : Generate(c).recordings) {
    EXPECT_EQ(r.samples.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(SynthDataTest, DeterministicInSeed) {
  SynthConfig c;
  c.drift.kind = DriftKind::kRandomWalk;
  const SynthDataset a = Generate(c);
  const SynthDataset b = Generate(c);
  for (std::size_t d = 0; d < a.recordings.size(); ++d) {
    EXPECT_EQ(a.recordings[d].samples, b.recordings[d].samples);
  }
  c.seed += 1;
  EXPECT_NE(Generate(c).recordings[0].samples, a.recordings[0].samples);
}

TEST(SynthDataTest, ComponentsAddUpExactly) {
  for (DriftKind k : {DriftKind::kPolynomial, DriftKind::kRandomWalk, DriftKind::kLowFreqSine}) {
    SynthConfig c;
    c.drift.kind = k;
    const SynthDataset ds = Generate(c);
    for (std::size_t d = 0; d < ds.recordings.size(); ++d) {
      const SynthComponents& s = ds.components[d];
      EXPECT_EQ(ds.recordings[d].samples, (s.drift + s.noise) + s.burst);
    }
  }
}

TEST(SynthDataTest, BurstConfinedToPostStimulus) {
  const SynthDataset ds = Generate(SynthConfig{});
  for (const SynthComponents& s : ds.components) {
    EXPECT_EQ(s.burst.head(8000).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_GT(s.burst.tail(8000).cwiseAbs().maxCoeff(), 0.0);
  }
  for (const SynthComponents& s : Generate(SynthConfig::DriftOnly()).components) {
    EXPECT_EQ(s.burst.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(SynthDataTest, DriftEnergyLiesBelowCutoff) {
  for (DriftKind k : {DriftKind::kPolynomial, DriftKind::kRandomWalk, DriftKind::kLowFreqSine}) {
    SynthConfig c;
    c.drift.kind = k;
    const SynthDataset ds = Generate(c);
    for (const SynthComponents& s : ds.components) {
      const std::vector<double> p = Periodogram(s.drift);
      const double df = c.sample_rate_hz / static_cast<double>(s.drift.size());
      double below = 0.0, total = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        total += p[i];
        if (static_cast<double>(i) * df <= c.drift.cutoff_hz) below += p[i];
      }
      EXPECT_GE(below / total, 0.9) << DriftKindName(k);
    }
  }
}

TEST(SynthDataTest, NoiseIsWhiteOverTheBurstBand) {
  const SynthDataset ds = Generate(SynthConfig{});
  const Vector& noise = ds.components[0].noise;
  const Index m = 256;
  std::vector<double> avg(m / 2 + 1, 0.0);
  for (Index start = 0; start + m <= noise.size(); start += m) {
    const std::vector<double> p = Periodogram(noise.segment(start, m));
    for (std::size_t k = 0; k < avg.size(); ++k) avg[k] += p[k];
  }
  // Half-hertz sub-bands between 1 and 4 Hz.
  std::vector<double> bands;
  for (double lo = 1.0; lo < 4.0; lo += 0.5) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < avg.size(); ++k) {
      const double f = 10.0 * static_cast<double>(k) / static_cast<double>(m);
      if (f > lo && f <= lo + 0.5) {
        sum += avg[k];
        ++count;
      }
    }
    bands.push_back(sum / count);
  }
  const auto [mn, mx] = std::minmax_element(bands.begin(), bands.end());
  EXPECT_LE(10.0 * std::log10(*mx / *mn), 3.0);
}

TEST(SynthDataTest, DriftsAreWeaklyCorrelatedAcrossExperiments) {
  for (std::uint64_t seed : {20160904ULL, 1ULL, 99ULL}) {
    SynthConfig c;
    c.seed = seed;
    const SynthDataset ds = Generate(c);
    for (std::size_t i = 0; i < ds.components.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.components.size(); ++j) {
        EXPECT_LE(std::abs(Correlation(ds.components[i].drift, ds.components[j].drift)), 0.2)
            << "seed " << seed << " pair " << i << "," << j;
      }
    }
  }
}

TEST(SynthDataTest, ValidationRejectsBadConfigs) {
  auto expect_invalid = [](SynthConfig c) {
    try {
      c.Validate();
      ADD_FAILURE() << "accepted";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kValidation);
    }
  };
  SynthConfig c;
  c.num_experiments = 1;
  expect_invalid(c);
  c = {};
  c.stimulus_time_s = 1600.0;
  expect_invalid(c);
  c = {};
  c.drift.cutoff_hz = 0.5;
  expect_invalid(c);
  c = {};
  c.burst.band_high_hz = 5.0;
  expect_invalid(c);
  c = {};
  c.burst.band_low_hz = 0.1;
  expect_invalid(c);
  c = {};
  c.noise_sigma = -1.0;
  expect_invalid(c);
  EXPECT_NO_THROW(SynthConfig{}.Validate());
}

TEST(SynthDataTest, DriftSuppressingFiltersCutJTenfold) {
  const SynthDataset ds = Generate(SynthConfig::DriftOnly());
  const ObjectiveProblem problem = ProblemFor(ds.recordings);
  const double j_identity = EvaluateFilter(DigitalFilter::Identity(10.0), problem);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> fc(0.4, 3.0);
  std::uniform_int_distribution<int> order(2, 8);
  std::uniform_int_distribution<int> family(0, 3);
  int accepted = 0;
  for (int attempt = 0; attempt < 200 && accepted < 8; ++attempt) {
    FilterSpec spec;
    spec.family = kAllFamilies[family(gen)];
    spec.cutoff_hz = fc(gen);
    spec.order = order(gen);
    if (UsesPassbandRipple(spec.family)) spec.passband_ripple_db = 0.5;
    if (UsesStopbandAttenuation(spec.family)) spec.stopband_atten_db = 60.0;
    const DigitalFilter filter = DesignHighpass(spec);
    std::vector<double> freqs;
    for (int i = 0; i <= 200; ++i) freqs.push_back(0.2 * i / 200.0);
    bool suppresses = true;
    for (const Complex& h : FrequencyResponse(filter, freqs)) suppresses &= std::abs(h) <= 0.01;
    if (!suppresses) continue;
    ++accepted;
    EXPECT_LE(EvaluateFilter(filter, problem), 0.1 * j_identity)
        << FamilyName(spec.family) << " fc " << spec.cutoff_hz << " N " << spec.order;
  }
  EXPECT_EQ(accepted, 8);
}

TEST(OracleGridSearchTest, SinglePointGridIsThatPoint) {
  const SynthDataset ds = Generate(SynthConfig::DriftOnly());
  const ObjectiveProblem problem = ProblemFor(ds.recordings);
  GridSpec grid;
  grid.cutoffs_hz = {1.0};
  grid.orders = {4};
  const GridSearchResult r = OracleGridSearch(problem, FilterFamily::kButterworth, grid);
  ParamVector p;
  p.family = FilterFamily::kButterworth;
  p.cutoff_hz = 1.0;
  p.order = 4;
  EXPECT_EQ(r.best, p);
  EXPECT_EQ(r.j_best, EvaluateObjective(p, problem));
  EXPECT_EQ(r.surface.rows(), 1);
  EXPECT_THROW(OracleGridSearch(problem, FilterFamily::kButterworth, GridSpec{}), Error);
}

TEST(OracleGridSearchTest, DriftOnlySurfaceDropsThenFlattens) {
  const SynthDataset ds = Generate(SynthConfig::DriftOnly());
  const ObjectiveProblem problem = ProblemFor(ds.recordings);
  GridSpec grid;
  grid.cutoffs_hz = {0.1, 0.4, 0.8, 1.2, 1.6, 2.0};
  grid.orders = {4};
  const GridSearchResult r = OracleGridSearch(problem, FilterFamily::kButterworth, grid);
  const Eigen::VectorXd plateau = r.surface.col(0).tail(5);
  EXPECT_GT(r.surface(0, 0), 20.0 * plateau.maxCoeff());
  EXPECT_LE(plateau.maxCoeff() / plateau.minCoeff(), 2.0);
}

TEST(OracleGridSearchTest, OutOfBoundsPointsCarryThePenalty) {
  const SynthDataset ds = Generate(SynthConfig::DriftOnly());
  const ObjectiveProblem problem = ProblemFor(ds.recordings);
  GridSpec grid;
  grid.cutoffs_hz = {0.01, 1.0};
  grid.orders = {4, 11};
  const GridSearchResult r = OracleGridSearch(problem, FilterFamily::kButterworth, grid);
  EXPECT_EQ(r.surface(0, 0), kPenalty);
  EXPECT_EQ(r.surface(1, 1), kPenalty);
  EXPECT_LT(r.surface(1, 0), kPenalty);
  EXPECT_EQ(r.best.cutoff_hz, 1.0);
}

}  // namespace
}  // namespace driftfilt
