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

#include "driftfilt/dataset_io.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "driftfilt/synth_data.h"
#include "driftfilt/wavelet_packet.h"
#include "gtest/gtest.h"

namespace driftfilt {
namespace {

namespace fs = std::filesystem;

class DatasetIoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("driftfilt_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  void Write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }

  static std::string Entry(const std::string& file, const std::string& exp, double stim) {
    return "{\"file\": \"" + file + "\", \"experiment_id\": \"" + exp +
           "\", \"channel_id\": \"c1\", \"sample_rate_hz\": 10, \"stimulus_time_s\": " +
           std::to_string(stim) + ", \"stimulus_label\": \"O3\"}";
  }

  static std::string Signal(int n, double offset) {
    std::string s = "time_s,value_mv\n";
    for (int i = 0; i < n; ++i) {
      s += std::to_string(i / 10.0) + "," + std::to_string(offset + 0.5 * i) + "\n";
    }
    return s;
  }

  fs::path dir_;
};

template <typename Fn>
void ExpectError(Fn fn, ErrorCode code, const std::string& fragment) {
  try {
    fn();
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST_F(DatasetIoTest, LoadsWellFormedManifest) {
  Write("a.csv", Signal(50, 0.0));
  Write("b.csv", Signal(80, 1.0));
  Write("m.json", "[" + Entry("a.csv", "e1", 2.0) + "," + Entry("b.csv", "e2", 3.5) + "]");
  const std::vector<Recording> recs = LoadDataset(dir_ / "m.json");
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].samples.size(), 50);
  EXPECT_EQ(recs[1].samples.size(), 80);
  EXPECT_EQ(recs[0].stimulus_index, 20);
  EXPECT_EQ(recs[1].stimulus_index, 35);
  EXPECT_EQ(recs[1].samples[2], 2.0);
  EXPECT_EQ(recs[0].Key(), "e1/c1");
  EXPECT_EQ(recs[0].stimulus_label, "O3");
}

TEST_F(DatasetIoTest, NanSampleCitesTheRow) {
  Write("a.csv", "time_s,value_mv\n0,1\n0.1,NaN\n0.2,3\n");
  Write("m.json", "[" + Entry("a.csv", "e1", 0.1) + "]");
  ExpectError([&] { LoadDataset(dir_ / "m.json"); }, ErrorCode::kMalformedRow, "a.csv:3");
}

TEST_F(DatasetIoTest, GarbageAndShortRowsAreMalformed) {
  Write("a.csv", "time_s,value_mv\n0,1\n0.1,2x\n");
  Write("b.csv", "time_s,value_mv\n0,1\n0.1\n");
  Write("c.csv", "t,v\n0,1\n");
  Write("ma.json", "[" + Entry("a.csv", "e1", 0.1) + "]");
  Write("mb.json", "[" + Entry("b.csv", "e1", 0.1) + "]");
  Write("mc.json", "[" + Entry("c.csv", "e1", 0.1) + "]");
  ExpectError([&] { LoadDataset(dir_ / "ma.json"); }, ErrorCode::kMalformedRow, "a.csv:3");
  ExpectError([&] { LoadDataset(dir_ / "mb.json"); }, ErrorCode::kMalformedRow, "b.csv:3");
  ExpectError([&] { LoadDataset(dir_ / "mc.json"); }, ErrorCode::kMalformedRow, "header");
}

TEST_F(DatasetIoTest, StimulusAfterEndIsRejected) {
  Write("a.csv", Signal(50, 0.0));
  Write("m.json", "[" + Entry("a.csv", "e1", 9.0) + "]");
  ExpectError([&] { LoadDataset(dir_ / "m.json"); }, ErrorCode::kValidation, "outside the record");
}

TEST_F(DatasetIoTest, MissingFileAndManifest) {
  Write("m.json", "[" + Entry("nope.csv", "e1", 1.0) + "]");
  ExpectError([&] { LoadDataset(dir_ / "m.json"); }, ErrorCode::kIo, "nope.csv");
  ExpectError([&] { LoadDataset(dir_ / "absent.json"); }, ErrorCode::kIo, "absent.json");
  Write("bad.json", "{\"file\": 1}");
  ExpectError([&] { LoadDataset(dir_ / "bad.json"); }, ErrorCode::kMalformedRow, "array");
  Write("bad2.json", "[{\"file\": \"a.csv\"}]");
  ExpectError([&] { LoadDataset(dir_ / "bad2.json"); }, ErrorCode::kMalformedRow, "entry 0");
}

TEST_F(DatasetIoTest, SampleRateMismatch) {
  Write("a.csv", Signal(50, 0.0));
  Write("m.json", "[" + Entry("a.csv", "e1", 1.0) + "]");
  ExpectError([&] { LoadDataset(dir_ / "m.json", 20.0); }, ErrorCode::kValidation, "differs");
  // Time column inconsistent with the declared rate.
  std::string s = "time_s,value_mv\n";
  for (int i = 0; i < 50; ++i) s += std::to_string(i / 5.0) + ",1\n";
  Write("b.csv", s);
  Write("mb.json", "[" + Entry("b.csv", "e1", 1.0) + "]");
  ExpectError([&] { LoadDataset(dir_ / "mb.json"); }, ErrorCode::kValidation, "time column");
}

TEST_F(DatasetIoTest, ColumnAdapterReadsForeignLayout) {
  Write("raw.txt", "# exported\nidx;ch0;ch1\n0;9;1.5\n1;9;2.5\n2;9;3.5\n3;9;4.5\n");
  Write("m.json",
        "[{\"file\": \"raw.txt\", \"experiment_id\": \"e\", \"channel_id\": \"c\", "
        "\"sample_rate_hz\": 10, \"stimulus_time_s\": 0.2, \"time_column\": -1, "
        "\"value_column\": 2, \"header_rows\": 2, \"delimiter\": \";\"}]");
  const std::vector<Recording> recs = LoadDataset(dir_ / "m.json");
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].samples.size(), 4);
  EXPECT_EQ(recs[0].samples[3], 4.5);
  EXPECT_EQ(recs[0].stimulus_index, 2);
  const std::vector<ManifestEntry> entries = ReadManifest(dir_ / "m.json");
  EXPECT_FALSE(entries[0].UsesDefaultLayout());
  WriteManifest(dir_ / "again.json", entries);
  EXPECT_EQ(ReadManifest(dir_ / "again.json")[0].delimiter, ';');
}

TEST_F(DatasetIoTest, RoundTripIsBitExact) {
  SynthConfig c;
  c.duration_s = 200.0;
  c.stimulus_time_s = 120.0;
  std::vector<Recording> recs = Generate(c).recordings;
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> wild(-1e6, 1e6);
  for (Index i = 0; i < 50; ++i) recs[0].samples[i] = wild(gen) * std::pow(10.0, (i % 40) - 20);
  const fs::path manifest = WriteDataset(dir_ / "ds", recs);
  const std::vector<Recording> back = LoadDataset(manifest, 10.0);
  ASSERT_EQ(back.size(), recs.size());
  for (std::size_t d = 0; d < recs.size(); ++d) {
    EXPECT_EQ(back[d].samples, recs[d].samples);
    EXPECT_EQ(back[d].stimulus_index, recs[d].stimulus_index);
    EXPECT_EQ(back[d].experiment_id, recs[d].experiment_id);
    EXPECT_EQ(back[d].stimulus_label, recs[d].stimulus_label);
  }
}

TEST(FilterJsonTest, RoundTripPreservesResponse) {
  std::vector<double> grid(1024);
  for (int k = 0; k < 1024; ++k) grid[k] = 5.0 * k / 1023.0;
  for (FilterFamily f : kAllFamilies) {
    FilterSpec spec;
    spec.family = f;
    spec.order = 5;
    spec.cutoff_hz = 0.77;
    if (UsesPassbandRipple(f)) spec.passband_ripple_db = 0.3;
    if (UsesStopbandAttenuation(f)) spec.stopband_atten_db = 70.0;
    const DigitalFilter filter = DesignHighpass(spec);
    const DigitalFilter back = FilterFromJson(FilterToJson(filter));
    ASSERT_TRUE(back.spec);
    EXPECT_EQ(back.spec->family, f);
    EXPECT_EQ(back.spec->stopband_atten_db, spec.stopband_atten_db);
    const std::vector<Complex> a = FrequencyResponse(filter, grid);
    const std::vector<Complex> b = FrequencyResponse(back, grid);
    for (int k = 0; k < 1024; ++k) EXPECT_LE(std::abs(a[k] - b[k]), 1e-12);
    EXPECT_EQ(back.sections, filter.sections);
  }
  EXPECT_THROW(FilterFromJson("{\"sections\": []}"), Error);
  EXPECT_THROW(FilterFromJson("not json"), Error);
}

TEST(ResponseCurveTest, GridAndReader) {
  FilterSpec spec;
  const std::vector<ResponsePoint> curve = ResponseCurve(DesignHighpass(spec));
  ASSERT_EQ(curve.size(), 2048u);
  EXPECT_EQ(curve.front().freq_hz, 0.0);
  EXPECT_EQ(curve.back().freq_hz, 5.0);
  std::stringstream ss;
  WriteResponseCsv(ss, curve);
  const std::vector<ResponsePoint> back = ReadResponseCsv(ss);
  ASSERT_EQ(back.size(), curve.size());
  for (std::size_t k = 0; k < curve.size(); ++k) {
    EXPECT_EQ(back[k].freq_hz, curve[k].freq_hz);
    EXPECT_EQ(back[k].magnitude_db, curve[k].magnitude_db);
    EXPECT_EQ(back[k].phase_deg, curve[k].phase_deg);
  }
}

TEST(PipelineConfigTest, DefaultsRoundTrip) {
  const PipelineConfig c;
  EXPECT_NO_THROW(c.Validate());
  EXPECT_EQ(c.segment_lengths, (std::vector<Index>{256, 512, 1024}));
  EXPECT_EQ(c.level, 2);
  const PipelineConfig back = PipelineConfigFromJson(PipelineConfigToJson(c));
  EXPECT_EQ(back.families, c.families);
  EXPECT_EQ(back.bases, c.bases);
  EXPECT_EQ(back.optimizer.nelder_mead.tol_x, c.optimizer.nelder_mead.tol_x);
  EXPECT_EQ(back.optimizer.bounds.rs_hi_db, c.optimizer.bounds.rs_hi_db);
}

TEST(PipelineConfigTest, PartialDocumentsOverrideDefaults) {
  const PipelineConfig c = PipelineConfigFromJson(
      R"({"families": ["chebyshev2"], "segments": [512], "level": 3,
          "grouping": "experiment",
          "optimizer": {"order_mode": "continuous", "bounds": {"order_hi": 8}}})");
  EXPECT_EQ(c.families, std::vector<FilterFamily>{FilterFamily::kChebyshevII});
  EXPECT_EQ(c.segment_lengths, std::vector<Index>{512});
  EXPECT_EQ(c.level, 3);
  EXPECT_EQ(c.grouping, Grouping::kPerExperiment);
  EXPECT_EQ(c.optimizer.order_mode, OrderMode::kContinuousRelaxation);
  EXPECT_EQ(c.optimizer.bounds.order_hi, 8);
  EXPECT_EQ(c.optimizer.bounds.order_lo, 1);
}

TEST(PipelineConfigTest, RejectsInvalidDocuments) {
  ExpectError([] { PipelineConfigFromJson(R"({"bases": ["db99"]})"); }, ErrorCode::kUnknownBasis,
              "db99");
  ExpectError([] { PipelineConfigFromJson(R"({"segments": [300]})"); }, ErrorCode::kValidation,
              "power of two");
  ExpectError([] { PipelineConfigFromJson(R"({"colour": 1})"); }, ErrorCode::kValidation,
              "colour");
  ExpectError([] { PipelineConfigFromJson(R"({"optimizer": {"tol": 1}})"); },
              ErrorCode::kValidation, "tol");
  ExpectError([] { PipelineConfigFromJson(R"({"level": "two"})"); }, ErrorCode::kValidation,
              "pipeline config");
}

TEST(SynthConfigJsonTest, RoundTripAndOverrides) {
  SynthConfig c;
  c.drift.kind = DriftKind::kRandomWalk;
  c.seed = 12345678901234ULL;
  const SynthConfig back = SynthConfigFromJson(SynthConfigToJson(c));
  EXPECT_EQ(back.drift.kind, DriftKind::kRandomWalk);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.burst.band_high_hz, c.burst.band_high_hz);
  const SynthConfig partial = SynthConfigFromJson(R"({"num_experiments": 4, "burst": {"amplitude": 0}})");
  EXPECT_EQ(partial.num_experiments, 4);
  EXPECT_EQ(partial.burst.amplitude, 0.0);
  EXPECT_EQ(partial.duration_s, 1600.0);
  ExpectError([] { SynthConfigFromJson(R"({"drift": {"cutoff_hz": 1.0}})"); },
              ErrorCode::kValidation, "drift.cutoff_hz");
  ExpectError([] { SynthConfigFromJson(R"({"drift": {"kind": "saw"}})"); },
              ErrorCode::kValidation, "saw");
  ExpectError([] { SynthConfigFromJson(R"({"noise": 1})"); }, ErrorCode::kValidation, "noise");
}

TEST(SweepCsvTest, RoundTrip) {
  const std::vector<SweepEntry> entries = {{FilterFamily::kChebyshevII, "db3", 256, 1.5},
                                           {FilterFamily::kElliptic, "coif2", 1024, 0.25}};
  std::stringstream ss;
  WriteSweepCsv(ss, entries);
  const std::vector<SweepEntry> back = ReadSweepCsv(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].family, FilterFamily::kElliptic);
  EXPECT_EQ(back[1].basis, "coif2");
  EXPECT_EQ(back[1].segment_len, 1024);
  EXPECT_EQ(back[1].j, 0.25);
}

class WriteResultsTest : public DatasetIoTest {};

TEST_F(WriteResultsTest, EmptyResultsWriteOnlySummary) {
  const std::vector<fs::path> paths = WriteResults({}, dir_ / "out");
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].filename(), "summary.csv");
  std::ifstream in(paths[0]);
  EXPECT_TRUE(ReadSummaryCsv(in).empty());
}

TEST_F(WriteResultsTest, EveryFileReadsBack) {
  ResultBundle bundle;
  OptimizationResult r;
  r.best = ParamVector::InitialGuess(FilterFamily::kChebyshevII);
  r.j_min = 2.5;
  r.j_initial_guess = 3.0;
  r.segment_len = 256;
  r.basis_name = "db3";
  r.level = 2;
  bundle.results.push_back(r);
  EnergyFeatures f;
  f.experiment_id = "exp1";
  f.segment_energies = Matrix::Constant(3, 4, 1.25);
  f.basis_name = "db3";
  f.segment_len = 256;
  f.level = 2;
  bundle.scatter.push_back({"db3", 256, "pre_stimulus", {f}});
  bundle.sweep.push_back({FilterFamily::kChebyshevII, "db3", 256, 2.5});

  const std::vector<fs::path> paths = WriteResults(bundle, dir_ / "out");
  ASSERT_EQ(paths.size(), 6u);
  for (const fs::path& p : paths) EXPECT_TRUE(fs::exists(p)) << p;

  std::ifstream summary(paths[0]);
  const std::vector<SummaryRow> rows = ReadSummaryCsv(summary);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].best, r.best);

  const DigitalFilter filter = ReadFilterJson(paths[1]);
  EXPECT_EQ(filter.sections, DesignHighpass(r.best.ToSpec(10.0)).sections);
  std::ifstream response(paths[2]);
  EXPECT_EQ(ReadResponseCsv(response).size(), 2048u);
  EXPECT_EQ(OptimizationResultFromJson(ReadTextFile(paths[3])).j_min, 2.5);
  std::ifstream energy(paths[4]);
  EXPECT_EQ(paths[4].filename(), "energy_db3_M256_pre_stimulus.csv");
  EXPECT_EQ(ReadFeaturesCsv(energy)[0].segment_energies, f.segment_energies);
  std::ifstream sweep(paths[5]);
  EXPECT_EQ(ReadSweepCsv(sweep).size(), 1u);
}

TEST_F(WriteResultsTest, UnwritableDirectoryNamesThePath) {
  Write("blocker", "x");
  ExpectError([&] { WriteResults({}, dir_ / "blocker" / "out"); }, ErrorCode::kIo, "blocker");
}

}  // namespace
}  // namespace driftfilt
