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

// Reading recordings from disk and persisting pipeline outputs.
//
// A dataset is a JSON manifest (an array of entries) next to one CSV file
// per channel. The default CSV layout is a "time_s,value_mv" header followed
// by one sample per line; the optional adapter fields of an entry select
// other column positions for foreign layouts.

#ifndef DRIFTFILT_DATASET_IO_H_
#define DRIFTFILT_DATASET_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "driftfilt/common.h"
#include "driftfilt/energy_features.h"
#include "driftfilt/iir_design.h"
#include "driftfilt/optimizer.h"
#include "driftfilt/pipeline.h"
#include "driftfilt/recording.h"
#include "driftfilt/synth_data.h"

namespace driftfilt {

struct ManifestEntry {
  std::string file;  // relative paths resolve against the manifest directory
  std::string experiment_id;
  std::string channel_id;
  double sample_rate_hz = 10.0;
  double stimulus_time_s = 0.0;  // seconds after the first sample
  std::string stimulus_label;

  // Adapter fields. A negative time_column means the file has no time column.
  int time_column = 0;
  int value_column = 1;
  int header_rows = 1;
  char delimiter = ',';

  bool UsesDefaultLayout() const {
    return time_column == 0 && value_column == 1 && header_rows == 1 && delimiter == ',';
  }
};

// Throws Error(kIo) for an unreadable file and Error(kMalformedRow) for a
// document that is not an array of well-formed entries.
std::vector<ManifestEntry> ReadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path, const std::vector<ManifestEntry>& entries);

// Reads one channel. Non-numeric and non-finite samples raise
// Error(kMalformedRow) citing file and line; a time column that disagrees
// with the sample rate by more than 1% over the record raises
// Error(kValidation).
Vector ReadSignalCsv(const std::filesystem::path& path, const ManifestEntry& entry);
void WriteSignalCsv(const std::filesystem::path& path, const Recording& recording);

// Loads and validates every manifest entry. When expected_rate_hz is set,
// entries with another sample rate raise Error(kValidation). A stimulus time
// outside the record raises Error(kValidation).
std::vector<Recording> LoadDataset(const std::filesystem::path& manifest_path,
                                   std::optional<double> expected_rate_hz = std::nullopt);

// Writes <experiment>_<channel>.csv files and manifest.json into dir and
// returns the manifest path.
std::filesystem::path WriteDataset(const std::filesystem::path& dir,
                                   const std::vector<Recording>& recordings);

// Sections, gain, rate and the originating spec. Doubles round-trip exactly.
std::string FilterToJson(const DigitalFilter& filter);
DigitalFilter FilterFromJson(const std::string& text);
void WriteFilterJson(const std::filesystem::path& path, const DigitalFilter& filter);
DigitalFilter ReadFilterJson(const std::filesystem::path& path);

struct ResponsePoint {
  double freq_hz = 0.0;
  double magnitude_db = 0.0;
  double phase_deg = 0.0;
};

// Single-pass response on `points` frequencies spaced evenly over
// [0, Nyquist], endpoints included.
std::vector<ResponsePoint> ResponseCurve(const DigitalFilter& filter, int points = 2048);
void WriteResponseCsv(std::ostream& out, const std::vector<ResponsePoint>& curve);
std::vector<ResponsePoint> ReadResponseCsv(std::istream& in);

struct PipelineConfig {
  std::vector<FilterFamily> families{kAllFamilies.begin(), kAllFamilies.end()};
  std::vector<Index> segment_lengths{std::begin(kDefaultSegmentLengths),
                                     std::end(kDefaultSegmentLengths)};
  std::vector<std::string> bases = DefaultSweepBases();
  std::string objective_basis = "db3";
  int level = 2;
  Grouping grouping = Grouping::kPerRecording;
  OptimizerOptions optimizer;

  // Throws Error(kUnknownBasis) for a basis outside the table and
  // Error(kValidation) for other bad fields.
  void Validate() const;
};

std::string PipelineConfigToJson(const PipelineConfig& config);
// Missing keys keep their defaults; unknown keys are rejected.
PipelineConfig PipelineConfigFromJson(const std::string& text);
PipelineConfig ReadPipelineConfig(const std::filesystem::path& path);

// Synthetic-dataset settings. Missing keys keep their defaults; unknown
// keys and invalid configurations raise Error(kValidation).
std::string SynthConfigToJson(const SynthConfig& config);
SynthConfig SynthConfigFromJson(const std::string& text);

// J of one fixed filter for one (basis, M) cell of a robustness sweep.
struct SweepEntry {
  FilterFamily family = FilterFamily::kChebyshevII;
  std::string basis;
  Index segment_len = 0;
  double j = 0.0;
};
void WriteSweepCsv(std::ostream& out, const std::vector<SweepEntry>& entries);
std::vector<SweepEntry> ReadSweepCsv(std::istream& in);

// Segment energies of all experiments for one (basis, M) pair.
struct ScatterSet {
  std::string basis;
  Index segment_len = 0;
  std::string tag;  // distinguishes filters or regions sharing a basis and M
  std::vector<EnergyFeatures> features;
};

struct ResultBundle {
  std::vector<OptimizationResult> results;
  std::vector<ScatterSet> scatter;
  std::vector<SweepEntry> sweep;
  double sample_rate_hz = 10.0;
};

// Writes summary.csv (always); per result a filter JSON, a response CSV and
// the full result JSON; one energy CSV per scatter set; and
// objective_distribution.csv when sweep entries exist. Returns the written
// paths in that order. Throws Error(kIo) naming the path on failure.
std::vector<std::filesystem::path> WriteResults(const ResultBundle& bundle,
                                                const std::filesystem::path& out_dir);

// Text file helpers that raise Error(kIo) with the path.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace driftfilt

#endif  // DRIFTFILT_DATASET_IO_H_
