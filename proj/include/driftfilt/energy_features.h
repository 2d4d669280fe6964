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

#ifndef DRIFTFILT_ENERGY_FEATURES_H_
#define DRIFTFILT_ENERGY_FEATURES_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "driftfilt/common.h"
#include "driftfilt/wavelet_packet.h"
#include "driftfilt/zero_phase.h"

namespace driftfilt {

enum class Region { kPreStimulus, kPostStimulus };
enum class Alignment { kFromRegionStart };

std::string_view RegionName(Region region);  // "pre_stimulus" / "post_stimulus"
Region ParseRegion(std::string_view name);

inline constexpr Index kDefaultSegmentLengths[] = {256, 512, 1024};

struct SegmentationPlan {
  Index segment_len = 256;
  Region region = Region::kPreStimulus;
  Alignment alignment = Alignment::kFromRegionStart;

  // Accepts any power of two that is at least four filter lengths and at
  // least 2^level. Throws Error(kInvalidArgument).
  void Validate(const WaveletBasis& basis, int level) const;
};

// Start indices of the floor(region / M) non-overlapping windows, from the
// first sample of the region. Windows never cross the stimulus onset. Throws
// Error(kRegionTooShort) when no full window fits.
std::vector<Index> SegmentStarts(Index record_len, Index stimulus_index,
                                 const SegmentationPlan& plan);

std::vector<Vector> Segment(const FilteredSignal& record, Index stimulus_index,
                            const SegmentationPlan& plan);

// E_i = sum_j W_ij^2 for each final-level node, natural order.
Vector NodeEnergies(const Eigen::Ref<const Vector>& segment,
                    const WaveletBasis& basis, int level);

struct EnergyFeatures {
  std::string experiment_id;
  Matrix segment_energies;  // segments x 2^level
  std::string basis_name;
  Index segment_len = 0;
  int level = 0;
};

EnergyFeatures ComputeFeatures(std::string experiment_id,
                               const std::vector<Vector>& segments,
                               const WaveletBasis& basis, int level);

// Stacks segments from several features of one experiment (for example
// the channels of one session). Configurations must agree.
EnergyFeatures MergeFeatures(std::string experiment_id,
                             const std::vector<EnergyFeatures>& parts);

struct CentroidSet {
  Matrix centroids;      // D x Q
  Vector mean_centroid;  // Q
  std::vector<std::string> experiment_ids;
};

// Centroid of experiment d is the mean of its segment energy rows.
// Throws Error(kEmptyExperiment) for an experiment without segments or an
// empty list, Error(kMismatchedConfiguration) when basis, level or segment
// length differ.
CentroidSet Centroids(const std::vector<EnergyFeatures>& features);

// J = sqrt(sum_{i,d} (C_i^d - mu_i)^2).
double ObjectiveJ(const CentroidSet& cset);

// CSV: experiment_id,segment_index,E_1..E_Q with 17 significant digits.
void WriteFeaturesCsv(std::ostream& out, const std::vector<EnergyFeatures>& features);
// Inverse of WriteFeaturesCsv. Basis and segment length are not carried
// by the CSV and are left empty; the level is inferred from Q. Throws
// Error(kMalformedRow) naming the line.
std::vector<EnergyFeatures> ReadFeaturesCsv(std::istream& in);

// CSV: experiment_id,C_1..C_Q, followed by a row "mean" holding mu.
void WriteCentroidsCsv(std::ostream& out, const CentroidSet& cset);

}  // namespace driftfilt

#endif  // DRIFTFILT_ENERGY_FEATURES_H_
