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

#include "driftfilt/energy_features.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>

namespace driftfilt {
namespace {

void WriteEnergyHeader(std::ostream& out, std::string_view lead, Index q,
                       std::string_view prefix) {
  out << lead;
  for (Index i = 1; i <= q; ++i) out << ',' << prefix << i;
  out << '\n';
}

}  // namespace

std::string_view RegionName(Region region) {
  return region == Region::kPreStimulus ? "pre_stimulus" : "post_stimulus";
}

Region ParseRegion(std::string_view name) {
  if (name == "pre_stimulus" || name == "pre") return Region::kPreStimulus;
  if (name == "post_stimulus" || name == "post") return Region::kPostStimulus;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown region '" + std::string(name) +
                  "'; expected pre_stimulus or post_stimulus");
}

void SegmentationPlan::Validate(const WaveletBasis& basis, int level) const {
  const bool power_of_two =
      segment_len > 0 && std::has_single_bit(static_cast<std::uint64_t>(segment_len));
  if (!power_of_two || segment_len < 4 * basis.Length() ||
      level < 1 || level > 30 || segment_len < (Index{1} << level)) {
    throw Error(ErrorCode::kInvalidArgument,
                "segment length " + std::to_string(segment_len) +
                    " must be a power of two of at least " +
                    std::to_string(std::max<Index>(4 * basis.Length(),
                                                   Index{1} << std::clamp(level, 0, 30))) +
                    " for " + basis.Name() + " at level " + std::to_string(level));
  }
}

std::vector<Index> SegmentStarts(Index record_len, Index stimulus_index,
                                 const SegmentationPlan& plan) {
  if (plan.segment_len <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "segment length must be positive");
  }
  if (stimulus_index < 0 || stimulus_index > record_len) {
    throw Error(ErrorCode::kOutOfRange,
                "stimulus index " + std::to_string(stimulus_index) +
                    " outside record of " + std::to_string(record_len) + " samples");
  }
  const Index begin = plan.region == Region::kPreStimulus ? 0 : stimulus_index;
  const Index length = plan.region == Region::kPreStimulus
                           ? stimulus_index
                           : record_len - stimulus_index;
  const Index count = length / plan.segment_len;
  if (count == 0) {
    throw Error(ErrorCode::kRegionTooShort,
                std::string(RegionName(plan.region)) + " region has " +
                    std::to_string(length) + " samples; at least " +
                    std::to_string(plan.segment_len) + " required");
  }
  std::vector<Index> starts(static_cast<std::size_t>(count));
  for (Index m = 0; m < count; ++m) starts[m] = begin + m * plan.segment_len;
  return starts;
}

std::vector<Vector> Segment(const FilteredSignal& record, Index stimulus_index,
                            const SegmentationPlan& plan) {
  std::vector<Vector> segments;
  for (Index start : SegmentStarts(record.samples.size(), stimulus_index, plan)) {
    segments.emplace_back(record.samples.segment(start, plan.segment_len));
  }
  return segments;
}

Vector NodeEnergies(const Eigen::Ref<const Vector>& segment,
                    const WaveletBasis& basis, int level) {
  const WptNodeSet set = WptDecompose(segment, basis, level);
  Vector energies(set.NodeCount());
  for (Index i = 0; i < set.NodeCount(); ++i) energies[i] = set.nodes[i].squaredNorm();
  return energies;
}

EnergyFeatures ComputeFeatures(std::string experiment_id,
                               const std::vector<Vector>& segments,
                               const WaveletBasis& basis, int level) {
  EnergyFeatures features;
  features.experiment_id = std::move(experiment_id);
  features.basis_name = basis.Name();
  features.level = level;
  features.segment_len = segments.empty() ? 0 : segments.front().size();
  const Index q = level >= 1 && level <= 30 ? Index{1} << level : 0;
  features.segment_energies.resize(static_cast<Index>(segments.size()), q);
  for (std::size_t m = 0; m < segments.size(); ++m) {
    if (segments[m].size() != features.segment_len) {
      throw Error(ErrorCode::kMismatchedConfiguration,
                  "segments of experiment " + features.experiment_id +
                      " differ in length");
    }
    features.segment_energies.row(static_cast<Index>(m)) =
        NodeEnergies(segments[m], basis, level).transpose();
  }
  return features;
}

EnergyFeatures MergeFeatures(std::string experiment_id,
                             const std::vector<EnergyFeatures>& parts) {
  if (parts.empty()) {
    throw Error(ErrorCode::kEmptyExperiment,
                "experiment " + experiment_id + " has no feature sets");
  }
  EnergyFeatures merged;
  merged.experiment_id = std::move(experiment_id);
  merged.basis_name = parts.front().basis_name;
  merged.segment_len = parts.front().segment_len;
  merged.level = parts.front().level;
  Index rows = 0;
  for (const EnergyFeatures& p : parts) {
    if (p.basis_name != merged.basis_name || p.segment_len != merged.segment_len ||
        p.level != merged.level ||
        p.segment_energies.cols() != parts.front().segment_energies.cols()) {
      throw Error(ErrorCode::kMismatchedConfiguration,
                  "cannot merge features with different configurations into " +
                      merged.experiment_id);
    }
    rows += p.segment_energies.rows();
  }
  merged.segment_energies.resize(rows, parts.front().segment_energies.cols());
  Index at = 0;
  for (const EnergyFeatures& p : parts) {
    merged.segment_energies.middleRows(at, p.segment_energies.rows()) = p.segment_energies;
    at += p.segment_energies.rows();
  }
  return merged;
}

CentroidSet Centroids(const std::vector<EnergyFeatures>& features) {
  if (features.empty()) {
    throw Error(ErrorCode::kEmptyExperiment, "no experiments supplied");
  }
  const EnergyFeatures& first = features.front();
  const Index q = first.segment_energies.cols();
  CentroidSet cset;
  cset.centroids.resize(static_cast<Index>(features.size()), q);
  for (std::size_t d = 0; d < features.size(); ++d) {
    const EnergyFeatures& f = features[d];
    if (f.basis_name != first.basis_name || f.level != first.level ||
        f.segment_len != first.segment_len || f.segment_energies.cols() != q) {
      throw Error(ErrorCode::kMismatchedConfiguration,
                  "experiment " + f.experiment_id + " (" + f.basis_name + ", level " +
                      std::to_string(f.level) + ", M " + std::to_string(f.segment_len) +
                      ") does not match " + first.experiment_id + " (" +
                      first.basis_name + ", level " + std::to_string(first.level) +
                      ", M " + std::to_string(first.segment_len) + ")");
    }
    if (f.segment_energies.rows() == 0) {
      throw Error(ErrorCode::kEmptyExperiment,
                  "experiment " + f.experiment_id + " has no segments");
    }
    cset.centroids.row(static_cast<Index>(d)) = f.segment_energies.colwise().mean();
    cset.experiment_ids.push_back(f.experiment_id);
  }
  cset.mean_centroid = cset.centroids.colwise().mean().transpose();
  return cset;
}

double ObjectiveJ(const CentroidSet& cset) {
  return std::sqrt(
      (cset.centroids.rowwise() - cset.mean_centroid.transpose()).squaredNorm());
}

void WriteFeaturesCsv(std::ostream& out, const std::vector<EnergyFeatures>& features) {
  const Index q = features.empty() ? 0 : features.front().segment_energies.cols();
  WriteEnergyHeader(out, "experiment_id,segment_index", q, "E_");
  for (const EnergyFeatures& f : features) {
    for (Index m = 0; m < f.segment_energies.rows(); ++m) {
      out << f.experiment_id << ',' << m;
      for (Index i = 0; i < f.segment_energies.cols(); ++i) {
        out << ',' << FormatDouble(f.segment_energies(m, i));
      }
      out << '\n';
    }
  }
}

std::vector<EnergyFeatures> ReadFeaturesCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kMalformedRow, "line 1: missing header");
  }
  const std::vector<std::string> header = SplitCsvLine(line);
  if (header.size() < 2 || header[0] != "experiment_id" || header[1] != "segment_index") {
    throw Error(ErrorCode::kMalformedRow,
                "line 1: expected header experiment_id,segment_index,E_1..E_Q");
  }
  const Index q = static_cast<Index>(header.size()) - 2;
  std::vector<EnergyFeatures> out;
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<Vector>> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = SplitCsvLine(line);
    if (static_cast<Index>(fields.size()) != q + 2) {
      throw Error(ErrorCode::kMalformedRow,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(q + 2) + " fields, got " +
                      std::to_string(fields.size()));
    }
    Vector energies(q);
    for (Index i = 0; i < q; ++i) {
      double v;
      if (!ParseDouble(fields[static_cast<std::size_t>(i) + 2], v) || !std::isfinite(v) ||
          v < 0.0) {
        throw Error(ErrorCode::kMalformedRow,
                    "line " + std::to_string(line_no) + ": bad energy '" +
                        fields[static_cast<std::size_t>(i) + 2] + "'");
      }
      energies[i] = v;
    }
    auto [it, inserted] = slot.emplace(fields[0], out.size());
    if (inserted) {
      EnergyFeatures f;
      f.experiment_id = fields[0];
      f.level = q > 0 ? std::countr_zero(static_cast<std::uint64_t>(q)) : 0;
      out.push_back(std::move(f));
      rows.emplace_back();
    }
    rows[it->second].push_back(std::move(energies));
  }
  for (std::size_t d = 0; d < out.size(); ++d) {
    out[d].segment_energies.resize(static_cast<Index>(rows[d].size()), q);
    for (std::size_t m = 0; m < rows[d].size(); ++m) {
      out[d].segment_energies.row(static_cast<Index>(m)) = rows[d][m].transpose();
    }
  }
  return out;
}

void WriteCentroidsCsv(std::ostream& out, const CentroidSet& cset) {
  const Index q = cset.centroids.cols();
  WriteEnergyHeader(out, "experiment_id", q, "C_");
  for (Index d = 0; d < cset.centroids.rows(); ++d) {
    out << cset.experiment_ids[static_cast<std::size_t>(d)];
    for (Index i = 0; i < q; ++i) out << ',' << FormatDouble(cset.centroids(d, i));
    out << '\n';
  }
  out << "mean";
  for (Index i = 0; i < q; ++i) out << ',' << FormatDouble(cset.mean_centroid[i]);
  out << '\n';
}

}  // namespace driftfilt
