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

#ifndef DRIFTFILT_PIPELINE_H_
#define DRIFTFILT_PIPELINE_H_

#include <string_view>
#include <vector>

#include "driftfilt/energy_features.h"
#include "driftfilt/iir_design.h"
#include "driftfilt/recording.h"
#include "driftfilt/wavelet_packet.h"

namespace driftfilt {

// How recordings map to the experiments d of the objective.
enum class Grouping {
  kPerRecording,   // every recording (channel of a session) is its own d
  kPerExperiment,  // recordings sharing experiment_id pool their segments
};

std::string_view GroupingName(Grouping grouping);  // "recording" / "experiment"
Grouping ParseGrouping(std::string_view name);

// Everything the objective needs besides the filter. The dataset and basis
// are borrowed and must outlive the problem.
struct ObjectiveProblem {
  const std::vector<Recording>* dataset = nullptr;
  SegmentationPlan plan;
  const WaveletBasis* basis = nullptr;
  int level = 2;
  Grouping grouping = Grouping::kPerRecording;

  // Number of experiments after grouping.
  int ExperimentCount() const;
};

// Filter every recording with FiltFilt, segment the plan's region and
// compute node energies, grouped per `problem.grouping` in first-seen order.
std::vector<EnergyFeatures> ExtractFeatures(const DigitalFilter& filter,
                                            const ObjectiveProblem& problem);

// ObjectiveJ(Centroids(ExtractFeatures(filter, problem))).
double EvaluateFilter(const DigitalFilter& filter, const ObjectiveProblem& problem);

}  // namespace driftfilt

#endif  // DRIFTFILT_PIPELINE_H_
