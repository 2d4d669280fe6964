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

#include "driftfilt/pipeline.h"

#include <map>
#include <string>

#include "driftfilt/zero_phase.h"

namespace driftfilt {
namespace {

const std::string& GroupKey(const Recording& r, Grouping grouping, std::string& scratch) {
  if (grouping == Grouping::kPerExperiment) return r.experiment_id;
  scratch = r.Key();
  return scratch;
}

void CheckProblem(const ObjectiveProblem& problem) {
  if (problem.dataset == nullptr || problem.basis == nullptr) {
    throw Error(ErrorCode::kInvalidArgument, "objective problem lacks dataset or basis");
  }
}

}  // namespace

std::string_view GroupingName(Grouping grouping) {
  return grouping == Grouping::kPerRecording ? "recording" : "experiment";
}

Grouping ParseGrouping(std::string_view name) {
  if (name == "recording") return Grouping::kPerRecording;
  if (name == "experiment") return Grouping::kPerExperiment;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown grouping '" + std::string(name) +
                  "'; expected recording or experiment");
}

int ObjectiveProblem::ExperimentCount() const {
  CheckProblem(*this);
  std::map<std::string, int> seen;
  std::string scratch;
  for (const Recording& r : *dataset) seen.emplace(GroupKey(r, grouping, scratch), 0);
  return static_cast<int>(seen.size());
}

std::vector<EnergyFeatures> ExtractFeatures(const DigitalFilter& filter,
                                            const ObjectiveProblem& problem) {
  CheckProblem(problem);
  std::vector<std::string> order;
  std::map<std::string, std::vector<EnergyFeatures>> parts;
  std::string scratch;
  for (const Recording& r : *problem.dataset) {
    const FilteredSignal filtered = FiltFilt(filter, r.samples);
    const std::vector<Vector> segments = Segment(filtered, r.stimulus_index, problem.plan);
    const std::string& key = GroupKey(r, problem.grouping, scratch);
    auto [it, inserted] = parts.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(ComputeFeatures(key, segments, *problem.basis, problem.level));
  }
  std::vector<EnergyFeatures> features;
  features.reserve(order.size());
  for (const std::string& key : order) {
    std::vector<EnergyFeatures>& group = parts[key];
    features.push_back(group.size() == 1 ? std::move(group.front())
                                         : MergeFeatures(key, group));
  }
  return features;
}

double EvaluateFilter(const DigitalFilter& filter, const ObjectiveProblem& problem) {
  return ObjectiveJ(Centroids(ExtractFeatures(filter, problem)));
}

}  // namespace driftfilt
