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

#ifndef DRIFTFILT_RECORDING_H_
#define DRIFTFILT_RECORDING_H_

#include <string>

#include "driftfilt/common.h"

namespace driftfilt {

// One uniformly sampled channel of one stimulus session.
struct Recording {
  std::string experiment_id;
  std::string channel_id;
  Vector samples;  // mV
  double sample_rate_hz = 0.0;
  Index stimulus_index = 0;
  std::string stimulus_label;

  // "experiment_id/channel_id".
  std::string Key() const { return experiment_id + "/" + channel_id; }

  // Requires 0 < stimulus_index < length, finite samples and a positive
  // rate. Throws Error(kValidation) naming the recording.
  void Validate() const;
};

}  // namespace driftfilt

#endif  // DRIFTFILT_RECORDING_H_
