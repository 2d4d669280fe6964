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

#include "driftfilt/recording.h"

#include <cmath>

namespace driftfilt {

void Recording::Validate() const {
  auto fail = [&](const std::string& what) {
    throw Error(ErrorCode::kValidation, "recording " + Key() + ": " + what);
  };
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    fail("sample rate must be positive and finite");
  }
  if (stimulus_index <= 0 || stimulus_index >= samples.size()) {
    fail("stimulus index " + std::to_string(stimulus_index) +
         " must lie strictly inside the record of " +
         std::to_string(samples.size()) + " samples");
  }
  for (Index i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i])) fail("non-finite sample at index " + std::to_string(i));
  }
}

}  // namespace driftfilt
