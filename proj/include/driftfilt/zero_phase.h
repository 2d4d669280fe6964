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

#ifndef DRIFTFILT_ZERO_PHASE_H_
#define DRIFTFILT_ZERO_PHASE_H_

#include "driftfilt/common.h"
#include "driftfilt/iir_design.h"

namespace driftfilt {

// Per-section transposed direct-form II state, one row per section.
using SectionState = Eigen::Matrix<double, Eigen::Dynamic, 2>;

struct FilteredSignal {
  Vector samples;
  double sample_rate_hz = 0.0;
  DigitalFilter source_filter;
};

// State that makes a unit constant input produce its steady-state output
// from the first sample. Scale by the first input sample before use.
SectionState InitialConditions(const DigitalFilter& filter);

// Causal pass through the cascade. `state` is read as the initial state and
// left holding the final one.
Vector SosFilter(const DigitalFilter& filter, const Eigen::Ref<const Vector>& x,
                 SectionState& state);

// Odd-reflection pad length used by FiltFilt: three times the filter order.
Index FiltFiltPadLength(const DigitalFilter& filter);
// Shortest accepted signal: 3 (2 sections + 1) + 1 samples.
Index FiltFiltMinimumLength(const DigitalFilter& filter);

// Zero-phase filtering. The record is extended by odd reflection, run
// through the cascade forward-then-backward and backward-then-forward (each
// pass started from the steady state of its first sample), the two results
// averaged and the padding trimmed. The net response is |H|^2 with zero
// phase, and reversing the input reverses the output exactly.
//
// Throws Error(kSignalTooShort) or Error(kNonFinite).
FilteredSignal FiltFilt(const DigitalFilter& filter,
                        const Eigen::Ref<const Vector>& signal);

}  // namespace driftfilt

#endif  // DRIFTFILT_ZERO_PHASE_H_
