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

#include "driftfilt/zero_phase.h"

#include <string>

namespace driftfilt {
namespace {

// One causal pass started from `zi` scaled by the first sample.
Vector StartedPass(const DigitalFilter& filter, const SectionState& zi,
                   const Vector& x) {
  SectionState state = zi * x[0];
  return SosFilter(filter, x, state);
}

}  // namespace

SectionState InitialConditions(const DigitalFilter& filter) {
  const Index n = static_cast<Index>(filter.sections.size());
  SectionState zi(n, 2);
  double input_level = filter.gain;
  for (Index k = 0; k < n; ++k) {
    const SecondOrderSection& s = filter.sections[static_cast<std::size_t>(k)];
    const double dc = (s.b0 + s.b1 + s.b2) / (1.0 + s.a1 + s.a2);
    // Steady state of y = b0 x + s1, s1' = b1 x - a1 y + s2, s2' = b2 x - a2 y.
    const double s2 = s.b2 - s.a2 * dc;
    const double s1 = s.b1 - s.a1 * dc + s2;
    zi(k, 0) = s1 * input_level;
    zi(k, 1) = s2 * input_level;
    input_level *= dc;
  }
  return zi;
}

Vector SosFilter(const DigitalFilter& filter, const Eigen::Ref<const Vector>& x,
                 SectionState& state) {
  const Index sections = static_cast<Index>(filter.sections.size());
  if (state.rows() != sections) {
    throw Error(ErrorCode::kShapeMismatch, "filter state has " +
                                               std::to_string(state.rows()) +
                                               " rows, expected " +
                                               std::to_string(sections));
  }
  Vector y(x.size());
  for (Index n = 0; n < x.size(); ++n) {
    double v = filter.gain * x[n];
    for (Index k = 0; k < sections; ++k) {
      const SecondOrderSection& s = filter.sections[static_cast<std::size_t>(k)];
      const double out = s.b0 * v + state(k, 0);
      state(k, 0) = s.b1 * v - s.a1 * out + state(k, 1);
      state(k, 1) = s.b2 * v - s.a2 * out;
      v = out;
    }
    y[n] = v;
  }
  return y;
}

Index FiltFiltPadLength(const DigitalFilter& filter) {
  return 3 * static_cast<Index>(filter.Order());
}

Index FiltFiltMinimumLength(const DigitalFilter& filter) {
  return 3 * (2 * static_cast<Index>(filter.sections.size()) + 1) + 1;
}

FilteredSignal FiltFilt(const DigitalFilter& filter,
                        const Eigen::Ref<const Vector>& signal) {
  const Index n = signal.size();
  if (n < FiltFiltMinimumLength(filter)) {
    throw Error(ErrorCode::kSignalTooShort,
                "signal of " + std::to_string(n) + " samples is too short; need at least " +
                    std::to_string(FiltFiltMinimumLength(filter)));
  }
  for (Index i = 0; i < n; ++i) {
    if (!std::isfinite(signal[i])) {
      throw Error(ErrorCode::kNonFinite,
                  "non-finite sample at index " + std::to_string(i));
    }
  }

  const Index pad = FiltFiltPadLength(filter);
  Vector extended(n + 2 * pad);
  for (Index k = 0; k < pad; ++k) {
    extended[pad - 1 - k] = 2.0 * signal[0] - signal[k + 1];
    extended[pad + n + k] = 2.0 * signal[n - 1] - signal[n - 2 - k];
  }
  extended.segment(pad, n) = signal;

  const SectionState zi = InitialConditions(filter);

  Vector forward_first = StartedPass(filter, zi, extended);
  forward_first.reverseInPlace();
  forward_first = StartedPass(filter, zi, forward_first);
  forward_first.reverseInPlace();

  Vector backward_first = extended.reverse();
  backward_first = StartedPass(filter, zi, backward_first);
  backward_first.reverseInPlace();
  backward_first = StartedPass(filter, zi, backward_first);

  FilteredSignal out;
  out.samples = 0.5 * (forward_first.segment(pad, n) + backward_first.segment(pad, n));
  out.sample_rate_hz = filter.sample_rate_hz;
  out.source_filter = filter;
  return out;
}

}  // namespace driftfilt
