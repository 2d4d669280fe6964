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

#ifndef DRIFTFILT_IIR_DESIGN_H_
#define DRIFTFILT_IIR_DESIGN_H_

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "driftfilt/common.h"

namespace driftfilt {

enum class FilterFamily { kButterworth, kChebyshevI, kChebyshevII, kElliptic };

inline constexpr std::array<FilterFamily, 4> kAllFamilies = {
    FilterFamily::kButterworth, FilterFamily::kChebyshevI,
    FilterFamily::kChebyshevII, FilterFamily::kElliptic};

// "butterworth", "chebyshev1", "chebyshev2", "elliptic".
std::string_view FamilyName(FilterFamily family);
// Accepts the canonical names plus a few common spellings ("cheby1",
// "chebyshev_ii", "ellip", ...). Throws Error(kInvalidArgument).
FilterFamily ParseFamily(std::string_view name);

bool UsesPassbandRipple(FilterFamily family);
bool UsesStopbandAttenuation(FilterFamily family);

inline constexpr int kDefaultMaxOrder = 12;

// High-pass design parameters. cutoff_hz is the passband edge for
// Butterworth, Chebyshev I and elliptic designs and the stopband edge for
// Chebyshev II.
struct FilterSpec {
  FilterFamily family = FilterFamily::kButterworth;
  double cutoff_hz = 1.0;
  int order = 4;
  std::optional<double> passband_ripple_db;
  std::optional<double> stopband_atten_db;
  double sample_rate_hz = 10.0;

  // Throws Error(kOutOfRange / kInvalidArgument) on an invalid spec.
  void Validate(int max_order = kDefaultMaxOrder) const;
};

// Ripple factor of the closed-form magnitude: sqrt(10^(Rp/10) - 1) for the
// passband-ripple families, 1 / sqrt(10^(Rs/10) - 1) for Chebyshev II and 1
// for Butterworth.
double RippleEpsilon(const FilterSpec& spec);

struct AnalogPrototype {
  std::vector<Complex> zeros;  // rad/s
  std::vector<Complex> poles;  // rad/s
  double gain = 1.0;

  Complex Response(Complex s) const;
  double MagnitudeSquared(double omega) const {
    return std::norm(Response(Complex(0.0, omega)));
  }
};

// Chebyshev polynomial of the first kind, T_n(x).
double ChebyshevPoly(int n, double x);

// Normalized elliptic rational function R_n(x) for the given selectivity
// (stopband edge over passband edge, > 1). R_n(1) = 1 and |R_n| <= 1 on
// [-1, 1].
double EllipticRational(int n, double selectivity, double x);

// Selectivity implied by the degree equation for an elliptic design with
// the given order and ripples.
double EllipticSelectivity(int order, double passband_ripple_db,
                           double stopband_atten_db);

// Closed-form |H(j omega)|^2 of the normalized low-pass prototype (edge at
// 1 rad/s) for the spec's family, order and ripples.
double PrototypeMagnitudeSquared(const FilterSpec& spec, double omega);

// Normalized low-pass prototype of the spec's family.
AnalogPrototype DesignAnalogLowpass(const FilterSpec& spec,
                                    int max_order = kDefaultMaxOrder);

// s -> cutoff / s. Zeros at infinity of the low-pass become zeros at s = 0.
AnalogPrototype LowpassToHighpass(const AnalogPrototype& lowpass,
                                  double cutoff_rad_s);

struct SecondOrderSection {
  double b0 = 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;

  // Section response at z (not z^-1).
  Complex Response(Complex z) const;
  // Roots of z^2 + a1 z + a2; a first-order section reports its pole and 0.
  std::array<Complex, 2> Poles() const;
  bool IsFirstOrder() const { return a2 == 0.0 && b2 == 0.0; }

  friend bool operator==(const SecondOrderSection&,
                         const SecondOrderSection&) = default;
};

// Cascade of second-order sections, a0 normalized to 1: y = gain * prod(H_k).
struct DigitalFilter {
  std::vector<SecondOrderSection> sections;
  double gain = 1.0;
  double sample_rate_hz = 10.0;
  // Design parameters, when the filter came from DesignHighpass.
  std::optional<FilterSpec> spec;

  int Order() const;
  double MaxPoleRadius() const;

  static DigitalFilter Identity(double sample_rate_hz);
};

// Bilinear map s = c (1 - z^-1) / (1 + z^-1). With prewarp_hz set,
// c = 2 pi f_p / tan(pi f_p / f_s), so the digital response at f_p equals the
// analog response at 2 pi f_p; otherwise c = 2 f_s. Poles and zeros are
// grouped into sections with conjugate pairs kept together.
DigitalFilter BilinearDiscretize(const AnalogPrototype& analog,
                                 double sample_rate_hz,
                                 std::optional<double> prewarp_hz);

// Full chain: prototype, high-pass transform at 2 pi cutoff_hz, bilinear
// map prewarped at cutoff_hz.
DigitalFilter DesignHighpass(const FilterSpec& spec,
                             int max_order = kDefaultMaxOrder);

// H(e^{j 2 pi f / f_s}) for each frequency in [0, f_s / 2].
std::vector<Complex> FrequencyResponse(const DigitalFilter& filter,
                                       std::span<const double> freqs_hz);
Complex FrequencyResponseAt(const DigitalFilter& filter, double freq_hz);

// Series connection of two filters with the same sample rate.
DigitalFilter Cascade(const DigitalFilter& first, const DigitalFilter& second);

}  // namespace driftfilt

#endif  // DRIFTFILT_IIR_DESIGN_H_
