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

#include "driftfilt/iir_design.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "driftfilt/elliptic_functions.h"

namespace driftfilt {
namespace {

using elliptic::Modulus;

constexpr double kPi = std::numbers::pi;

// Imaginary parts below this (relative) are treated as exactly real when
// grouping roots into sections.
constexpr double kRealTolerance = 1e-10;

double DbToPowerExcess(double db) { return std::expm1(db * std::log(10.0) / 10.0); }

Modulus EllipticSelectivityModulus(int order, double rp_db, double rs_db) {
  const double ep = std::sqrt(DbToPowerExcess(rp_db));
  const double es = std::sqrt(DbToPowerExcess(rs_db));
  return elliptic::SolveDegreeForSelectivity(order, Modulus::FromK(ep / es));
}

double EllipticRationalForModulus(int n, const Modulus& k, double x) {
  double value = (n % 2 == 1) ? x : 1.0;
  double norm = 1.0;
  const double k2 = k.k * k.k;
  for (int i = 1; i <= n / 2; ++i) {
    const double zeta = elliptic::Cd((2.0 * i - 1.0) / n, k).real();
    const double zeta2 = zeta * zeta;
    value *= (x * x - zeta2) / (1.0 - k2 * zeta2 * x * x);
    norm *= (1.0 - zeta2) / (1.0 - k2 * zeta2);
  }
  return value / norm;
}

Complex ProductMinus(const std::vector<Complex>& roots) {
  Complex product = 1.0;
  for (const Complex& r : roots) product *= -r;
  return product;
}

// Roots with a tiny imaginary part become exactly real; conjugate pairs are
// returned once, by their upper-half-plane member.
void SplitRoots(const std::vector<Complex>& roots, std::vector<double>& real,
                std::vector<Complex>& upper) {
  for (const Complex& r : roots) {
    const double scale = std::max(1.0, std::abs(r));
    if (std::abs(r.imag()) <= kRealTolerance * scale) {
      real.push_back(r.real());
    } else if (r.imag() > 0.0) {
      upper.push_back(r);
    }
  }
}

template <typename T>
T TakeAt(std::vector<T>& values, std::size_t index) {
  T value = values[index];
  values.erase(values.begin() + static_cast<std::ptrdiff_t>(index));
  return value;
}

template <typename T>
std::size_t NearestIndex(const std::vector<T>& values, Complex target) {
  std::size_t best = 0;
  double best_distance = std::abs(Complex(values[0]) - target);
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double d = std::abs(Complex(values[i]) - target);
    if (d < best_distance) {
      best = i;
      best_distance = d;
    }
  }
  return best;
}

SecondOrderSection SectionFromRoots(std::span<const Complex> zeros,
                                    std::span<const Complex> poles) {
  SecondOrderSection s;
  if (zeros.size() == 1) {
    s.b1 = -zeros[0].real();
  } else if (zeros.size() == 2) {
    s.b1 = -(zeros[0] + zeros[1]).real();
    s.b2 = (zeros[0] * zeros[1]).real();
  }
  if (poles.size() == 1) {
    s.a1 = -poles[0].real();
  } else if (poles.size() == 2) {
    s.a1 = -(poles[0] + poles[1]).real();
    s.a2 = (poles[0] * poles[1]).real();
  }
  return s;
}

// Takes two zeros for a two-pole section: the conjugate pair or the two real
// zeros nearest to `target`, whichever offers the closer member.
std::vector<Complex> TakeZeroPair(std::vector<double>& real_zeros,
                                  std::vector<Complex>& upper_zeros,
                                  Complex target) {
  double real_distance = std::numeric_limits<double>::infinity();
  double complex_distance = std::numeric_limits<double>::infinity();
  if (real_zeros.size() >= 2) {
    real_distance =
        std::abs(real_zeros[NearestIndex(real_zeros, target)] - target);
  }
  if (!upper_zeros.empty()) {
    const Complex z = upper_zeros[NearestIndex(upper_zeros, target)];
    complex_distance =
        std::min(std::abs(z - target), std::abs(std::conj(z) - target));
  }
  if (complex_distance <= real_distance && !upper_zeros.empty()) {
    const Complex z = TakeAt(upper_zeros, NearestIndex(upper_zeros, target));
    return {z, std::conj(z)};
  }
  if (real_zeros.size() >= 2) {
    const double z1 = TakeAt(real_zeros, NearestIndex(real_zeros, target));
    const double z2 = TakeAt(real_zeros, NearestIndex(real_zeros, target));
    return {z1, z2};
  }
  if (real_zeros.size() == 1) return {TakeAt(real_zeros, 0)};
  return {};
}

// Groups digital roots into sections: an odd real pole takes the nearest real
// zero, then pole pairs are matched to their nearest zeros starting from the
// pole closest to the unit circle. Sections end up ordered by increasing pole
// radius.
std::vector<SecondOrderSection> GroupSections(const std::vector<Complex>& zeros,
                                              const std::vector<Complex>& poles) {
  std::vector<double> real_poles, real_zeros;
  std::vector<Complex> upper_poles, upper_zeros;
  SplitRoots(poles, real_poles, upper_poles);
  SplitRoots(zeros, real_zeros, upper_zeros);

  struct Group {
    double radius;
    SecondOrderSection section;
  };
  std::vector<Group> groups;

  if (real_poles.size() % 2 == 1) {
    const auto smallest = std::min_element(
        real_poles.begin(), real_poles.end(),
        [](double a, double b) { return std::abs(a) < std::abs(b); });
    const double p = *smallest;
    real_poles.erase(smallest);
    std::vector<Complex> z;
    if (!real_zeros.empty()) z.push_back(TakeAt(real_zeros, NearestIndex(real_zeros, p)));
    const Complex pole[1] = {p};
    groups.push_back({std::abs(p), SectionFromRoots(z, pole)});
  }

  while (!real_poles.empty() || !upper_poles.empty()) {
    // Largest-radius pole unit first.
    double best_real = -1.0, best_complex = -1.0;
    std::size_t real_index = 0, complex_index = 0;
    for (std::size_t i = 0; i < real_poles.size(); ++i) {
      if (std::abs(real_poles[i]) > best_real) {
        best_real = std::abs(real_poles[i]);
        real_index = i;
      }
    }
    for (std::size_t i = 0; i < upper_poles.size(); ++i) {
      if (std::abs(upper_poles[i]) > best_complex) {
        best_complex = std::abs(upper_poles[i]);
        complex_index = i;
      }
    }
    std::vector<Complex> section_poles;
    Complex target;
    if (best_complex >= best_real) {
      target = TakeAt(upper_poles, complex_index);
      section_poles = {target, std::conj(target)};
    } else {
      const double p1 = TakeAt(real_poles, real_index);
      const double p2 = TakeAt(real_poles, NearestIndex(real_poles, p1));
      target = p1;
      section_poles = {p1, p2};
    }
    const std::vector<Complex> section_zeros =
        TakeZeroPair(real_zeros, upper_zeros, target);
    groups.push_back({std::abs(target), SectionFromRoots(section_zeros, section_poles)});
  }

  std::stable_sort(groups.begin(), groups.end(),
                   [](const Group& a, const Group& b) { return a.radius < b.radius; });
  std::vector<SecondOrderSection> sections;
  sections.reserve(groups.size());
  for (const Group& g : groups) sections.push_back(g.section);
  return sections;
}

std::string Lowercase(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '-' || c == ' ') c = '_';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string_view FamilyName(FilterFamily family) {
  switch (family) {
    case FilterFamily::kButterworth: return "butterworth";
    case FilterFamily::kChebyshevI: return "chebyshev1";
    case FilterFamily::kChebyshevII: return "chebyshev2";
    case FilterFamily::kElliptic: return "elliptic";
  }
  return "unknown";
}

FilterFamily ParseFamily(std::string_view name) {
  const std::string key = Lowercase(name);
  if (key == "butterworth" || key == "butter") return FilterFamily::kButterworth;
  if (key == "chebyshev1" || key == "cheby1" || key == "chebyshev_i" ||
      key == "chebyshevi") {
    return FilterFamily::kChebyshevI;
  }
  if (key == "chebyshev2" || key == "cheby2" || key == "chebyshev_ii" ||
      key == "chebyshevii") {
    return FilterFamily::kChebyshevII;
  }
  if (key == "elliptic" || key == "ellip") return FilterFamily::kElliptic;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown filter family '" + std::string(name) +
                  "' (expected butterworth, chebyshev1, chebyshev2, elliptic)");
}

bool UsesPassbandRipple(FilterFamily family) {
  return family == FilterFamily::kChebyshevI || family == FilterFamily::kElliptic;
}

bool UsesStopbandAttenuation(FilterFamily family) {
  return family == FilterFamily::kChebyshevII || family == FilterFamily::kElliptic;
}

void FilterSpec::Validate(int max_order) const {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw Error(ErrorCode::kOutOfRange, "sample rate must be positive, got " +
                                            FormatDouble(sample_rate_hz) + " Hz");
  }
  if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate_hz / 2.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "cutoff " + FormatDouble(cutoff_hz) +
                    " Hz must lie strictly between 0 and Nyquist (" +
                    FormatDouble(sample_rate_hz / 2.0) + " Hz)");
  }
  if (order < 1 || order > max_order) {
    throw Error(ErrorCode::kOutOfRange, "order " + std::to_string(order) +
                                            " outside [1, " +
                                            std::to_string(max_order) + "]");
  }
  if (UsesPassbandRipple(family)) {
    if (!passband_ripple_db) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(FamilyName(family)) + " design needs a passband ripple (rp)");
    }
    if (!(*passband_ripple_db > 0.0) || !std::isfinite(*passband_ripple_db)) {
      throw Error(ErrorCode::kOutOfRange, "passband ripple must be positive dB");
    }
  }
  if (UsesStopbandAttenuation(family)) {
    if (!stopband_atten_db) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(FamilyName(family)) +
                      " design needs a stopband attenuation (rs)");
    }
    if (!(*stopband_atten_db > 0.0) || !std::isfinite(*stopband_atten_db)) {
      throw Error(ErrorCode::kOutOfRange, "stopband attenuation must be positive dB");
    }
  }
  if (family == FilterFamily::kElliptic &&
      !(*stopband_atten_db > *passband_ripple_db)) {
    throw Error(ErrorCode::kInvalidArgument,
                "elliptic design needs rs > rp (degenerate selectivity)");
  }
}

double RippleEpsilon(const FilterSpec& spec) {
  switch (spec.family) {
    case FilterFamily::kButterworth:
      return 1.0;
    case FilterFamily::kChebyshevI:
    case FilterFamily::kElliptic:
      return std::sqrt(DbToPowerExcess(spec.passband_ripple_db.value()));
    case FilterFamily::kChebyshevII:
      return 1.0 / std::sqrt(DbToPowerExcess(spec.stopband_atten_db.value()));
  }
  return 1.0;
}

Complex AnalogPrototype::Response(Complex s) const {
  Complex h = gain;
  for (const Complex& z : zeros) h *= s - z;
  for (const Complex& p : poles) h /= s - p;
  return h;
}

double ChebyshevPoly(int n, double x) {
  if (std::abs(x) <= 1.0) return std::cos(n * std::acos(x));
  const double magnitude = std::cosh(n * std::acosh(std::abs(x)));
  return (x < 0.0 && n % 2 == 1) ? -magnitude : magnitude;
}

double EllipticRational(int n, double selectivity, double x) {
  if (n < 1) throw Error(ErrorCode::kOutOfRange, "elliptic rational needs n >= 1");
  if (!(selectivity > 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "selectivity must exceed 1, got " +
                                            FormatDouble(selectivity));
  }
  return EllipticRationalForModulus(n, Modulus::FromK(1.0 / selectivity), x);
}

double EllipticSelectivity(int order, double passband_ripple_db,
                           double stopband_atten_db) {
  return 1.0 / EllipticSelectivityModulus(order, passband_ripple_db, stopband_atten_db).k;
}

double PrototypeMagnitudeSquared(const FilterSpec& spec, double omega) {
  const int n = spec.order;
  const double eps = RippleEpsilon(spec);
  switch (spec.family) {
    case FilterFamily::kButterworth:
      return 1.0 / (1.0 + std::pow(std::abs(omega), 2.0 * n));
    case FilterFamily::kChebyshevI: {
      const double t = ChebyshevPoly(n, omega);
      return 1.0 / (1.0 + eps * eps * t * t);
    }
    case FilterFamily::kChebyshevII: {
      if (omega == 0.0) return 1.0;
      const double t = ChebyshevPoly(n, 1.0 / omega);
      const double e2t2 = eps * eps * t * t;
      return e2t2 / (1.0 + e2t2);
    }
    case FilterFamily::kElliptic: {
      const Modulus k = EllipticSelectivityModulus(
          n, *spec.passband_ripple_db, *spec.stopband_atten_db);
      const double r = EllipticRationalForModulus(n, k, omega);
      return 1.0 / (1.0 + eps * eps * r * r);
    }
  }
  return 0.0;
}

AnalogPrototype DesignAnalogLowpass(const FilterSpec& spec, int max_order) {
  spec.Validate(max_order);
  const int n = spec.order;
  const double eps = RippleEpsilon(spec);
  AnalogPrototype proto;

  auto theta = [n](int k) { return kPi * (2.0 * k - 1.0) / (2.0 * n); };

  switch (spec.family) {
    case FilterFamily::kButterworth: {
      for (int k = 1; k <= n / 2; ++k) {
        const Complex p(-std::sin(theta(k)), std::cos(theta(k)));
        proto.poles.push_back(p);
        proto.poles.push_back(std::conj(p));
      }
      if (n % 2 == 1) proto.poles.emplace_back(-1.0, 0.0);
      proto.gain = 1.0;
      break;
    }
    case FilterFamily::kChebyshevI: {
      const double mu = std::asinh(1.0 / eps) / n;
      for (int k = 1; k <= n / 2; ++k) {
        const Complex p(-std::sinh(mu) * std::sin(theta(k)),
                        std::cosh(mu) * std::cos(theta(k)));
        proto.poles.push_back(p);
        proto.poles.push_back(std::conj(p));
      }
      if (n % 2 == 1) proto.poles.emplace_back(-std::sinh(mu), 0.0);
      proto.gain = ProductMinus(proto.poles).real();
      if (n % 2 == 0) proto.gain /= std::sqrt(1.0 + eps * eps);
      break;
    }
    case FilterFamily::kChebyshevII: {
      // Reciprocals of the Chebyshev I poles for ripple 1/eps, plus
      // imaginary-axis zeros at 1 / cos(theta_k).
      const double mu = std::asinh(1.0 / eps) / n;
      for (int k = 1; k <= n / 2; ++k) {
        const Complex q(-std::sinh(mu) * std::sin(theta(k)),
                        std::cosh(mu) * std::cos(theta(k)));
        const Complex p = 1.0 / q;
        proto.poles.push_back(p);
        proto.poles.push_back(std::conj(p));
        const Complex z(0.0, 1.0 / std::cos(theta(k)));
        proto.zeros.push_back(z);
        proto.zeros.push_back(std::conj(z));
      }
      if (n % 2 == 1) proto.poles.emplace_back(-1.0 / std::sinh(mu), 0.0);
      proto.gain = (ProductMinus(proto.poles) / ProductMinus(proto.zeros)).real();
      break;
    }
    case FilterFamily::kElliptic: {
      const double rs = *spec.stopband_atten_db;
      const double es = std::sqrt(DbToPowerExcess(rs));
      const Modulus k1 = Modulus::FromK(eps / es);
      const Modulus k = elliptic::SolveDegreeForSelectivity(n, k1);
      // v0 solves sn(j v0 N K1, k1) = j / eps_p.
      const Complex j(0.0, 1.0);
      const double v0 = (-j * elliptic::InverseSn(j / eps, k1)).real() / n;
      for (int i = 1; i <= n / 2; ++i) {
        const double u = (2.0 * i - 1.0) / n;
        const double zeta = elliptic::Cd(u, k).real();
        const Complex z = j / (k.k * zeta);
        proto.zeros.push_back(z);
        proto.zeros.push_back(std::conj(z));
        const Complex p = j * elliptic::Cd(Complex(u, -v0), k);
        proto.poles.push_back(p);
        proto.poles.push_back(std::conj(p));
      }
      if (n % 2 == 1) {
        proto.poles.emplace_back((j * elliptic::Sn(j * v0, k)).real(), 0.0);
      }
      proto.gain = (ProductMinus(proto.poles) / ProductMinus(proto.zeros)).real();
      if (n % 2 == 0) proto.gain /= std::sqrt(1.0 + eps * eps);
      break;
    }
  }
  return proto;
}

AnalogPrototype LowpassToHighpass(const AnalogPrototype& lowpass,
                                  double cutoff_rad_s) {
  if (!(cutoff_rad_s > 0.0) || !std::isfinite(cutoff_rad_s)) {
    throw Error(ErrorCode::kOutOfRange, "high-pass cutoff must be positive rad/s");
  }
  AnalogPrototype hp;
  for (const Complex& p : lowpass.poles) {
    if (p == Complex(0.0, 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "low-pass prototype has a pole at s = 0");
    }
    if (!(p.real() < 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "low-pass prototype is not stable");
    }
    hp.poles.push_back(cutoff_rad_s / p);
  }
  // A low-pass zero at the origin moves to infinity and drops out.
  Complex gain = lowpass.gain / ProductMinus(lowpass.poles);
  for (const Complex& z : lowpass.zeros) {
    if (z == Complex(0.0, 0.0)) {
      gain *= cutoff_rad_s;
      continue;
    }
    hp.zeros.push_back(cutoff_rad_s / z);
    gain *= -z;
  }
  for (std::size_t i = lowpass.zeros.size(); i < lowpass.poles.size(); ++i) {
    hp.zeros.emplace_back(0.0, 0.0);
  }
  hp.gain = gain.real();
  return hp;
}

Complex SecondOrderSection::Response(Complex z) const {
  const Complex zi = 1.0 / z;
  return (b0 + zi * (b1 + zi * b2)) / (1.0 + zi * (a1 + zi * a2));
}

std::array<Complex, 2> SecondOrderSection::Poles() const {
  if (a2 == 0.0) return {Complex(-a1, 0.0), Complex(0.0, 0.0)};
  const Complex disc = std::sqrt(Complex(a1 * a1 - 4.0 * a2, 0.0));
  // Numerically stable quadratic roots.
  const Complex q = -0.5 * (a1 + (a1 >= 0.0 ? disc : -disc));
  return {q, a2 / q};
}

int DigitalFilter::Order() const {
  int order = 0;
  for (const auto& s : sections) {
    if (s.a2 != 0.0 || s.b2 != 0.0) {
      order += 2;
    } else if (s.a1 != 0.0 || s.b1 != 0.0) {
      order += 1;
    }
  }
  return order;
}

double DigitalFilter::MaxPoleRadius() const {
  double radius = 0.0;
  for (const auto& s : sections) {
    for (const Complex& p : s.Poles()) radius = std::max(radius, std::abs(p));
  }
  return radius;
}

DigitalFilter DigitalFilter::Identity(double sample_rate_hz) {
  DigitalFilter f;
  f.sections.push_back(SecondOrderSection{});
  f.sample_rate_hz = sample_rate_hz;
  return f;
}

DigitalFilter BilinearDiscretize(const AnalogPrototype& analog,
                                 double sample_rate_hz,
                                 std::optional<double> prewarp_hz) {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw Error(ErrorCode::kOutOfRange, "sample rate must be positive");
  }
  double c = 2.0 * sample_rate_hz;
  if (prewarp_hz) {
    if (!(*prewarp_hz > 0.0 && *prewarp_hz < sample_rate_hz / 2.0)) {
      throw Error(ErrorCode::kOutOfRange, "prewarp frequency must lie in (0, Nyquist)");
    }
    c = 2.0 * kPi * *prewarp_hz / std::tan(kPi * *prewarp_hz / sample_rate_hz);
  }
  if (analog.zeros.size() > analog.poles.size()) {
    throw Error(ErrorCode::kInvalidArgument, "improper analog transfer function");
  }
  std::vector<Complex> zeros, poles;
  Complex gain = analog.gain;
  for (const Complex& p : analog.poles) {
    if (!(p.real() < 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "analog filter is not stable");
    }
    if (p == Complex(c, 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "analog pole maps to infinity");
    }
    poles.push_back((c + p) / (c - p));
    gain /= c - p;
  }
  for (const Complex& z : analog.zeros) {
    if (std::isinf(z.real()) || std::isinf(z.imag())) {
      zeros.emplace_back(-1.0, 0.0);
      continue;
    }
    zeros.push_back((c + z) / (c - z));
    gain *= c - z;
  }
  while (zeros.size() < poles.size()) zeros.emplace_back(-1.0, 0.0);

  DigitalFilter filter;
  filter.sample_rate_hz = sample_rate_hz;
  filter.gain = gain.real();
  filter.sections = GroupSections(zeros, poles);
  return filter;
}

DigitalFilter DesignHighpass(const FilterSpec& spec, int max_order) {
  const AnalogPrototype lowpass = DesignAnalogLowpass(spec, max_order);
  const AnalogPrototype highpass =
      LowpassToHighpass(lowpass, 2.0 * kPi * spec.cutoff_hz);
  DigitalFilter filter =
      BilinearDiscretize(highpass, spec.sample_rate_hz, spec.cutoff_hz);
  filter.spec = spec;
  return filter;
}

Complex FrequencyResponseAt(const DigitalFilter& filter, double freq_hz) {
  const double nyquist = filter.sample_rate_hz / 2.0;
  if (!(freq_hz >= 0.0 && freq_hz <= nyquist * (1.0 + 1e-12))) {
    throw Error(ErrorCode::kOutOfRange,
                "frequency " + FormatDouble(freq_hz) + " Hz outside [0, Nyquist = " +
                    FormatDouble(nyquist) + " Hz]");
  }
  const Complex z = std::polar(1.0, 2.0 * kPi * freq_hz / filter.sample_rate_hz);
  Complex h = filter.gain;
  for (const auto& s : filter.sections) h *= s.Response(z);
  return h;
}

std::vector<Complex> FrequencyResponse(const DigitalFilter& filter,
                                       std::span<const double> freqs_hz) {
  std::vector<Complex> out;
  out.reserve(freqs_hz.size());
  for (double f : freqs_hz) out.push_back(FrequencyResponseAt(filter, f));
  return out;
}

DigitalFilter Cascade(const DigitalFilter& first, const DigitalFilter& second) {
  if (first.sample_rate_hz != second.sample_rate_hz) {
    throw Error(ErrorCode::kMismatchedConfiguration,
                "cannot cascade filters with different sample rates");
  }
  DigitalFilter out;
  out.sample_rate_hz = first.sample_rate_hz;
  out.gain = first.gain * second.gain;
  out.sections = first.sections;
  out.sections.insert(out.sections.end(), second.sections.begin(),
                      second.sections.end());
  return out;
}

}  // namespace driftfilt
