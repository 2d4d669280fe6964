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

#include "driftfilt/elliptic_functions.h"

#include <cmath>
#include <numbers>
#include <string>

namespace driftfilt::elliptic {
namespace {

constexpr int kMaxLandenSteps = 40;

// Symmetric remainder of x modulo y, in [-y/2, y/2].
double SymmetricRemainder(double x, double y) {
  if (!(y > 0.0) || !std::isfinite(y)) return x;
  return x - y * std::round(x / y);
}

// cd(uK, k) on the descending sequence, ascending back to the starting
// modulus: w_{n-1} = (1 + v_n) w_n / (1 + v_n w_n^2).
Complex AscendFromCos(Complex w, const std::vector<double>& landen) {
  for (auto it = landen.rbegin(); it != landen.rend(); ++it) {
    const double v = *it;
    w = (1.0 + v) * w / (1.0 + v * w * w);
  }
  return w;
}

}  // namespace

Modulus Modulus::FromK(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw Error(ErrorCode::kOutOfRange,
                "elliptic modulus must lie in [0, 1], got " + FormatDouble(k));
  }
  return {k, std::sqrt((1.0 - k) * (1.0 + k))};
}

Modulus Modulus::FromComplement(double kprime) {
  return FromK(kprime).Complement();
}

std::vector<double> LandenSequence(const Modulus& m) {
  std::vector<double> v;
  double k = m.k;
  double kp = m.kprime;
  while (k >= kLandenTolerance) {
    if (static_cast<int>(v.size()) >= kMaxLandenSteps) {
      throw Error(ErrorCode::kNotConverged,
                  "Landen iteration did not reach tolerance for k = " +
                      FormatDouble(m.k));
    }
    if (!(kp > 0.0)) {
      throw Error(ErrorCode::kNotConverged,
                  "Landen iteration diverges for k = 1 (infinite K)");
    }
    // Near k = 1 the update is written in terms of k' so that it keeps
    // full relative precision.
    if (k < kp) {
      const double ratio = k / (1.0 + kp);
      k = ratio * ratio;
    } else {
      k = (1.0 - kp) / (1.0 + kp);
    }
    kp = 2.0 * std::sqrt(kp) / (1.0 + kp);
    v.push_back(k);
  }
  return v;
}

double EllipticK(const Modulus& m) {
  double product = std::numbers::pi / 2.0;
  for (double v : LandenSequence(m)) product *= 1.0 + v;
  return product;
}

Complex Cd(Complex u, const Modulus& m) {
  return AscendFromCos(std::cos(u * (std::numbers::pi / 2.0)),
                       LandenSequence(m));
}

Complex Sn(Complex u, const Modulus& m) {
  return AscendFromCos(std::sin(u * (std::numbers::pi / 2.0)),
                       LandenSequence(m));
}

Complex InverseCd(Complex w, const Modulus& m) {
  const std::vector<double> landen = LandenSequence(m);
  double previous = m.k;
  for (double v : landen) {
    w = w / (1.0 + std::sqrt(1.0 - w * w * (previous * previous))) *
        (2.0 / (1.0 + v));
    previous = v;
  }
  Complex u = (2.0 / std::numbers::pi) * std::acos(w);
  const double ratio = EllipticK(m.Complement()) / EllipticK(m);
  return {SymmetricRemainder(u.real(), 4.0),
          SymmetricRemainder(u.imag(), 2.0 * ratio)};
}

Complex InverseSn(Complex w, const Modulus& m) {
  return 1.0 - InverseCd(w, m);
}

Modulus ModulusFromPeriodRatio(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw Error(ErrorCode::kOutOfRange, "quarter-period ratio must be positive");
  }
  // k = (theta2(q) / theta3(q))^2 with nome q = exp(-pi K'/K). For
  // K'/K < 1 the complementary nome gives k' instead, keeping whichever
  // modulus is small accurate to full relative precision.
  const bool complement = ratio < 1.0;
  const double q = std::exp(-std::numbers::pi * (complement ? 1.0 / ratio : ratio));
  double theta2 = 0.0;
  double theta3 = 1.0;
  for (int n = 0; n < 64; ++n) {
    const double t2 = std::pow(q, n * (n + 1.0));
    const double t3 = std::pow(q, (n + 1.0) * (n + 1.0));
    theta2 += t2;
    theta3 += 2.0 * t3;
    if (t2 < 1e-18 * theta2 && t3 < 1e-18) break;
  }
  theta2 *= 2.0 * std::pow(q, 0.25);
  const double small = (theta2 / theta3) * (theta2 / theta3);
  return complement ? Modulus::FromComplement(small) : Modulus::FromK(small);
}

double QuarterPeriodRatio(const Modulus& m) {
  return EllipticK(m.Complement()) / EllipticK(m);
}

Modulus SolveDegreeForSelectivity(int order, const Modulus& k1) {
  if (order < 1) {
    throw Error(ErrorCode::kOutOfRange, "degree equation needs order >= 1");
  }
  return ModulusFromPeriodRatio(QuarterPeriodRatio(k1) / order);
}

Modulus SolveDegreeForDiscrimination(int order, const Modulus& k) {
  if (order < 1) {
    throw Error(ErrorCode::kOutOfRange, "degree equation needs order >= 1");
  }
  return ModulusFromPeriodRatio(QuarterPeriodRatio(k) * order);
}

}  // namespace driftfilt::elliptic
