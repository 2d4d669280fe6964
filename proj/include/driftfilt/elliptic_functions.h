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

#ifndef DRIFTFILT_ELLIPTIC_FUNCTIONS_H_
#define DRIFTFILT_ELLIPTIC_FUNCTIONS_H_

#include <vector>

#include "driftfilt/common.h"

// Jacobi elliptic functions evaluated with descending Landen transformations.
// Arguments are normalized by the quarter period: Cd(u, m) returns
// cd(u * K(m), k), so the real period is 4 in u for every modulus.
namespace driftfilt::elliptic {

// Elliptic modulus carried with its complement. Designs with sharp
// selectivity need k' to full relative precision, which sqrt(1 - k^2)
// cannot provide when k is close to 1.
struct Modulus {
  double k = 0.0;
  double kprime = 1.0;

  static Modulus FromK(double k);
  static Modulus FromComplement(double kprime);
  Modulus Complement() const { return {kprime, k}; }
};

inline constexpr double kLandenTolerance = 1e-14;

// Descending moduli v_1, v_2, ... until v_n < kLandenTolerance. Throws
// Error(kNotConverged) if the tolerance is not reached.
std::vector<double> LandenSequence(const Modulus& m);

// Complete elliptic integral of the first kind K(k).
double EllipticK(const Modulus& m);

// cd(u K, k) and sn(u K, k).
Complex Cd(Complex u, const Modulus& m);
Complex Sn(Complex u, const Modulus& m);

// Inverses of Cd and Sn, reduced to the fundamental rectangle
// |Re u| <= 2, |Im u| <= K'/K.
Complex InverseCd(Complex w, const Modulus& m);
Complex InverseSn(Complex w, const Modulus& m);

// Ratio K'(k) / K(k).
double QuarterPeriodRatio(const Modulus& m);

// Modulus whose quarter-period ratio K'/K equals `ratio`, via the nome.
Modulus ModulusFromPeriodRatio(double ratio);

// Solves the degree equation N K'/K = K1'/K1 for k given the
// discrimination modulus k1 (k1 = eps_p / eps_s in filter terms).
Modulus SolveDegreeForSelectivity(int order, const Modulus& k1);

// Solves the degree equation for k1 given the selectivity modulus k.
Modulus SolveDegreeForDiscrimination(int order, const Modulus& k);

}  // namespace driftfilt::elliptic

#endif  // DRIFTFILT_ELLIPTIC_FUNCTIONS_H_
