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

#ifndef DRIFTFILT_NELDER_MEAD_H_
#define DRIFTFILT_NELDER_MEAD_H_

#include <functional>
#include <vector>

#include "driftfilt/common.h"

namespace driftfilt {

struct NelderMeadOptions {
  double tol_x = 1e-4;
  double tol_f = 1e-6;
  int max_iter = 500;
  // Per-coordinate offsets of the initial simplex from x0. Empty means 5%
  // of |x0_i|, or 0.00025 where x0_i is zero.
  Vector initial_step;
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct NelderMeadResult {
  Vector x_best;
  double f_best = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  // Every evaluation in call order.
  std::vector<std::pair<Vector, double>> trace;
  // Best vertex value after each iteration, starting with the initial simplex.
  std::vector<double> best_per_iteration;
};

// Deterministic Nelder-Mead minimization. Stops when the simplex diameter
// (max infinity-norm distance from the best vertex) is below tol_x and the
// spread of vertex values is below tol_f, or after max_iter iterations
// with converged = false. Ties are broken by vertex age.
NelderMeadResult NelderMead(const std::function<double(const Vector&)>& f,
                            const Vector& x0, const NelderMeadOptions& options = {});

}  // namespace driftfilt

#endif  // DRIFTFILT_NELDER_MEAD_H_
