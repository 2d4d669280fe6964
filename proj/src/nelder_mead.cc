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

#include "driftfilt/nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace driftfilt {

NelderMeadResult NelderMead(const std::function<double(const Vector&)>& f,
                            const Vector& x0, const NelderMeadOptions& options) {
  const Index n = x0.size();
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "Nelder-Mead needs dimension >= 1");
  if (options.initial_step.size() != 0 && options.initial_step.size() != n) {
    throw Error(ErrorCode::kShapeMismatch,
                "initial step has " + std::to_string(options.initial_step.size()) +
                    " entries for dimension " + std::to_string(n));
  }
  NelderMeadResult result;
  auto eval = [&](const Vector& x) {
    const double v = f(x);
    result.trace.emplace_back(x, v);
    ++result.evaluations;
    return std::isnan(v) ? INFINITY : v;
  };

  std::vector<Vector> vertex(static_cast<std::size_t>(n + 1), x0);
  std::vector<double> value(static_cast<std::size_t>(n + 1));
  for (Index i = 0; i < n; ++i) {
    double step = options.initial_step.size() == n ? options.initial_step[i]
                                                   : 0.05 * std::abs(x0[i]);
    if (step == 0.0) step = 0.00025;
    vertex[static_cast<std::size_t>(i + 1)][i] += step;
  }
  for (std::size_t i = 0; i < vertex.size(); ++i) value[i] = eval(vertex[i]);

  // order[0] is the best vertex. Equal values rank older vertices first;
  // replacing a vertex makes it the youngest.
  std::vector<std::size_t> order(vertex.size());
  std::vector<long> age(vertex.size());
  std::iota(age.begin(), age.end(), 0);
  long clock = static_cast<long>(vertex.size());
  auto sort_by_value_then_age = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (value[a] != value[b]) return value[a] < value[b];
      return age[a] < age[b];
    });
  };
  sort_by_value_then_age();
  result.best_per_iteration.push_back(value[order[0]]);

  for (int iter = 0; iter < options.max_iter; ++iter) {
    const std::size_t best = order[0];
    const std::size_t worst = order[static_cast<std::size_t>(n)];
    const std::size_t second_worst = order[static_cast<std::size_t>(n - 1)];

    double diameter = 0.0;
    for (const Vector& v : vertex) {
      diameter = std::max(diameter, (v - vertex[best]).cwiseAbs().maxCoeff());
    }
    const double spread = value[worst] - value[best];
    if (diameter < options.tol_x && spread < options.tol_f) {
      result.converged = true;
      break;
    }
    result.iterations = iter + 1;

    Vector centroid = Vector::Zero(n);
    for (Index i = 0; i < n; ++i) centroid += vertex[order[static_cast<std::size_t>(i)]];
    centroid /= static_cast<double>(n);

    auto replace_worst = [&](const Vector& x, double v) {
      vertex[worst] = x;
      value[worst] = v;
      age[worst] = clock++;
    };

    const Vector reflected = centroid + options.reflection * (centroid - vertex[worst]);
    const double f_reflected = eval(reflected);
    if (f_reflected < value[best]) {
      const Vector expanded = centroid + options.expansion * (reflected - centroid);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        replace_worst(expanded, f_expanded);
      } else {
        replace_worst(reflected, f_reflected);
      }
    } else if (f_reflected < value[second_worst]) {
      replace_worst(reflected, f_reflected);
    } else {
      bool accepted = false;
      if (f_reflected < value[worst]) {
        const Vector outside = centroid + options.contraction * (reflected - centroid);
        const double f_outside = eval(outside);
        if (f_outside <= f_reflected) {
          replace_worst(outside, f_outside);
          accepted = true;
        }
      } else {
        const Vector inside = centroid + options.contraction * (vertex[worst] - centroid);
        const double f_inside = eval(inside);
        if (f_inside < value[worst]) {
          replace_worst(inside, f_inside);
          accepted = true;
        }
      }
      if (!accepted) {
        for (std::size_t i = 0; i < vertex.size(); ++i) {
          if (i == best) continue;
          vertex[i] = vertex[best] + options.shrink * (vertex[i] - vertex[best]);
          value[i] = eval(vertex[i]);
          age[i] = clock++;
        }
      }
    }
    sort_by_value_then_age();
    result.best_per_iteration.push_back(value[order[0]]);
  }

  result.x_best = vertex[order[0]];
  result.f_best = value[order[0]];
  return result;
}

}  // namespace driftfilt
