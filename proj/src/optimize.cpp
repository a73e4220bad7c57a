// Copyright 2026 The qpack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpack/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qpack/error.hpp"

namespace qpack {

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw InvalidArgument("nelder_mead: empty parameter vector");
  NelderMeadResult result;
  std::size_t evals = 0;
  // Thrown instead of evaluating past the budget.
  struct BudgetSpent {};
  auto eval = [&](const std::vector<double>& x) {
    if (evals >= options.max_evaluations) throw BudgetSpent{};
    ++evals;
    return f(x);
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1, std::numeric_limits<double>::infinity());

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n);
  auto point = [&](double t, const std::vector<double>& worst) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k)
      p[k] = centroid[k] + t * (worst[k] - centroid[k]);
    return p;
  };

  try {
    for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);
    while (evals < options.max_evaluations) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[n - 1];
      result.trace.push_back(values[best]);

      double diameter = 0.0;
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k < n; ++k)
          diameter = std::max(diameter, std::abs(simplex[i][k] - simplex[best][k]));
      if (values[worst] - values[best] < options.f_tol && diameter < options.x_tol)
        break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == worst) continue;
        for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
      }
      for (auto& c : centroid) c /= static_cast<double>(n);

      const auto reflected = point(-1.0, simplex[worst]);
      const double f_r = eval(reflected);
      if (f_r < values[best]) {
        const auto expanded = point(-2.0, simplex[worst]);
        const double f_e = eval(expanded);
        if (f_e < f_r) {
          simplex[worst] = expanded;
          values[worst] = f_e;
        } else {
          simplex[worst] = reflected;
          values[worst] = f_r;
        }
        continue;
      }
      if (f_r < values[second]) {
        simplex[worst] = reflected;
        values[worst] = f_r;
        continue;
      }
      const bool outside = f_r < values[worst];
      const auto contracted = point(outside ? -0.5 : 0.5, simplex[worst]);
      const double f_c = eval(contracted);
      if (f_c < (outside ? f_r : values[worst])) {
        simplex[worst] = contracted;
        values[worst] = f_c;
        continue;
      }
      for (std::size_t i = 0; i <= n; ++i) {
        if (i == best) continue;
        auto shrunk = simplex[i];
        for (std::size_t k = 0; k < n; ++k)
          shrunk[k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
        values[i] = eval(shrunk);
        simplex[i] = std::move(shrunk);
      }
    }
  } catch (const BudgetSpent&) {
  }
  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.evaluations = evals;
  return result;
}

}  // namespace qpack
