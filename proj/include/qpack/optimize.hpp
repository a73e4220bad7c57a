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

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qpack {

struct NelderMeadOptions {
  double initial_step = 0.1;
  std::size_t max_evaluations = 1000;
  /// Stop when the simplex values span less than f_tol and its diameter is
  /// below x_tol.
  double f_tol = 1e-8;
  double x_tol = 1e-6;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  /// Best simplex value after each iteration.
  std::vector<double> trace;
};

/// Derivative-free simplex minimization (standard reflection / expansion /
/// contraction / shrink coefficients 1, 2, 1/2, 1/2). Deterministic.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const NelderMeadOptions& options = {});

}  // namespace qpack
