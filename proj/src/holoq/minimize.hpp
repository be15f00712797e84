// Copyright 2026 The holoq Authors
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

// Smooth unconstrained minimisation with finite-difference gradients.

#ifndef HOLOQ_MINIMIZE_HPP_
#define HOLOQ_MINIMIZE_HPP_

#include <functional>
#include <string>
#include <vector>

namespace holoq {

using Objective = std::function<double(const std::vector<double>&)>;
using GradientFn =
    std::function<std::vector<double>(const std::vector<double>&)>;
// Called after every accepted step with (iteration, x, value).
using StepObserver =
    std::function<void(int, const std::vector<double>&, double)>;

// Central differences; the 2n evaluations run on the worker pool, so `f`
// must be thread safe.
std::vector<double> central_gradient(const Objective& f,
                                     const std::vector<double>& x,
                                     double epsilon);

struct BfgsOptions {
  double initial_step = 0.1;
  int max_iterations = 2000;
  double gradient_tol = 1e-7;
  int max_halvings = 30;
  // Stop once a step gains less than this (relative) and |g| < flat_gradient.
  double flat_tol = 1e-15;
  double flat_gradient = 1e-3;
};

struct BfgsResult {
  std::vector<double> x;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
};

// BFGS directions with Armijo backtracking. A failed line search first
// resets the curvature estimate; a second failure ends the run, and counts
// as converged only when the rise is at rounding level.
BfgsResult bfgs_minimize(const Objective& f, const GradientFn& grad,
                         std::vector<double> x0, const BfgsOptions& options,
                         const StepObserver& observer = {});

}  // namespace holoq

#endif  // HOLOQ_MINIMIZE_HPP_
