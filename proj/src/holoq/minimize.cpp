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

#include "holoq/minimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "holoq/circuit.hpp"

namespace holoq {

std::vector<double> central_gradient(const Objective& f,
                                     const std::vector<double>& x,
                                     double epsilon) {
  const int n = static_cast<int>(x.size());
  std::vector<double> e(2 * n);
  parallel_for(2 * n, [&](std::int64_t i) {
    std::vector<double> p = x;
    p[i / 2] += (i % 2 == 0 ? epsilon : -epsilon);
    e[i] = f(p);
  });
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = (e[2 * i] - e[2 * i + 1]) / (2 * epsilon);
  return g;
}

BfgsResult bfgs_minimize(const Objective& f, const GradientFn& grad,
                         std::vector<double> x0, const BfgsOptions& opt,
                         const StepObserver& observer) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  const int n = static_cast<int>(x0.size());
  auto to_std = [n](const VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + n);
  };
  auto gradient = [&](const VectorXd& v) {
    const std::vector<double> g = grad(to_std(v));
    return VectorXd(Eigen::Map<const VectorXd>(g.data(), n));
  };
  auto value = [&](const VectorXd& v) { return f(to_std(v)); };

  BfgsResult res;
  VectorXd x = Eigen::Map<const VectorXd>(x0.data(), n);
  double e = value(x);
  if (observer) observer(0, to_std(x), e);
  VectorXd g = gradient(x);
  MatrixXd h = MatrixXd::Identity(n, n) * opt.initial_step;
  bool scaled = false;
  bool fresh = true;
  res.message = "iteration cap reached";
  int it = 0;
  while (it < opt.max_iterations) {
    if (g.norm() < opt.gradient_tol) {
      res.converged = true;
      res.message = "gradient below tolerance";
      break;
    }
    VectorXd d = -h * g;
    if (g.dot(d) >= 0) {
      h = MatrixXd::Identity(n, n) * opt.initial_step;
      fresh = true;
      d = -h * g;
    }
    double t = 1.0;
    VectorXd xn = x + d;
    double en = value(xn);
    int halvings = 0;
    while (!(en <= e + 1e-4 * t * g.dot(d)) && halvings < opt.max_halvings) {
      t *= 0.5;
      ++halvings;
      xn = x + t * d;
      en = value(xn);
    }
    if (!(en <= e)) {
      if (!fresh) {
        // Stale curvature: restart from the scaled steepest-descent metric.
        h = MatrixXd::Identity(n, n) * opt.initial_step;
        scaled = false;
        fresh = true;
        continue;
      }
      const double scale = std::max(1.0, std::abs(e));
      res.converged = en - e < 1e-14 * scale;
      res.message = res.converged ? "energy stationary to rounding"
                                  : "no descent after " +
                                        std::to_string(halvings) + " halvings";
      break;
    }
    fresh = false;
    ++it;
    const VectorXd gn = gradient(xn);
    const VectorXd s = xn - x;
    const VectorXd y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-14) {
      if (!scaled) {
        h = MatrixXd::Identity(n, n) * (sy / y.dot(y));
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const MatrixXd m = MatrixXd::Identity(n, n) - rho * s * y.transpose();
      h = m * h * m.transpose() + rho * s * s.transpose();
    }
    const bool flat = e - en < opt.flat_tol * std::max(1.0, std::abs(e));
    x = xn;
    e = en;
    g = gn;
    if (observer) observer(it, to_std(x), e);
    if (flat && g.norm() < opt.flat_gradient) {
      res.converged = true;
      res.message = "energy stationary to rounding";
      break;
    }
  }
  res.x = to_std(x);
  res.value = e;
  res.gradient_norm = g.norm();
  res.iterations = it;
  return res;
}

}  // namespace holoq
