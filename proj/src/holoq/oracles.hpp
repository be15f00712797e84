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

// Reference values: Bethe-ansatz constant, free-fermion TFIM, Lanczos exact
// diagonalisation and variationally optimal infinite MPS.

#ifndef HOLOQ_ORACLES_HPP_
#define HOLOQ_ORACLES_HPP_

#include <string>
#include <vector>

#include "holoq/model.hpp"

namespace holoq {

struct OracleResult {
  std::string quantity;
  double value = 0.0;
  std::string method;
  double accuracy = 0.0;  // claimed absolute accuracy
};

// "quantity,value,method,accuracy" with a header row.
std::string format_oracle_csv(const std::vector<OracleResult>& rows);

// 1 - 4 ln 2: Heisenberg chain ground-state energy per site for
// H = sum (XX + YY + ZZ), J = 1.
double heisenberg_exact_energy();

struct FreeFermionResult {
  double energy = 0.0;  // per site, J = 1
  double energy_accuracy = 0.0;
  double mx = 0.0;       // <X>
  std::vector<double> cx;  // <X_0 X_r> - <X>^2, r = 0..r_max
  std::vector<double> cz;  // <Z_0 Z_r>, r = 0..r_max (no order: <Z> = 0)
};

// H = -sum (Z Z + g X) with g = h/J > 0, infinite chain.
FreeFermionResult tfim_free_fermion(double h_over_j, int r_max);

// Fermion two-point function G_r of the transverse-field chain; exposed for
// the Toeplitz cross-checks.
double tfim_fermion_g(double h_over_j, int r);

enum class Boundary { kOpen, kPeriodic };

struct GroundState {
  double energy = 0.0;  // total
  Vector state;
  double residual = 0.0;  // |H psi - E psi|
  int iterations = 0;
};

// Thick-restart Lanczos on the matrix-free Hamiltonian; length * n_p <= 16.
GroundState exact_diag_ground(const Model& model, int length,
                              Boundary boundary);

struct MpsOptimum {
  double energy = 0.0;  // per site
  int cell = 1;         // 1 uniform, 2 two-site
  bool converged = false;
  double accuracy = 0.0;
  std::string message;
};

struct MpsOptimumOptions {
  int max_iterations = 3000;  // per polish
  double gradient_tol = 1e-7;
  int seeds = 0;  // random starts per cell on top of the iTEBD seed
};

// Best uniform-or-two-site-cell MPS energy per site at bond dimension chi
// (<= 8) for a model with locality <= 2: imaginary-time iTEBD seed, then
// quasi-Newton descent over isometries.
MpsOptimum optimal_mps_energy(const Model& model, int chi,
                              const MpsOptimumOptions& options = {});

}  // namespace holoq

#endif  // HOLOQ_ORACLES_HPP_
