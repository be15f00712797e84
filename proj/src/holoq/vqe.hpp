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

// Variational ground-state search over holographic circuit ansaetze.

#ifndef HOLOQ_VQE_HPP_
#define HOLOQ_VQE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "holoq/holo_prep.hpp"
#include "holoq/model.hpp"

namespace holoq {

enum class AnsatzKind {
  kXxzU1,        // exp[-i t (XX + YY)] exp[-i f ZZ]
  kXyz,          // exp[-i (t XX + f YY + g ZZ)]
  kHeisenbergG,  // exp[-i t (XX + YY) / 2]
  kStar,         // SU(4) blocks (phys, bond j) for j = 1..n_b
};

struct Ansatz {
  AnsatzKind kind = AnsatzKind::kHeisenbergG;
  int star_bonds = 1;
  // Odd sites apply X to the fresh physical qubit before the entangler.
  bool alternation = true;

  static Ansatz xxz_u1(bool alternation = true);
  static Ansatz xyz(bool alternation = true);
  static Ansatz heisenberg_g();
  static Ansatz star(int n_b, bool alternation = false);

  int n_b() const;
  // Star(0) is a ZYZ rotation of the physical qubit (3 params).
  int num_params() const;
  int cell() const { return alternation ? 2 : 1; }
  std::string name() const;
  void validate() const;
};

// Site unitary on [phys, bond...]; site_parity 1 marks odd sites.
Matrix ansatz_unitary(const Ansatz& ansatz, std::span<const double> params,
                      int site_parity);

// Holographic spec with L = |0...0> and the trace policy.
HoloSpec ansatz_spec(const Ansatz& ansatz, std::span<const double> params,
                     int burn_in = 4);

// Bond density of the infinite-burn-in limit, taken at a unit-cell boundary:
// the normalised fixed point of the cell channel when it is unique, else
// the cell channel iterated 2^30 times on conj(L) L^T.
Matrix steady_bond_density(const HoloSpec& spec);

// Correlator with bulk offsets measured after the steady-state burn-in;
// the request length must be 0.
double steady_correlator(const HoloSpec& spec, const CorrelatorRequest& request);

struct EnergyOptions {
  bool exact = true;
  // Exact mode: infinite burn-in when set, otherwise `burn_in` sites.
  bool steady_state = true;
  int burn_in = 4;
  std::int64_t shots = 1000;  // per term and sublattice phase
  std::uint64_t seed = 1;
};

struct EnergyEstimate {
  double energy = 0.0;
  double std_error = 0.0;
  std::int64_t shots = 0;
};

// Energy per site: each term measured on consecutive bulk sites, averaged
// over the two sublattice phases when the ansatz alternates.
EnergyEstimate energy(const Model& model, const Ansatz& ansatz,
                      std::span<const double> params,
                      const EnergyOptions& options = {});

// Same estimate for an arbitrary spec, averaged over `phases` sublattice
// offsets; finite burn-in modes use the HoloSpec's own burn-in.
EnergyEstimate spec_energy(const Model& model, const HoloSpec& spec, int phases,
                           const EnergyOptions& options = {});

enum class OptimizerMethod { kGradient, kAnnealing };

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::kGradient;
  bool exact = true;
  std::uint64_t seed = 1;
  std::vector<double> initial;  // empty: uniform in [-pi, pi) from the seed

  // Exact mode: BFGS directions when set, else Barzilai-Borwein steps.
  // Sampled mode always takes fixed steps of size `step`.
  bool quasi_newton = true;
  double step = 0.1;
  double fd_epsilon = 1e-4;
  int max_iterations = 2000;
  double gradient_tol = 1e-7;
  int max_uphill = 30;

  // Sampled mode: shots ramp linearly over the iterations; burn-in sites.
  int sampled_iterations = 40;
  std::int64_t shots_start = 500;
  std::int64_t shots_end = 2000;
  int burn_in = 4;

  // Simulated annealing on a geometric temperature ladder.
  int temperatures = 40;
  int proposals = 200;
  double t_initial = 0.5;
  double t_final = 1e-5;
  double width = 0.1;  // scaled by sqrt(T / t_initial)
  int restarts = 8;
  bool polish = true;  // exact descent from the best chains
  int polish_candidates = 3;

  void validate() const;
};

struct TracePoint {
  int iteration = 0;
  std::vector<double> params;
  double energy = 0.0;
  double std_error = 0.0;
  std::int64_t shots = 0;
};

struct VqeResult {
  std::vector<double> params;
  double energy = 0.0;
  double std_error = 0.0;
  std::vector<TracePoint> trace;
  bool converged = false;
  std::string message;
};

// Central finite-difference gradient of the exact energy.
std::vector<double> energy_gradient(const Model& model, const Ansatz& ansatz,
                                    std::span<const double> params,
                                    double epsilon = 1e-4);

VqeResult optimize(const Model& model, const Ansatz& ansatz,
                   const OptimizerConfig& config);

// "iteration,p0,...,energy,stderr,shots"
std::string format_trace_csv(const VqeResult& result);

struct CorrelationRow {
  int r = 0;
  double cx = 0.0;  // <X_0 X_r> - <X_0><X_r>
  double cz = 0.0;
};

// Connected correlators for r = 0..r_max in the steady state, averaged over
// the sublattice phases.
std::vector<CorrelationRow> correlation_profile(const Ansatz& ansatz,
                                                std::span<const double> params,
                                                int r_max);

}  // namespace holoq

#endif  // HOLOQ_VQE_HPP_
