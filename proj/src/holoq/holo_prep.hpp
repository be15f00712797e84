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

// Sequential generation of an MPS on a bond register plus one reusable
// physical register, and the correlators and bond spectra it gives access to.
//
// Register layout: bond qubits 0..n_b-1, physical qubits n_b..n_b+n_p-1.
// Site unitaries act on [physical..., bond...], physical most significant.

#ifndef HOLOQ_HOLO_PREP_HPP_
#define HOLOQ_HOLO_PREP_HPP_

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "holoq/circuit.hpp"
#include "holoq/mps.hpp"

namespace holoq {

enum class RightPolicy { kTrace, kPostselect };

inline constexpr int kAutoBurnIn = -1;

struct HoloSpec {
  int n_b = 1;
  int n_p = 1;
  // One entry for a uniform spec; otherwise site i uses
  // unitaries[(i - 1) % size], so a two-site unit cell is a list of two.
  std::vector<Matrix> unitaries;
  Vector left;
  RightPolicy policy = RightPolicy::kTrace;
  Vector right;  // only read under kPostselect
  int burn_in = 4;

  int bond_dim() const { return 1 << n_b; }
  int phys_dim() const { return 1 << n_p; }
  int width() const { return n_b + n_p; }
  const Matrix& unitary_for_site(int site) const;
  MpsTensor tensor_for_site(int site) const;
  // Throws kDimension / kInvalidArgument.
  void validate() const;
};

// Embeds every tensor of a right-canonical, uniform-chi MPS. The HoloSpec keeps
// the MPS boundaries (postselect policy) and has burn-in 0.
HoloSpec spec_from_mps(const Mps& mps);

// Finite MPS of `length` sites generated by the HoloSpec; R is its right
// boundary under kPostselect and the all-ones vector otherwise.
Mps spec_to_mps(const HoloSpec& spec, int length);

struct CorrelatorRequest {
  // (site, operator) with strictly increasing sites, Hermitian operators.
  std::vector<std::pair<int, SiteOperator>> ops;
  // Explicit chain length, or 0 for "effective infinite": sites are then
  // offsets counted after the burn-in and the chain ends at the last one.
  int length = 0;

  bool bulk() const { return length == 0; }
  std::string describe() const;
};

// Absolute sites and chain length after resolving bulk offsets.
struct ResolvedRequest {
  std::vector<std::pair<int, SiteOperator>> ops;
  int length = 0;
  int burn_in = 0;
};
ResolvedRequest resolve(const HoloSpec& spec, const CorrelatorRequest& request);

// Reset/U blocks per site, a tagged measurement "s<site>" per requested
// operator, and a final bond measurement tagged "R" of the projector onto
// conj(R)/|R| under the postselect policy.
Circuit build_prep_circuit(const HoloSpec& spec,
                           const CorrelatorRequest& request);

// Record tags of the requested operators in a prep circuit.
std::vector<std::string> request_tags(const ResolvedRequest& request);

EstimatorResult sample_correlator(const HoloSpec& spec,
                                  const CorrelatorRequest& request,
                                  std::int64_t shots, std::uint64_t seed,
                                  bool keep_samples = false);

// Channel composition; the postselect value is normalised by the acceptance
// weight, matching the mean over accepted shots.
double exact_correlator(const HoloSpec& spec, const CorrelatorRequest& request);

// Bond density matrix (channel convention) after `sites` iterations from
// conj(L) L^T.
Matrix bond_density(const HoloSpec& spec, int sites);

// Descending eigenvalues of the bond density matrix after j sites.
std::vector<double> bond_entanglement_spectrum(const HoloSpec& spec, int j);

// Two replicas of the bond register share one physical register; pairwise
// SWAP measurements give tr rho^2 as the product of +-1 records.
Circuit build_renyi2_circuit(const HoloSpec& spec, int j);
EstimatorResult renyi2_swap_sample(const HoloSpec& spec, int j,
                                   std::int64_t shots, std::uint64_t seed,
                                   bool keep_samples = false);
double renyi2_entropy(double purity);

// Doubles the burn-in from the HoloSpec's value (or 4) until the exact
// correlator changes by less than `tol`; throws kNonConvergence past 4096.
int auto_burn_in(const HoloSpec& spec, const CorrelatorRequest& request,
                 double tol = 1e-8);

// Text container with hexadecimal floats ("holoq-spec 1").
std::string format_spec(const HoloSpec& spec);
HoloSpec parse_spec(const std::string& text);
void save_spec(const HoloSpec& spec, const std::filesystem::path& path);
HoloSpec load_spec(const std::filesystem::path& path);

}  // namespace holoq

#endif  // HOLOQ_HOLO_PREP_HPP_
