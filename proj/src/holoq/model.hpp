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

// Translation-invariant chain Hamiltonians H = sum_j h_j, with h_j a sum of
// coefficient-weighted products of site operators on sites j, j+1, ...

#ifndef HOLOQ_MODEL_HPP_
#define HOLOQ_MODEL_HPP_

#include <string>
#include <vector>

#include "holoq/mps.hpp"

namespace holoq {

struct ModelTerm {
  double coeff = 1.0;
  // Factor i acts on site j + i.
  std::vector<SiteOperator> factors;

  int span() const { return static_cast<int>(factors.size()); }
};

enum class ModelKind { kXxz, kTfim, kCustom };

struct Model {
  ModelKind kind = ModelKind::kCustom;
  double J = 1.0;
  double delta = 1.0;  // XXZ anisotropy
  double h = 1.0;      // TFIM field
  int phys_dim = 2;
  std::vector<ModelTerm> terms;

  // J (XX + YY + delta ZZ) per bond.
  static Model xxz(double J, double delta);
  // -(J ZZ + h X) per site.
  static Model tfim(double J, double h);
  static Model custom(std::vector<ModelTerm> terms, int phys_dim = 2);

  // Largest term span k.
  int locality() const;
  // Throws kInvalidArgument / kDimension.
  void validate() const;
  std::string describe() const;

  // h_j as a dense matrix on k = locality() sites, site j most significant.
  Matrix local_density() const;
  // out = H psi on a chain of `length` sites (site 1 most significant);
  // terms running past the end wrap when periodic and are dropped otherwise.
  void apply_hamiltonian(const Vector& psi, Vector& out, int length,
                         bool periodic) const;
  // Dense H for small chains (length * n_p <= 12).
  Matrix dense_hamiltonian(int length, bool periodic) const;
};

}  // namespace holoq

#endif  // HOLOQ_MODEL_HPP_
