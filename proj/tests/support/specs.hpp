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

#ifndef HOLOQ_TESTS_SUPPORT_SPECS_HPP_
#define HOLOQ_TESTS_SUPPORT_SPECS_HPP_

#include <random>

#include "holoq/circuit.hpp"
#include "holoq/holo_prep.hpp"
#include "support/dense.hpp"

namespace holoq::testing {

// Haar-ish random site unitaries and left boundary.
inline HoloSpec random_spec(int n_b, int n_p, int cell, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  HoloSpec s;
  s.n_b = n_b;
  s.n_p = n_p;
  for (int c = 0; c < cell; ++c) s.unitaries.push_back(random_unitary(1 << (n_b + n_p), gen));
  std::normal_distribution<double> n;
  s.left = Vector(1 << n_b);
  for (Eigen::Index a = 0; a < s.left.size(); ++a) s.left(a) = cplx(n(gen), n(gen));
  s.left.normalize();
  s.right = Vector(1 << n_b);
  for (Eigen::Index a = 0; a < s.right.size(); ++a) s.right(a) = cplx(n(gen), n(gen));
  s.burn_in = 0;
  return s;
}

// chi=2 tensors V_0 = |0><0|, V_1 = |1><1| with L = (1,1)/sqrt2.
inline HoloSpec ghz_spec() {
  Matrix v0 = Matrix::Zero(2, 2);
  Matrix v1 = Matrix::Zero(2, 2);
  v0(0, 0) = 1.0;
  v1(1, 1) = 1.0;
  Matrix cols(4, 2);
  cols.topRows(2) = v0.transpose();
  cols.bottomRows(2) = v1.transpose();
  HoloSpec s;
  s.n_b = 1;
  s.n_p = 1;
  s.unitaries = {complete_to_unitary(cols)};
  s.left = Vector::Ones(2) / std::sqrt(2.0);
  s.burn_in = 0;
  return s;
}

// n_b = 0 spec writing |0> on every site.
inline HoloSpec product_spec() {
  HoloSpec s;
  s.n_b = 0;
  s.n_p = 1;
  s.unitaries = {Matrix::Identity(2, 2)};
  s.left = Vector::Ones(1);
  s.burn_in = 0;
  return s;
}

// Pure state of `length` sites followed by the final bond register, built
// without reuse: site i gets its own physical qubits. Site 1 is most
// significant, the bond register least significant.
inline Vector unrolled_state(const HoloSpec& spec, int length) {
  const int width = length * spec.n_p + spec.n_b;
  Circuit c(width);
  std::vector<int> bond;
  for (int k = 0; k < spec.n_b; ++k) bond.push_back(length * spec.n_p + k);
  if (spec.n_b > 0) c.gate(state_prep_unitary(spec.left), bond);
  for (int i = 1; i <= length; ++i) {
    std::vector<int> t;
    for (int k = 0; k < spec.n_p; ++k) t.push_back((i - 1) * spec.n_p + k);
    t.insert(t.end(), bond.begin(), bond.end());
    c.gate(spec.unitary_for_site(i), t);
  }
  return run_unitary(c);
}

}  // namespace holoq::testing

#endif  // HOLOQ_TESTS_SUPPORT_SPECS_HPP_
