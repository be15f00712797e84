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

// Parametric gate matrices. Two-qubit gates act on (first, second) with the
// first qubit most significant.

#ifndef HOLOQ_GATES_HPP_
#define HOLOQ_GATES_HPP_

#include <span>
#include <string>
#include <vector>

#include "holoq/linalg.hpp"

namespace holoq::gates {

Matrix rx(double theta);  // exp(-i theta X / 2)
Matrix ry(double theta);
Matrix rz(double theta);
Matrix hadamard();
Matrix phase_s();
Matrix cz();
Matrix cnot();  // control = first qubit
Matrix swap();

// Rz(a) Ry(b) Rz(c).
Matrix zyz(double a, double b, double c);

// exp[-i theta (XX + YY) / 2].
Matrix exchange(double theta);
// exp[-i phi ZZ].
Matrix zz_rotation(double phi);

inline constexpr int kSu4Params = 15;
// params = [a, b, c, u1(3), u2(3), u3(3), u4(3)]:
// (u1 x u2) exp[-i(a XX + b YY + c ZZ)] (u3 x u4), each u a ZYZ rotation.
Matrix su4(std::span<const double> params);

// Makhlin local invariants (G1 complex, G2 real) of a two-qubit unitary.
struct LocalInvariants {
  cplx g1;
  double g2;
};
LocalInvariants makhlin_invariants(const Matrix& u);

// A named gate on qubit positions within a small register.
struct NamedGate {
  std::string name;
  std::vector<int> targets;
  Matrix matrix;
};

// Two-CZ realisation of exchange(theta) on qubits (0, 1):
// S^dag CNOT (Rx(theta) x Rz(theta)) CNOT S with S = Rx(pi/2) x Rx(pi/2),
// and CNOT = (1 x H) CZ (1 x H). Applied in list order.
std::vector<NamedGate> exchange_cz_decomposition(double theta);

}  // namespace holoq::gates

#endif  // HOLOQ_GATES_HPP_
