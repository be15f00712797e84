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

#include "holoq/gates.hpp"

#include <cmath>
#include <numbers>

#include "holoq/errors.hpp"

namespace holoq::gates {

namespace {

Matrix rotation(const Matrix& pauli, double theta) {
  return std::cos(theta / 2) * Matrix::Identity(2, 2) -
         kI * std::sin(theta / 2) * pauli;
}

}  // namespace

Matrix rx(double theta) { return rotation(pauli::X(), theta); }
Matrix ry(double theta) { return rotation(pauli::Y(), theta); }
Matrix rz(double theta) { return rotation(pauli::Z(), theta); }

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Matrix phase_s() {
  Matrix s = Matrix::Identity(2, 2);
  s(1, 1) = kI;
  return s;
}

Matrix cz() {
  Matrix m = Matrix::Identity(4, 4);
  m(3, 3) = -1.0;
  return m;
}

Matrix cnot() {
  const Matrix ih = kron(Matrix::Identity(2, 2), hadamard());
  return ih * cz() * ih;
}

Matrix swap() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

Matrix zyz(double a, double b, double c) { return rz(a) * ry(b) * rz(c); }

Matrix exchange(double theta) {
  const Matrix h = kron(pauli::X(), pauli::X()) + kron(pauli::Y(), pauli::Y());
  return expm_hermitian(h, theta / 2);
}

Matrix zz_rotation(double phi) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = std::exp(-kI * phi);
  m(1, 1) = m(2, 2) = std::exp(kI * phi);
  return m;
}

Matrix su4(std::span<const double> p) {
  require(p.size() == kSu4Params, ErrorCode::kInvalidArgument,
          "SU(4) gate takes 15 parameters");
  const Matrix h = p[0] * kron(pauli::X(), pauli::X()) +
                   p[1] * kron(pauli::Y(), pauli::Y()) +
                   p[2] * kron(pauli::Z(), pauli::Z());
  const Matrix u1 = zyz(p[3], p[4], p[5]);
  const Matrix u2 = zyz(p[6], p[7], p[8]);
  const Matrix u3 = zyz(p[9], p[10], p[11]);
  const Matrix u4 = zyz(p[12], p[13], p[14]);
  return kron(u1, u2) * expm_hermitian(h, 1.0) * kron(u3, u4);
}

LocalInvariants makhlin_invariants(const Matrix& u) {
  require(u.rows() == 4 && u.cols() == 4, ErrorCode::kDimension,
          "local invariants need a two-qubit gate");
  Matrix q(4, 4);
  q << 1, 0, 0, kI, 0, kI, 1, 0, 0, kI, -1, 0, 1, 0, 0, -kI;
  q /= std::sqrt(2.0);
  const Matrix ub = q.adjoint() * u * q;
  const Matrix m = ub.transpose() * ub;
  const cplx det = u.determinant();
  const cplx tr = m.trace();
  const cplx tr2 = (m * m).trace();
  return {tr * tr / (16.0 * det), ((tr * tr - tr2) / (4.0 * det)).real()};
}

std::vector<NamedGate> exchange_cz_decomposition(double theta) {
  using std::numbers::pi;
  return {
      {"rx", {0}, rx(pi / 2)},         {"rx", {1}, rx(pi / 2)},
      {"h", {1}, hadamard()},          {"cz", {0, 1}, cz()},
      {"h", {1}, hadamard()},          {"rx", {0}, rx(theta)},
      {"rz", {1}, rz(theta)},          {"h", {1}, hadamard()},
      {"cz", {0, 1}, cz()},            {"h", {1}, hadamard()},
      {"rx", {0}, rx(-pi / 2)},        {"rx", {1}, rx(-pi / 2)},
  };
}

}  // namespace holoq::gates
