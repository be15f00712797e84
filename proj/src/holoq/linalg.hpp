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

#ifndef HOLOQ_LINALG_HPP_
#define HOLOQ_LINALG_HPP_

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace holoq {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};

// Algebraic identities (unitarity, canonical form, hermiticity).
inline constexpr double kAlgebraicTol = 1e-12;
// Agreement between two independent numerical routes.
inline constexpr double kCrossOracleTol = 1e-10;

namespace pauli {
Matrix I();
Matrix X();
Matrix Y();
Matrix Z();
// "I", "X", "Y", "Z" (case-insensitive); throws kInvalidArgument otherwise.
Matrix from_label(char label);
}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_all(std::span<const Matrix> factors);

double max_abs(const Matrix& m);
bool is_unitary(const Matrix& m, double tol = kAlgebraicTol);
bool is_hermitian(const Matrix& m, double tol = kAlgebraicTol);
bool is_power_of_two(std::int64_t n);
int log2_exact(std::int64_t n);

// exp(-i * t * h) for Hermitian h, via eigendecomposition.
Matrix expm_hermitian(const Matrix& h, double t);

// Extends the orthonormal columns of `cols` (d x m) to a d x d unitary. Extra
// columns are taken greedily from the standard basis vector with the largest
// component orthogonal to the span so far (lowest index wins ties), then
// Gram-Schmidt orthonormalized twice. The first m columns are copied exactly.
Matrix complete_to_unitary(const Matrix& cols);

// Unitary whose first column is the unit vector v.
Matrix state_prep_unitary(const Vector& v);

// Spectral projectors of a Hermitian matrix with (near) degenerate
// eigenvalues grouped together.
struct Eigenspace {
  double eigenvalue;
  Matrix projector;
};
std::vector<Eigenspace> eigenspaces(const Matrix& hermitian,
                                    double merge_tol = 1e-9);

// Applies a 2^k x 2^k matrix to `targets` of an n-qubit state stored
// big-endian: qubit 0 is the most significant bit of the index, and
// targets[0] is the most significant qubit of the gate's own index.
void apply_matrix(std::span<cplx> state, int n_qubits, const Matrix& m,
                  std::span<const int> targets);

// Full 2^n x 2^n matrix of `m` acting on `targets`.
Matrix embed_operator(const Matrix& m, std::span<const int> targets,
                      int n_qubits);

}  // namespace holoq

#endif  // HOLOQ_LINALG_HPP_
