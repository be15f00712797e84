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

#include "holoq/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "holoq/errors.hpp"

namespace holoq {

namespace pauli {

Matrix I() { return Matrix::Identity(2, 2); }

Matrix X() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix Y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

Matrix Z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix from_label(char label) {
  switch (std::toupper(static_cast<unsigned char>(label))) {
    case 'I':
      return I();
    case 'X':
      return X();
    case 'Y':
      return Y();
    case 'Z':
      return Z();
  }
  fail(ErrorCode::kInvalidArgument,
       std::string("unknown Pauli label '") + label + "'");
}

}  // namespace pauli

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_all(std::span<const Matrix> factors) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <=
         tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_power_of_two(std::int64_t n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(std::int64_t n) {
  require(is_power_of_two(n), ErrorCode::kDimension,
          "dimension " + std::to_string(n) + " is not a power of two");
  int k = 0;
  while ((std::int64_t{1} << k) < n) ++k;
  return k;
}

Matrix expm_hermitian(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(-kI * t * es.eigenvalues()(i));
  }
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

Matrix complete_to_unitary(const Matrix& cols) {
  const Eigen::Index d = cols.rows();
  const Eigen::Index m = cols.cols();
  require(m <= d, ErrorCode::kDimension,
          "cannot complete more columns than the dimension");
  Matrix u(d, d);
  u.leftCols(m) = cols;
  auto residual = [&](Eigen::Index k, Eigen::Index filled) {
    Vector v = Vector::Zero(d);
    v(k) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < filled; ++c) {
        v -= u.col(c) * u.col(c).dot(v);
      }
    }
    return v;
  };
  for (Eigen::Index filled = m; filled < d; ++filled) {
    double best_norm = -1.0;
    Vector best_vec;
    for (Eigen::Index k = 0; k < d; ++k) {
      Vector v = residual(k, filled);
      const double n = v.norm();
      if (n > best_norm + 1e-12) {
        best_norm = n;
        best_vec = std::move(v);
      }
    }
    u.col(filled) = best_vec / best_norm;
  }
  return u;
}

Matrix state_prep_unitary(const Vector& v) {
  require(std::abs(v.norm() - 1.0) <= 1e-10, ErrorCode::kInvalidArgument,
          "state preparation needs a unit vector");
  return complete_to_unitary(Matrix(v));
}

std::vector<Eigenspace> eigenspaces(const Matrix& hermitian,
                                    double merge_tol) {
  require(is_hermitian(hermitian, 1e-10), ErrorCode::kInvalidArgument,
          "observable is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian);
  const auto& vals = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  std::vector<Eigenspace> out;
  Eigen::Index i = 0;
  while (i < vals.size()) {
    Eigen::Index j = i;
    double sum = 0.0;
    Matrix proj = Matrix::Zero(hermitian.rows(), hermitian.cols());
    while (j < vals.size() && vals(j) - vals(i) <= merge_tol) {
      proj += vecs.col(j) * vecs.col(j).adjoint();
      sum += vals(j);
      ++j;
    }
    double lambda = sum / static_cast<double>(j - i);
    // Snap to integers so Pauli records are exactly +-1.
    if (std::abs(lambda - std::round(lambda)) < 1e-12) lambda = std::round(lambda);
    out.push_back({lambda, std::move(proj)});
    i = j;
  }
  return out;
}

void apply_matrix(std::span<cplx> state, int n_qubits, const Matrix& m,
                  std::span<const int> targets) {
  const int k = static_cast<int>(targets.size());
  const std::size_t dim_k = std::size_t{1} << k;
  std::vector<std::size_t> offsets(dim_k, 0);
  std::size_t mask = 0;
  for (int t = 0; t < k; ++t) {
    const std::size_t bit = std::size_t{1} << (n_qubits - 1 - targets[t]);
    mask |= bit;
    for (std::size_t j = 0; j < dim_k; ++j) {
      if ((j >> (k - 1 - t)) & 1U) offsets[j] |= bit;
    }
  }
  std::vector<cplx> in(dim_k);
  const std::size_t dim = std::size_t{1} << n_qubits;
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (std::size_t j = 0; j < dim_k; ++j) in[j] = state[base | offsets[j]];
    for (std::size_t r = 0; r < dim_k; ++r) {
      cplx acc = 0.0;
      for (std::size_t c = 0; c < dim_k; ++c) {
        acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
               in[c];
      }
      state[base | offsets[r]] = acc;
    }
  }
}

Matrix embed_operator(const Matrix& m, std::span<const int> targets,
                      int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Matrix out = Matrix::Identity(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    apply_matrix(std::span<cplx>(out.col(c).data(), static_cast<std::size_t>(dim)),
                 n_qubits, m, targets);
  }
  return out;
}

}  // namespace holoq
