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

#include "holoq/model.hpp"

#include <algorithm>
#include <cstdio>

#include "holoq/errors.hpp"

namespace holoq {

namespace {

ModelTerm pauli_term(double coeff, const std::string& labels) {
  ModelTerm t;
  t.coeff = coeff;
  for (char c : labels) t.factors.push_back(SiteOperator::pauli(c));
  return t;
}

}  // namespace

Model Model::xxz(double J, double delta) {
  Model m;
  m.kind = ModelKind::kXxz;
  m.J = J;
  m.delta = delta;
  m.terms = {pauli_term(J, "XX"), pauli_term(J, "YY"),
             pauli_term(J * delta, "ZZ")};
  return m;
}

Model Model::tfim(double J, double h) {
  Model m;
  m.kind = ModelKind::kTfim;
  m.J = J;
  m.h = h;
  m.terms = {pauli_term(-J, "ZZ"), pauli_term(-h, "X")};
  return m;
}

Model Model::custom(std::vector<ModelTerm> terms, int phys_dim) {
  Model m;
  m.kind = ModelKind::kCustom;
  m.phys_dim = phys_dim;
  m.terms = std::move(terms);
  m.validate();
  return m;
}

int Model::locality() const {
  int k = 1;
  for (const auto& t : terms) k = std::max(k, t.span());
  return k;
}

void Model::validate() const {
  require(is_power_of_two(phys_dim) && phys_dim >= 2, ErrorCode::kDimension,
          "physical dimension must be a power of two");
  require(!terms.empty(), ErrorCode::kInvalidArgument, "model has no terms");
  for (const auto& t : terms) {
    require(!t.factors.empty(), ErrorCode::kInvalidArgument,
            "model term has no factors");
    for (const auto& f : t.factors) {
      require(f.dim() == phys_dim, ErrorCode::kDimension,
              "term factor does not match the physical dimension");
      require(is_hermitian(f.matrix), ErrorCode::kInvalidArgument,
              "model terms must be Hermitian");
    }
  }
}

std::string Model::describe() const {
  char buf[128];
  switch (kind) {
    case ModelKind::kXxz:
      std::snprintf(buf, sizeof buf, "xxz J=%g delta=%g", J, delta);
      return buf;
    case ModelKind::kTfim:
      std::snprintf(buf, sizeof buf, "tfim J=%g h=%g", J, h);
      return buf;
    case ModelKind::kCustom:
      break;
  }
  std::snprintf(buf, sizeof buf, "custom terms=%zu k=%d", terms.size(),
                locality());
  return buf;
}

Matrix Model::local_density() const {
  validate();
  const int k = locality();
  Eigen::Index dim = 1;
  for (int i = 0; i < k; ++i) dim *= phys_dim;
  Matrix h = Matrix::Zero(dim, dim);
  for (const auto& t : terms) {
    Matrix p = Matrix::Identity(1, 1);
    for (int i = 0; i < k; ++i) {
      p = kron(p, i < t.span() ? t.factors[i].matrix
                               : Matrix::Identity(phys_dim, phys_dim));
    }
    h += t.coeff * p;
  }
  return h;
}

void Model::apply_hamiltonian(const Vector& psi, Vector& out, int length,
                              bool periodic) const {
  const int n_p = log2_exact(phys_dim);
  const int n = length * n_p;
  require(psi.size() == (Eigen::Index{1} << n), ErrorCode::kDimension,
          "state size does not match the chain length");
  out = Vector::Zero(psi.size());
  Vector tmp(psi.size());
  std::vector<int> targets(n_p);
  for (int j = 0; j < length; ++j) {
    for (const auto& t : terms) {
      if (!periodic && j + t.span() > length) continue;
      tmp = psi;
      for (int i = 0; i < t.span(); ++i) {
        const int site = (j + i) % length;
        for (int q = 0; q < n_p; ++q) targets[q] = site * n_p + q;
        apply_matrix(std::span<cplx>(tmp.data(), tmp.size()), n,
                     t.factors[i].matrix, targets);
      }
      out += t.coeff * tmp;
    }
  }
}

Matrix Model::dense_hamiltonian(int length, bool periodic) const {
  const int n = length * log2_exact(phys_dim);
  require(n <= 12, ErrorCode::kCapacity, "dense Hamiltonian is capped at 12 qubits");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix h(dim, dim);
  Vector e = Vector::Zero(dim);
  Vector col;
  for (Eigen::Index c = 0; c < dim; ++c) {
    e.setZero();
    e(c) = 1.0;
    apply_hamiltonian(e, col, length, periodic);
    h.col(c) = col;
  }
  return h;
}

}  // namespace holoq
