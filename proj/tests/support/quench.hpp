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

// Dense references for Trotterized quenches on the unrolled chain: every
// site has its own register, the bond register sits last, and gates are
// applied layer by layer with no slicing or reuse.

#ifndef HOLOQ_TESTS_SUPPORT_QUENCH_HPP_
#define HOLOQ_TESTS_SUPPORT_QUENCH_HPP_

#include <algorithm>
#include <functional>
#include <vector>

#include <Eigen/Eigenvalues>

#include "holoq/quads.hpp"
#include "support/specs.hpp"

namespace holoq::testing {

// Applies a d x d operator to the middle factor of a left x d x right
// tensor-product index.
inline Vector apply_span(const Vector& psi, std::size_t left, std::size_t d,
                         std::size_t right, const Matrix& op) {
  Vector out = Vector::Zero(psi.size());
  for (std::size_t a = 0; a < left; ++a) {
    for (std::size_t s = 0; s < d; ++s) {
      for (std::size_t t = 0; t < d; ++t) {
        const cplx o = op(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
        if (o == cplx(0.0)) continue;
        for (std::size_t b = 0; b < right; ++b) {
          out(static_cast<Eigen::Index>((a * d + s) * right + b)) +=
              o * psi(static_cast<Eigen::Index>((a * d + t) * right + b));
        }
      }
    }
  }
  return out;
}

// Unrolled chain of `length` original sites of dimension q plus a bond
// register of dimension chi.
struct DenseChain {
  int length;
  std::size_t q;
  std::size_t chi;

  std::size_t pow_q(int n) const {
    std::size_t p = 1;
    for (int i = 0; i < n; ++i) p *= q;
    return p;
  }
  // Operator on original sites first .. first + span - 1.
  Vector apply(const Vector& psi, int first, int span, const Matrix& op) const {
    return apply_span(psi, pow_q(first - 1), pow_q(span),
                      pow_q(length - first - span + 1) * chi, op);
  }
};

inline DenseChain chain_of(const HoloSpec& spec, int length) {
  return {length, static_cast<std::size_t>(spec.phys_dim()),
          static_cast<std::size_t>(spec.bond_dim())};
}

// Initial state; under post-selection the bond register is projected onto
// conj(R) and the state renormalised.
inline Vector dense_initial(const HoloSpec& spec, int length) {
  Vector psi = unrolled_state(spec, length);
  if (spec.policy == RightPolicy::kPostselect && spec.n_b > 0) {
    const Vector r = spec.right.conjugate() / spec.right.norm();
    const std::size_t left = static_cast<std::size_t>(psi.size()) / r.size();
    psi = apply_span(psi, left, static_cast<std::size_t>(r.size()), 1,
                     r * r.adjoint());
    psi.normalize();
  }
  return psi;
}

// Layers [from, to) of the plan, gates taken verbatim from the plan.
inline Vector apply_layers(const Vector& psi, const DenseChain& ch,
                           const TrotterPlan& plan, int from, int to,
                           bool adjoint = false) {
  Vector phi = psi;
  for (int l = from; l < to; ++l) {
    for (const auto& g : plan.layers[static_cast<std::size_t>(l)].gates) {
      const Matrix m = adjoint ? Matrix(g.matrix.adjoint()) : g.matrix;
      phi = ch.apply(phi, (g.site - 1) * plan.block + 1, 2 * plan.block, m);
    }
  }
  return phi;
}

// Expected product of measure-and-continue records: each measurement splits
// the state into eigenspace branches weighted by the eigenvalue.
inline double dense_quench(const HoloSpec& spec, const TrotterPlan& plan,
                           std::vector<SpaceTimePoint> points) {
  const DenseChain ch = chain_of(spec, plan.length);
  std::stable_sort(points.begin(), points.end(),
                   [](const auto& a, const auto& b) { return a.tau < b.tau; });
  std::function<double(const Vector&, int, std::size_t)> go =
      [&](const Vector& psi, int layer, std::size_t k) -> double {
    if (k == points.size()) return psi.squaredNorm();
    const auto& p = points[k];
    const Vector phi = apply_layers(psi, ch, plan, layer, p.tau);
    Eigen::SelfAdjointEigenSolver<Matrix> es(p.op.matrix);
    double total = 0.0;
    std::vector<bool> used(static_cast<std::size_t>(es.eigenvalues().size()), false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      Matrix proj = Matrix::Zero(p.op.dim(), p.op.dim());
      for (Eigen::Index j = i; j < es.eigenvalues().size(); ++j) {
        if (std::abs(es.eigenvalues()(j) - es.eigenvalues()(i)) < 1e-9) {
          proj += es.eigenvectors().col(j) * es.eigenvectors().col(j).adjoint();
          used[static_cast<std::size_t>(j)] = true;
        }
      }
      total += es.eigenvalues()(i) * go(ch.apply(phi, p.x, 1, proj), p.tau, k + 1);
    }
    return total;
  };
  return go(dense_initial(spec, plan.length), 0, 0);
}

// <psi| W(t) V W(t) V |psi> with W(t) = U^dag W U.
inline cplx dense_otoc(const HoloSpec& spec, const TrotterPlan& plan, int x_w,
                       const Matrix& w, int x_v, const Matrix& v) {
  const DenseChain ch = chain_of(spec, plan.length);
  const Vector psi = dense_initial(spec, plan.length);
  Vector phi = psi;
  for (int rep = 0; rep < 2; ++rep) {
    phi = ch.apply(phi, x_v, 1, v);
    phi = apply_layers(phi, ch, plan, 0, plan.r());
    phi = ch.apply(phi, x_w, 1, w);
    Vector back = phi;
    for (int l = plan.r() - 1; l >= 0; --l) back = apply_layers(back, ch, plan, l, l + 1, true);
    phi = back;
  }
  return psi.dot(phi);
}

// The unsheared circuit: all sites prepared on their own registers (bond
// qubits first, then sites in order), then every layer in turn.
inline Circuit unsheared_circuit(const HoloSpec& spec, const TrotterPlan& plan) {
  const int len = plan.length;
  Circuit c(spec.n_b + len * spec.n_p);
  std::vector<int> bond;
  for (int k = 0; k < spec.n_b; ++k) bond.push_back(k);
  if (spec.n_b > 0) c.gate(state_prep_unitary(spec.left), bond);
  auto qubits = [&](int first, int sites) {
    std::vector<int> q;
    for (int k = 0; k < sites * spec.n_p; ++k) {
      q.push_back(spec.n_b + (first - 1) * spec.n_p + k);
    }
    return q;
  };
  for (int i = 1; i <= len; ++i) {
    auto t = qubits(i, 1);
    t.insert(t.end(), bond.begin(), bond.end());
    c.gate(spec.unitary_for_site(i), t);
  }
  for (const auto& layer : plan.layers) {
    for (const auto& g : layer.gates) {
      c.gate(g.matrix, qubits((g.site - 1) * plan.block + 1, 2 * plan.block));
    }
  }
  return c;
}

// Dense Hamiltonian of a chain of qubits from explicit placements.
inline Matrix dense_h(int length, const std::vector<std::pair<int, Matrix>>& terms) {
  const Eigen::Index dim = Eigen::Index{1} << length;
  Matrix h = Matrix::Zero(dim, dim);
  for (const auto& [first, op] : terms) {
    const int span = log2_exact(op.rows());
    const Eigen::Index left = Eigen::Index{1} << (first - 1);
    const Eigen::Index right = Eigen::Index{1} << (length - first - span + 1);
    h += kron(kron(Matrix::Identity(left, left), op), Matrix::Identity(right, right));
  }
  return h;
}

// exp(-i h t) by diagonalisation.
inline Matrix dense_expm(const Matrix& h, double t) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd e = es.eigenvalues();
  Vector phase(e.size());
  for (Eigen::Index i = 0; i < e.size(); ++i) phase(i) = std::exp(cplx(0.0, -e(i) * t));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

inline Vector evolve_exact(const Matrix& h, const Vector& psi, double t) {
  return dense_expm(h, t) * psi;
}

}  // namespace holoq::testing

#endif  // HOLOQ_TESTS_SUPPORT_QUENCH_HPP_
