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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "holoq/errors.hpp"
#include "holoq/oracles.hpp"

namespace holoq {
namespace {

using std::numbers::pi;

// Bulk <A_i B_j> on an ED state, sites 0-based.
double dense_corr(const Vector& psi, int length, int i, const Matrix& a, int j,
                  const Matrix& b) {
  Vector v = psi;
  const int ti[1] = {i};
  const int tj[1] = {j};
  apply_matrix(std::span<cplx>(v.data(), v.size()), length, a, ti);
  apply_matrix(std::span<cplx>(v.data(), v.size()), length, b, tj);
  return psi.dot(v).real();
}

double dense_one(const Vector& psi, int length, int i, const Matrix& a) {
  return dense_corr(psi, length, i, a, i, Matrix::Identity(2, 2));
}

TEST_CASE("Bethe constant") {
  const double e = heisenberg_exact_energy();
  CHECK(e == doctest::Approx(-1.7725887222397811).epsilon(1e-15));
  CHECK(std::abs(e - (-1.773)) < 5e-4);  // quoted to three decimals
  CHECK(e < -1.0);                        // below the Neel mean field
  // ln 2 as the integral of 1/(1+x) on [0, 1].
  const double ln2 = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      [](double x) { return 1.0 / (1.0 + x); }, 0.0, 1.0);
  CHECK(std::abs(e - (1.0 - 4.0 * ln2)) < 1e-15);
}

TEST_CASE("free-fermion energy") {
  const FreeFermionResult crit = tfim_free_fermion(1.0, 0);
  CHECK(std::abs(crit.energy - (-4.0 / pi)) < 1e-13);
  CHECK(crit.energy_accuracy <= 1e-10);
  CHECK(std::abs(crit.mx - 2.0 / pi) < 1e-12);
  // Paramagnetic limit: E -> -h with a 1/(4h) correction.
  for (double h : {10.0, 100.0, 1000.0}) {
    const double e = tfim_free_fermion(h, 0).energy;
    CHECK(std::abs(e + h) < 1.0 / h);
    CHECK(e < -h);
  }
  CHECK_THROWS_AS(tfim_free_fermion(0.0, 2), Error);
  CHECK_THROWS_AS(tfim_free_fermion(-1.0, 2), Error);
}

TEST_CASE("critical correlators match closed forms") {
  // At g = 1, G_r = -2 / (pi (2r - 1)), so C_X(r) = 4 / (pi^2 (4r^2 - 1)),
  // and <Z_0 Z_r> = (2/pi)^r 2^(2r(r-1)) H(r)^4 / H(2r) with
  // H(n) = prod_{k<n} k^(n-k).
  const int r_max = 12;
  const FreeFermionResult ff = tfim_free_fermion(1.0, r_max);
  auto log_h = [](int n) {
    double s = 0.0;
    for (int k = 1; k < n; ++k) s += (n - k) * std::log(k);
    return s;
  };
  for (int r = 1; r <= r_max; ++r) {
    CHECK(std::abs(tfim_fermion_g(1.0, r) + 2.0 / (pi * (2 * r - 1))) < 1e-12);
    CHECK(std::abs(ff.cx[r] - 4.0 / (pi * pi * (4.0 * r * r - 1))) < 1e-12);
    const double lz = r * std::log(2.0 / pi) + 2.0 * r * (r - 1) * std::log(2.0) +
                      4.0 * log_h(r) - log_h(2 * r);
    CHECK(std::abs(ff.cz[r] - std::exp(lz)) < 1e-10);
  }
  CHECK(ff.cz[0] == 1.0);
  CHECK(std::abs(ff.cx[0] - (1.0 - 4.0 / (pi * pi))) < 1e-12);
}

TEST_CASE("free-fermion correlators against ED") {
  // Gapped chain, open boundary, bulk pair centred on 14 sites.
  const double g = 1.5;
  const int len = 14;
  const FreeFermionResult ff = tfim_free_fermion(g, 3);
  const GroundState gs = exact_diag_ground(Model::tfim(1.0, g), len, Boundary::kOpen);
  CHECK(gs.residual < 1e-9);
  const Matrix x = pauli::X();
  const Matrix z = pauli::Z();
  const int i0 = 5;
  CHECK(std::abs(dense_one(gs.state, len, i0, x) - ff.mx) < 1e-3);
  for (int r = 1; r <= 3; ++r) {
    const double xx = dense_corr(gs.state, len, i0, x, i0 + r, x) -
                      dense_one(gs.state, len, i0, x) * dense_one(gs.state, len, i0 + r, x);
    CHECK(std::abs(xx - ff.cx[r]) < 1e-3);
    CHECK(std::abs(dense_corr(gs.state, len, i0, z, i0 + r, z) - ff.cz[r]) < 1e-3);
  }
}

TEST_CASE("critical energy against extrapolated periodic ED") {
  // e(L) = e_inf + a / L^2 + b / L^4 through L = 12, 14, 16.
  Eigen::Matrix3d m;
  Eigen::Vector3d rhs;
  int row = 0;
  for (int len : {12, 14, 16}) {
    const GroundState gs = exact_diag_ground(Model::tfim(1.0, 1.0), len, Boundary::kPeriodic);
    CHECK(gs.residual < 1e-9);
    m.row(row) << 1.0, 1.0 / (len * len), 1.0 / std::pow(len, 4);
    rhs(row) = gs.energy / len;
    ++row;
  }
  const Eigen::Vector3d fit = m.colPivHouseholderQr().solve(rhs);
  CHECK(std::abs(fit(0) - tfim_free_fermion(1.0, 0).energy) < 1e-4);
}

TEST_CASE("exact diagonalisation") {
  const GroundState two = exact_diag_ground(Model::xxz(1.0, 1.0), 2, Boundary::kOpen);
  CHECK(std::abs(two.energy - (-3.0)) < 1e-10);
  CHECK(two.residual < 1e-9);

  const GroundState heis = exact_diag_ground(Model::xxz(1.0, 1.0), 12, Boundary::kPeriodic);
  CHECK(std::abs(heis.energy / 12 / heisenberg_exact_energy() - 1.0) < 0.02);

  const GroundState tf = exact_diag_ground(Model::tfim(1.0, 1.0), 12, Boundary::kPeriodic);
  CHECK(std::abs(tf.energy / 12 - tfim_free_fermion(1.0, 0).energy) < 1e-2);

  // Lanczos agrees with a dense eigensolver on a small chain.
  const Model xxz = Model::xxz(0.7, -0.4);
  const GroundState small = exact_diag_ground(xxz, 6, Boundary::kOpen);
  Eigen::SelfAdjointEigenSolver<Matrix> es(xxz.dense_hamiltonian(6, false));
  CHECK(std::abs(small.energy - es.eigenvalues()(0)) < 1e-10);

  CHECK_THROWS_AS(exact_diag_ground(xxz, 17, Boundary::kOpen), Error);
}

TEST_CASE("optimal MPS: Heisenberg") {
  const MpsOptimum one = optimal_mps_energy(Model::xxz(1.0, 1.0), 1);
  CHECK(std::abs(one.energy - (-1.0)) < 1e-8);
  CHECK(one.cell == 2);
  const MpsOptimum two = optimal_mps_energy(Model::xxz(1.0, 1.0), 2);
  CHECK(two.converged);
  CHECK(std::abs(two.energy - (-1.712)) < 5e-4);  // quoted to three decimals
  CHECK(two.energy > heisenberg_exact_energy());
}

TEST_CASE("optimal MPS: critical TFIM hierarchy") {
  const Model tfim = Model::tfim(1.0, 1.0);
  const double exact = tfim_free_fermion(1.0, 0).energy;
  const double e1 = optimal_mps_energy(tfim, 1).energy;
  // Product states: min over a of -cos^2 a - sin a.
  CHECK(std::abs(e1 - (-1.25)) < 1e-8);
  const double e2 = optimal_mps_energy(tfim, 2).energy;
  const MpsOptimum m4 = optimal_mps_energy(tfim, 4);
  CHECK(e2 <= e1);
  CHECK(m4.energy <= e2);
  CHECK(m4.energy >= exact - 1e-9);
  CHECK(std::abs(m4.energy / exact - 1.0) < 1e-4);
}

TEST_CASE("optimal MPS argument checks") {
  CHECK_THROWS_AS(optimal_mps_energy(Model::tfim(1.0, 1.0), 9), Error);
  ModelTerm t;
  t.factors = {SiteOperator::pauli('Z'), SiteOperator::pauli('I'), SiteOperator::pauli('Z')};
  try {
    optimal_mps_energy(Model::custom({t}), 2);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupported);
  }
}

TEST_CASE("oracle CSV") {
  const std::string csv = format_oracle_csv({{"heisenberg", -1.5, "bethe", 0.0}});
  CHECK(csv == "quantity,value,method,accuracy\nheisenberg,-1.5,bethe,0\n");
}

}  // namespace
}  // namespace holoq
