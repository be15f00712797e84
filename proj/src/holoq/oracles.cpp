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

#include "holoq/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "holoq/errors.hpp"
#include "holoq/minimize.hpp"
#include "holoq/rng.hpp"
#include "holoq/textio.hpp"

namespace holoq {

namespace {

using std::numbers::pi;

// Adaptive 61-point Gauss-Kronrod on [0, pi]; nodes are interior, so the
// removable 0/0 at k = 0 in the critical integrands is never evaluated.
template <class F>
double integrate_0_pi(F f, double* error) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, pi, 20, 1e-14, &err);
  if (error) *error = err;
  return v;
}

double dispersion(double g, double k) {
  return std::sqrt(std::max(0.0, 1.0 + g * g - 2.0 * g * std::cos(k)));
}

}  // namespace

std::string format_oracle_csv(const std::vector<OracleResult>& rows) {
  std::ostringstream os;
  os << "quantity,value,method,accuracy\n";
  for (const auto& r : rows) {
    os << r.quantity << ',' << textio::format_decimal(r.value) << ','
       << r.method << ',' << textio::format_decimal(r.accuracy) << '\n';
  }
  return os.str();
}

double heisenberg_exact_energy() { return 1.0 - 4.0 * std::log(2.0); }

double tfim_fermion_g(double g, int r) {
  require(g > 0, ErrorCode::kInvalidArgument, "transverse field must be positive");
  double err = 0.0;
  const double v = integrate_0_pi(
      [g, r](double k) {
        return (g * std::cos(k * r) - std::cos(k * (r - 1))) / dispersion(g, k);
      },
      &err);
  require(err < 1e-10, ErrorCode::kNonConvergence,
          "fermion two-point quadrature missed its accuracy target");
  return v / pi;
}

FreeFermionResult tfim_free_fermion(double g, int r_max) {
  require(g > 0, ErrorCode::kInvalidArgument, "transverse field must be positive");
  require(r_max >= 0, ErrorCode::kInvalidArgument, "r_max must be >= 0");
  FreeFermionResult out;
  double err = 0.0;
  out.energy = -integrate_0_pi([g](double k) { return dispersion(g, k); }, &err) / pi;
  out.energy_accuracy = std::max(err / pi, 1e-14);
  require(out.energy_accuracy < 1e-10, ErrorCode::kNonConvergence,
          "energy quadrature missed its accuracy target");

  // G_m for m = -r_max .. r_max + 1.
  std::vector<double> gm(2 * r_max + 2);
  auto G = [&](int m) -> double& { return gm[m + r_max]; };
  for (int m = -r_max; m <= r_max + 1; ++m) G(m) = tfim_fermion_g(g, m);
  out.mx = G(0);
  for (int r = 0; r <= r_max; ++r) {
    if (r == 0) {
      out.cx.push_back(1.0 - out.mx * out.mx);
      out.cz.push_back(1.0);
      continue;
    }
    out.cx.push_back(-G(r) * G(-r));
    Eigen::MatrixXd t(r, r);
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) t(i, j) = G(j - i + 1);
    }
    out.cz.push_back((r % 2 == 0 ? 1.0 : -1.0) * t.partialPivLu().determinant());
  }
  return out;
}

GroundState exact_diag_ground(const Model& model, int length,
                              Boundary boundary) {
  model.validate();
  require(length >= 1, ErrorCode::kInvalidArgument, "chain length must be >= 1");
  const int n = length * log2_exact(model.phys_dim);
  require(n <= 16, ErrorCode::kCapacity, "exact diagonalisation is capped at 16 qubits");
  const bool periodic = boundary == Boundary::kPeriodic;
  const Eigen::Index dim = Eigen::Index{1} << n;
  const int krylov = static_cast<int>(std::min<Eigen::Index>(60, dim));
  constexpr int kMaxRestarts = 500;
  constexpr double kResidualTol = 1e-9;

  PhiloxStream rng(0x1a2c05ULL, 0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(rng.normal(), rng.normal());
  v.normalize();

  GroundState out;
  Matrix basis(dim, krylov);
  Vector w;
  for (int restart = 0; restart < kMaxRestarts; ++restart) {
    std::vector<double> alpha;
    std::vector<double> beta;
    basis.col(0) = v;
    int m = 0;
    for (; m < krylov; ++m) {
      model.apply_hamiltonian(basis.col(m), w, length, periodic);
      ++out.iterations;
      alpha.push_back(basis.col(m).dot(w).real());
      // Full reorthogonalisation, twice.
      for (int pass = 0; pass < 2; ++pass) {
        const Vector c = basis.leftCols(m + 1).adjoint() * w;
        w -= basis.leftCols(m + 1) * c;
      }
      const double b = w.norm();
      if (m + 1 == krylov || b < 1e-12) {
        ++m;
        break;
      }
      beta.push_back(b);
      basis.col(m + 1) = w / b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXd y = es.eigenvectors().col(0);
    v = basis.leftCols(m) * y.cast<cplx>();
    v.normalize();
    model.apply_hamiltonian(v, w, length, periodic);
    out.energy = v.dot(w).real();
    out.residual = (w - out.energy * v).norm();
    if (out.residual < kResidualTol) {
      out.state = v;
      return out;
    }
  }
  fail(ErrorCode::kNonConvergence, "Lanczos did not reach residual 1e-9");
}

// ---------------------------------------------------------------------------
// Optimal infinite MPS.
//
// A cell site is a dchi x chi isometry C with rows (sigma, beta) and columns
// alpha; W_sigma = C.block(sigma * chi, 0, chi, chi) acts on bond density
// matrices as rho -> sum_s W_s rho W_s^dag.

namespace {

struct CellEnergy {
  int d = 2;
  int chi = 1;
  Matrix h2;  // two-site density, site one most significant

  Matrix w(const Matrix& c, int s) const { return c.block(s * chi, 0, chi, chi); }

  Matrix transfer(const Matrix& c) const {
    Matrix m = Matrix::Zero(chi * chi, chi * chi);
    for (int s = 0; s < d; ++s) {
      const Matrix ws = w(c, s);
      m += kron(ws.conjugate(), ws);
    }
    return m;
  }

  Matrix fixed_point(const std::vector<Matrix>& cell) const {
    Matrix m = Matrix::Identity(chi * chi, chi * chi);
    for (const auto& c : cell) m = transfer(c) * m;
    Eigen::ComplexEigenSolver<Matrix> es(m);
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i) {
      if (std::abs(es.eigenvalues()(i) - 1.0) < std::abs(es.eigenvalues()(best) - 1.0)) {
        best = i;
      }
    }
    Matrix rho = es.eigenvectors().col(best).reshaped(chi, chi);
    rho /= rho.trace();
    return (rho + rho.adjoint()) / 2.0;
  }

  double bond(const Matrix& rho, const Matrix& c1, const Matrix& c2) const {
    std::vector<Matrix> k(d * d);
    for (int s1 = 0; s1 < d; ++s1) {
      for (int s2 = 0; s2 < d; ++s2) k[s1 * d + s2] = w(c2, s2) * w(c1, s1);
    }
    cplx e = 0.0;
    for (int a = 0; a < d * d; ++a) {
      const Matrix kr = k[a] * rho;
      for (int b = 0; b < d * d; ++b) {
        if (h2(b, a) == cplx(0.0)) continue;
        e += h2(b, a) * (kr * k[b].adjoint()).trace();
      }
    }
    return e.real();
  }

  double per_site(const std::vector<Matrix>& cell) const {
    const Matrix rho = fixed_point(cell);
    const int n = static_cast<int>(cell.size());
    double e = 0.0;
    Matrix r = rho;
    for (int p = 0; p < n; ++p) {
      e += bond(r, cell[p], cell[(p + 1) % n]);
      const Matrix wc = cell[p];
      Matrix next = Matrix::Zero(chi, chi);
      for (int s = 0; s < d; ++s) next += w(wc, s) * r * w(wc, s).adjoint();
      r = next;
    }
    return e / n;
  }
};

Matrix symmetric_bond_density(const Model& model) {
  const int d = model.phys_dim;
  Matrix h = Matrix::Zero(d * d, d * d);
  const Matrix id = Matrix::Identity(d, d);
  for (const auto& t : model.terms) {
    if (t.span() == 2) {
      h += t.coeff * kron(t.factors[0].matrix, t.factors[1].matrix);
    } else {
      h += 0.5 * t.coeff *
           (kron(t.factors[0].matrix, id) + kron(id, t.factors[0].matrix));
    }
  }
  return h;
}

// Parameters of one site: anti-Hermitian generator with blocks A11 (chi x
// chi) and A21 ((d-1)chi x chi), A12 = -A21^dag, A22 = 0.
int generator_params(int d, int chi) { return chi * chi + 2 * (d - 1) * chi * chi; }

Matrix generator(const double* p, int d, int chi) {
  const int n = d * chi;
  Matrix a = Matrix::Zero(n, n);
  int k = 0;
  for (int i = 0; i < chi; ++i) a(i, i) = cplx(0.0, p[k++]);
  for (int i = 0; i < chi; ++i) {
    for (int j = i + 1; j < chi; ++j) {
      a(i, j) = cplx(p[k], p[k + 1]);
      a(j, i) = -std::conj(a(i, j));
      k += 2;
    }
  }
  for (int i = chi; i < n; ++i) {
    for (int j = 0; j < chi; ++j) {
      a(i, j) = cplx(p[k], p[k + 1]);
      a(j, i) = -std::conj(a(i, j));
      k += 2;
    }
  }
  return a;
}

Matrix isometry_from(const Matrix& u0, const double* p, int d, int chi) {
  const Matrix a = generator(p, d, chi);
  // exp(A) = exp(-i (iA)) with iA Hermitian.
  return (u0 * expm_hermitian(cplx(0.0, 1.0) * a, 1.0)).leftCols(chi);
}

// Nearest isometry (polar factor) of a dchi x chi column block.
Matrix polar(const Matrix& c) {
  Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Imaginary-time two-site iTEBD in Vidal form; returns the right-canonical
// isometries B_A = Gamma_A lambda_A and B_B = Gamma_B lambda_B.
std::vector<Matrix> itebd_seed(const Matrix& h2, int d, int chi, std::uint64_t seed) {
  PhiloxStream rng(seed, 0);
  std::vector<std::vector<Matrix>> gam(2, std::vector<Matrix>(d));
  std::vector<Eigen::VectorXd> lam(2, Eigen::VectorXd::Constant(chi, 1.0 / std::sqrt(chi)));
  for (auto& g : gam) {
    for (auto& m : g) {
      m = Matrix(chi, chi);
      for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = cplx(rng.normal(), rng.normal());
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(h2);
  const std::vector<double> steps = {0.1, 0.03, 0.01, 0.003, 0.001};
  auto safe_inv = [](double x) { return x > 1e-13 ? 1.0 / x : 0.0; };
  for (double dt : steps) {
    const Matrix gate = es.eigenvectors() *
                        (-dt * es.eigenvalues().array()).exp().matrix().asDiagonal() *
                        es.eigenvectors().adjoint();
    for (int step = 0; step < 4000; ++step) {
      double change = 0.0;
      for (int a = 0; a < 2; ++a) {
        const int b = 1 - a;
        // theta(alpha s, t gamma) with all three weights.
        Matrix theta = Matrix::Zero(chi * d, d * chi);
        for (int s = 0; s < d; ++s) {
          for (int t = 0; t < d; ++t) {
            const Matrix blk = lam[b].asDiagonal() * gam[a][s] * lam[a].asDiagonal() *
                               gam[b][t] * lam[b].asDiagonal();
            for (int i = 0; i < chi; ++i) {
              for (int j = 0; j < chi; ++j) theta(i * d + s, t * chi + j) = blk(i, j);
            }
          }
        }
        Matrix rot = Matrix::Zero(chi * d, d * chi);
        for (int i = 0; i < chi; ++i) {
          for (int j = 0; j < chi; ++j) {
            for (int s = 0; s < d; ++s) {
              for (int t = 0; t < d; ++t) {
                cplx acc = 0.0;
                for (int u = 0; u < d; ++u) {
                  for (int v = 0; v < d; ++v) {
                    acc += gate(s * d + t, u * d + v) * theta(i * d + u, v * chi + j);
                  }
                }
                rot(i * d + s, t * chi + j) = acc;
              }
            }
          }
        }
        Eigen::BDCSVD<Matrix> svd(rot, Eigen::ComputeThinU | Eigen::ComputeThinV);
        Eigen::VectorXd sv = svd.singularValues().head(chi);
        const double norm = sv.norm();
        require(norm > 0 && std::isfinite(norm), ErrorCode::kNonConvergence,
                "imaginary-time evolution lost the state");
        sv /= norm;
        change = std::max(change, (sv - lam[a]).cwiseAbs().maxCoeff());
        lam[a] = sv;
        for (int s = 0; s < d; ++s) {
          for (int i = 0; i < chi; ++i) {
            for (int j = 0; j < chi; ++j) {
              gam[a][s](i, j) = svd.matrixU()(i * d + s, j) * safe_inv(lam[b](i));
              // The right factor is V^dag.
              gam[b][s](j, i) = std::conj(svd.matrixV()(s * chi + i, j)) *
                                safe_inv(lam[b](i));
            }
          }
        }
      }
      if (change < 1e-11) break;
    }
  }
  std::vector<Matrix> out;
  for (int a = 0; a < 2; ++a) {
    Matrix c(d * chi, chi);
    for (int s = 0; s < d; ++s) {
      const Matrix v = gam[a][s] * lam[a].asDiagonal();
      c.block(s * chi, 0, chi, chi) = v.transpose();
    }
    out.push_back(polar(c));
  }
  return out;
}

Matrix random_isometry(int d, int chi, PhiloxStream& rng) {
  Matrix g(d * chi, chi);
  for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = cplx(rng.normal(), rng.normal());
  return polar(g);
}

struct Polished {
  double energy = 0.0;
  bool converged = false;
  double gradient_norm = 0.0;
  std::string message;
};

Polished polish(const CellEnergy& ce, std::vector<Matrix> cell,
                const MpsOptimumOptions& options) {
  const int d = ce.d;
  const int chi = ce.chi;
  const int np = generator_params(d, chi);
  const int n = static_cast<int>(cell.size());
  std::vector<Matrix> base;
  for (const auto& c : cell) base.push_back(complete_to_unitary(c));
  const Objective f = [&](const std::vector<double>& p) {
    std::vector<Matrix> cs;
    for (int i = 0; i < n; ++i) cs.push_back(isometry_from(base[i], p.data() + i * np, d, chi));
    return ce.per_site(cs);
  };
  BfgsOptions opt;
  opt.initial_step = 0.1;
  opt.max_iterations = options.max_iterations;
  opt.gradient_tol = options.gradient_tol;
  opt.flat_gradient = 1e-5;
  const BfgsResult r = bfgs_minimize(
      f, [&](const std::vector<double>& p) { return central_gradient(f, p, 1e-5); },
      std::vector<double>(n * np, 0.0), opt);
  return {r.value, r.converged, r.gradient_norm, r.message};
}

}  // namespace

MpsOptimum optimal_mps_energy(const Model& model, int chi,
                              const MpsOptimumOptions& options) {
  model.validate();
  require(chi >= 1 && chi <= 8, ErrorCode::kInvalidArgument,
          "optimal MPS oracle supports 1 <= chi <= 8");
  require(model.locality() <= 2, ErrorCode::kUnsupported,
          "optimal MPS oracle handles nearest-neighbour models only");
  CellEnergy ce;
  ce.d = model.phys_dim;
  ce.chi = chi;
  ce.h2 = symmetric_bond_density(model);

  const std::vector<Matrix> seed = itebd_seed(ce.h2, ce.d, chi, 0x17eb0ULL + chi);
  std::vector<std::vector<Matrix>> starts = {{seed[0]}, seed};
  PhiloxStream rng(0x0a11ce5ULL + chi, 0);
  for (int k = 0; k < options.seeds; ++k) {
    starts.push_back({random_isometry(ce.d, chi, rng)});
    starts.push_back({random_isometry(ce.d, chi, rng), random_isometry(ce.d, chi, rng)});
  }
  MpsOptimum best;
  best.energy = std::numeric_limits<double>::infinity();
  for (const auto& s : starts) {
    const Polished p = polish(ce, s, options);
    if (p.energy < best.energy) {
      best.energy = p.energy;
      best.cell = static_cast<int>(s.size());
      best.converged = p.converged;
      best.message = p.message;
      // First-order estimate of the remaining descent.
      best.accuracy = std::max(1e-8, p.gradient_norm * p.gradient_norm);
    }
  }
  return best;
}

}  // namespace holoq
