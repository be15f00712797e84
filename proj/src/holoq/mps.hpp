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

// Matrix-product states with open boundaries,
//
//   |psi> = sum_{s_1..s_l} L^T V[1]_{s_1} ... V[l]_{s_l} R |s_1 ... s_l>,
//
// in the right canonical gauge sum_s V_s V_s^dag = 1, and the bond-space
// channels that evaluate their correlation functions.
//
// Index convention everywhere: (left bond, physical, right bond).

#ifndef HOLOQ_MPS_HPP_
#define HOLOQ_MPS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "holoq/linalg.hpp"

namespace holoq {

class MpsTensor {
 public:
  MpsTensor() = default;
  MpsTensor(int left_dim, int phys_dim, int right_dim);
  // One (left_dim x right_dim) matrix per physical index.
  explicit MpsTensor(std::vector<Matrix> matrices);

  int left_dim() const { return left_; }
  int phys_dim() const { return static_cast<int>(mats_.size()); }
  int right_dim() const { return right_; }

  const Matrix& operator[](int sigma) const { return mats_[sigma]; }
  Matrix& operator[](int sigma) { return mats_[sigma]; }
  cplx operator()(int alpha, int sigma, int beta) const {
    return mats_[sigma](alpha, beta);
  }
  const std::vector<Matrix>& matrices() const { return mats_; }

  // max-norm of sum_s V_s V_s^dag - 1.
  double right_canonical_defect() const;
  bool all_finite() const;

  // Zero-pads both bond dimensions up to `chi`.
  MpsTensor padded(int chi) const;

 private:
  int left_ = 0;
  int right_ = 0;
  std::vector<Matrix> mats_;
};

enum class Gauge { kNone, kRight };

struct Mps {
  std::vector<MpsTensor> tensors;
  Vector left;
  Vector right;
  Gauge gauge = Gauge::kNone;

  int length() const { return static_cast<int>(tensors.size()); }
  int max_bond_dim() const;
  // Throws kDimension when adjacent bonds or boundaries disagree.
  void validate() const;
};

struct SiteOperator {
  Matrix matrix;
  bool hermitian = true;

  SiteOperator() = default;
  explicit SiteOperator(Matrix m, bool herm = true);
  static SiteOperator pauli(char label) { return SiteOperator(pauli::from_label(label)); }
  int dim() const { return static_cast<int>(matrix.rows()); }
};

// Sites are 1-based.
using SiteOps = std::map<int, SiteOperator>;

// chi^2 x chi^2 matrix acting on column-major vec(rho), with rho the
// bond-space matrix of the channel rho -> sum_s V_s^dag rho V_s.
struct BondSuperoperator {
  Matrix matrix;

  int bond_dim() const;
  Matrix apply(const Matrix& rho) const;
};

enum class Closure {
  kPostselect,  // <<R| ... |R>>
  kTrace,       // trace over the final bond space
};

// Right-canonical copy with the physical state unchanged: residual factors
// move leftwards and the last one is absorbed into L; L is then normalised
// and its norm moved into R. Bond dimensions are first zero-padded to the
// largest one present. Throws kDegenerate on a zero-norm state.
Mps to_right_canonical(const Mps& mps);

// Unitary on (physical x bond) with the physical index most significant,
// whose sigma'=0 columns hold the tensor: U(s*chi + b, a) = V_s(a, b).
// Requires a square, right-canonical tensor with power-of-two dimensions.
Matrix embed_isometry(const MpsTensor& tensor);

// Inverse of embed_isometry: reads the sigma'=0 columns.
MpsTensor extract_tensor(const Matrix& unitary, int bond_dim, int phys_dim);

BondSuperoperator transfer_channel(const MpsTensor& tensor);
BondSuperoperator operator_channel(const MpsTensor& tensor,
                                   const SiteOperator& op);

// Direct (non-vectorised) channel application:
//   rho -> sum_{s,t} <t|O|s> V_t^dag rho V_s, or sum_s V_s^dag rho V_s.
Matrix apply_channel(const MpsTensor& tensor, const Matrix& rho,
                     const Matrix* op = nullptr);

// Initial bond matrix conj(L) L^T for the channel picture.
Matrix initial_bond_matrix(const Vector& left);

// Channel contraction of <psi| prod_j O_j |psi>; the state need not be
// normalised. kTrace replaces the R closure by a trace over the bond space.
// Requires a right-canonical MPS.
cplx contract_expectation(const Mps& mps, const SiteOps& ops,
                          Closure closure = Closure::kPostselect);

// contract_expectation divided by the same contraction without operators.
cplx normalized_expectation(const Mps& mps, const SiteOps& ops,
                            Closure closure = Closure::kPostselect);

// Brute-force contraction to the full Q^l amplitude vector, site 1 most
// significant.
Vector to_dense(const Mps& mps);

// Gaussian random entries (uniform dims), seeded; not canonical.
Mps random_mps(int length, int bond_dim, int phys_dim, std::uint64_t seed);

// Text container with hexadecimal floats; round trips are bit exact.
void save_mps(const Mps& mps, const std::filesystem::path& path);
Mps load_mps(const std::filesystem::path& path);
std::string format_mps(const Mps& mps);
Mps parse_mps(const std::string& text);

}  // namespace holoq

#endif  // HOLOQ_MPS_HPP_
