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

#include "holoq/mps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "holoq/errors.hpp"
#include "holoq/textio.hpp"

namespace holoq {

MpsTensor::MpsTensor(int left_dim, int phys_dim, int right_dim)
    : left_(left_dim), right_(right_dim) {
  require(left_dim > 0 && phys_dim > 0 && right_dim > 0,
          ErrorCode::kDimension, "tensor dimensions must be positive");
  mats_.assign(phys_dim, Matrix::Zero(left_dim, right_dim));
}

MpsTensor::MpsTensor(std::vector<Matrix> matrices) : mats_(std::move(matrices)) {
  require(!mats_.empty(), ErrorCode::kDimension, "tensor has no physical index");
  left_ = static_cast<int>(mats_[0].rows());
  right_ = static_cast<int>(mats_[0].cols());
  require(left_ > 0 && right_ > 0, ErrorCode::kDimension,
          "tensor dimensions must be positive");
  for (const auto& m : mats_) {
    require(m.rows() == left_ && m.cols() == right_, ErrorCode::kDimension,
            "tensor slices have inconsistent shapes");
  }
}

double MpsTensor::right_canonical_defect() const {
  Matrix acc = Matrix::Zero(left_, left_);
  for (const auto& m : mats_) acc += m * m.adjoint();
  return max_abs(acc - Matrix::Identity(left_, left_));
}

bool MpsTensor::all_finite() const {
  for (const auto& m : mats_) {
    if (!m.allFinite()) return false;
  }
  return true;
}

MpsTensor MpsTensor::padded(int chi) const {
  require(chi >= left_ && chi >= right_, ErrorCode::kDimension,
          "cannot pad to a smaller bond dimension");
  std::vector<Matrix> out;
  out.reserve(mats_.size());
  for (const auto& m : mats_) {
    Matrix p = Matrix::Zero(chi, chi);
    p.topLeftCorner(left_, right_) = m;
    out.push_back(std::move(p));
  }
  return MpsTensor(std::move(out));
}

int Mps::max_bond_dim() const {
  int chi = static_cast<int>(std::max(left.size(), right.size()));
  for (const auto& t : tensors) chi = std::max({chi, t.left_dim(), t.right_dim()});
  return chi;
}

void Mps::validate() const {
  require(!tensors.empty(), ErrorCode::kDimension, "MPS has no sites");
  require(left.size() == tensors.front().left_dim(), ErrorCode::kDimension,
          "left boundary does not match the first bond");
  require(right.size() == tensors.back().right_dim(), ErrorCode::kDimension,
          "right boundary does not match the last bond");
  for (std::size_t j = 0; j + 1 < tensors.size(); ++j) {
    require(tensors[j].right_dim() == tensors[j + 1].left_dim(),
            ErrorCode::kDimension,
            "bond mismatch between sites " + std::to_string(j + 1) + " and " +
                std::to_string(j + 2));
    require(tensors[j].phys_dim() == tensors[j + 1].phys_dim(),
            ErrorCode::kDimension, "sites have different physical dimensions");
  }
  for (const auto& t : tensors) {
    require(t.all_finite(), ErrorCode::kInvalidArgument,
            "tensor has non-finite entries");
  }
  require(left.allFinite() && right.allFinite(), ErrorCode::kInvalidArgument,
          "boundary has non-finite entries");
}

SiteOperator::SiteOperator(Matrix m, bool herm)
    : matrix(std::move(m)), hermitian(herm) {
  require(matrix.rows() == matrix.cols() && matrix.rows() > 0,
          ErrorCode::kDimension, "site operator must be square");
  require(!hermitian || is_hermitian(matrix), ErrorCode::kInvalidArgument,
          "site operator flagged Hermitian is not");
}

int BondSuperoperator::bond_dim() const {
  const auto chi = static_cast<int>(std::lround(std::sqrt(matrix.rows())));
  return chi;
}

Matrix BondSuperoperator::apply(const Matrix& rho) const {
  const int chi = bond_dim();
  require(rho.rows() == chi && rho.cols() == chi, ErrorCode::kDimension,
          "bond matrix has the wrong size");
  Vector v = matrix * rho.reshaped();
  return v.reshaped(chi, chi);
}

Mps to_right_canonical(const Mps& mps) {
  mps.validate();
  const int chi = mps.max_bond_dim();
  const int q = mps.tensors.front().phys_dim();
  const int len = mps.length();

  Mps out;
  out.tensors.reserve(len);
  for (const auto& t : mps.tensors) out.tensors.push_back(t.padded(chi));
  out.left = Vector::Zero(chi);
  out.left.head(mps.left.size()) = mps.left;
  out.right = Vector::Zero(chi);
  out.right.head(mps.right.size()) = mps.right;

  // A(alpha, s*chi + beta) = V_s(alpha, beta); factor A = C * Q with
  // orthonormal rows in Q via a Householder QR of A^dag.
  for (int j = len - 1; j >= 0; --j) {
    auto& t = out.tensors[j];
    Matrix a(chi, q * chi);
    for (int s = 0; s < q; ++s) a.middleCols(s * chi, chi) = t[s];
    Eigen::HouseholderQR<Matrix> qr(a.adjoint());
    Matrix qthin = qr.householderQ() * Matrix::Identity(q * chi, chi);
    Matrix rtop = qr.matrixQR().topRows(chi).triangularView<Eigen::Upper>();
    Matrix qrows = qthin.adjoint();
    Matrix c = rtop.adjoint();
    for (int s = 0; s < q; ++s) t[s] = qrows.middleCols(s * chi, chi);
    if (j > 0) {
      auto& prev = out.tensors[j - 1];
      for (int s = 0; s < q; ++s) prev[s] = prev[s] * c;
    } else {
      out.left = c.transpose() * out.left;
    }
  }

  const double norm = out.left.norm();
  require(norm > 1e-300, ErrorCode::kDegenerate, "MPS has zero norm");
  out.left /= norm;
  out.right *= norm;
  out.gauge = Gauge::kRight;
  const cplx nrm = contract_expectation(out, {});
  require(std::abs(nrm) > 1e-28, ErrorCode::kDegenerate, "MPS has zero norm");
  return out;
}

Matrix embed_isometry(const MpsTensor& tensor) {
  require(tensor.left_dim() == tensor.right_dim(), ErrorCode::kDimension,
          "embedding needs a square tensor");
  const int chi = tensor.left_dim();
  const int q = tensor.phys_dim();
  require(is_power_of_two(chi) && is_power_of_two(q), ErrorCode::kDimension,
          "bond and physical dimensions must be powers of two");
  const double defect = tensor.right_canonical_defect();
  if (defect > kAlgebraicTol) {
    throw IsometryError(defect, "tensor is not right canonical (defect " +
                                    std::to_string(defect) + ")");
  }
  Matrix cols(q * chi, chi);
  for (int s = 0; s < q; ++s) {
    cols.middleRows(s * chi, chi) = tensor[s].transpose();
  }
  return complete_to_unitary(cols);
}

MpsTensor extract_tensor(const Matrix& unitary, int bond_dim, int phys_dim) {
  require(unitary.rows() == static_cast<Eigen::Index>(bond_dim) * phys_dim &&
              unitary.cols() == unitary.rows(),
          ErrorCode::kDimension, "unitary does not match bond x physical");
  std::vector<Matrix> mats;
  mats.reserve(phys_dim);
  for (int s = 0; s < phys_dim; ++s) {
    mats.push_back(
        unitary.block(s * bond_dim, 0, bond_dim, bond_dim).transpose());
  }
  return MpsTensor(std::move(mats));
}

BondSuperoperator transfer_channel(const MpsTensor& tensor) {
  require(tensor.left_dim() == tensor.right_dim(), ErrorCode::kDimension,
          "channel needs a square tensor");
  const int chi = tensor.left_dim();
  BondSuperoperator out{Matrix::Zero(chi * chi, chi * chi)};
  for (int s = 0; s < tensor.phys_dim(); ++s) {
    out.matrix += kron(tensor[s].transpose(), tensor[s].adjoint());
  }
  return out;
}

BondSuperoperator operator_channel(const MpsTensor& tensor,
                                   const SiteOperator& op) {
  require(tensor.left_dim() == tensor.right_dim(), ErrorCode::kDimension,
          "channel needs a square tensor");
  require(op.dim() == tensor.phys_dim(), ErrorCode::kDimension,
          "operator does not match the physical dimension");
  const int chi = tensor.left_dim();
  const int q = tensor.phys_dim();
  BondSuperoperator out{Matrix::Zero(chi * chi, chi * chi)};
  for (int s = 0; s < q; ++s) {
    for (int t = 0; t < q; ++t) {
      const cplx o = op.matrix(t, s);
      if (o == cplx(0.0)) continue;
      out.matrix += o * kron(tensor[s].transpose(), tensor[t].adjoint());
    }
  }
  return out;
}

Matrix apply_channel(const MpsTensor& tensor, const Matrix& rho,
                     const Matrix* op) {
  const int q = tensor.phys_dim();
  if (op == nullptr) {
    Matrix out = Matrix::Zero(tensor.right_dim(), tensor.right_dim());
    for (int s = 0; s < q; ++s) out += tensor[s].adjoint() * rho * tensor[s];
    return out;
  }
  require(op->rows() == q && op->cols() == q, ErrorCode::kDimension,
          "operator does not match the physical dimension");
  std::vector<Matrix> y(q);
  for (int s = 0; s < q; ++s) y[s] = rho * tensor[s];
  Matrix out = Matrix::Zero(tensor.right_dim(), tensor.right_dim());
  for (int t = 0; t < q; ++t) {
    Matrix acc = Matrix::Zero(tensor.left_dim(), tensor.right_dim());
    for (int s = 0; s < q; ++s) {
      if ((*op)(t, s) != cplx(0.0)) acc += (*op)(t, s) * y[s];
    }
    out += tensor[t].adjoint() * acc;
  }
  return out;
}

Matrix initial_bond_matrix(const Vector& left) {
  return left.conjugate() * left.transpose();
}

cplx contract_expectation(const Mps& mps, const SiteOps& ops,
                          Closure closure) {
  mps.validate();
  require(mps.gauge == Gauge::kRight, ErrorCode::kNotCanonical,
          "contraction needs a right-canonical MPS");
  for (const auto& [site, op] : ops) {
    require(site >= 1 && site <= mps.length(), ErrorCode::kInvalidArgument,
            "operator site " + std::to_string(site) + " outside 1.." +
                std::to_string(mps.length()));
  }
  Matrix rho = initial_bond_matrix(mps.left);
  for (int j = 1; j <= mps.length(); ++j) {
    const auto& t = mps.tensors[j - 1];
    require(t.right_canonical_defect() <= 1e-10, ErrorCode::kNotCanonical,
            "site " + std::to_string(j) + " violates right canonical form");
    auto it = ops.find(j);
    rho = apply_channel(t, rho, it == ops.end() ? nullptr : &it->second.matrix);
  }
  if (closure == Closure::kTrace) return rho.trace();
  return mps.right.dot(rho * mps.right);
}

cplx normalized_expectation(const Mps& mps, const SiteOps& ops,
                            Closure closure) {
  const cplx norm = contract_expectation(mps, {}, closure);
  require(std::abs(norm) > 1e-300, ErrorCode::kDegenerate,
          "normalization vanishes");
  return contract_expectation(mps, ops, closure) / norm;
}

Vector to_dense(const Mps& mps) {
  mps.validate();
  const int q = mps.tensors.front().phys_dim();
  // rows(k, :) = L^T V_{s_1} ... V_{s_j} for the prefix with index k.
  Matrix rows = mps.left.transpose();
  for (const auto& t : mps.tensors) {
    Matrix next(rows.rows() * q, t.right_dim());
    for (Eigen::Index k = 0; k < rows.rows(); ++k) {
      for (int s = 0; s < q; ++s) next.row(k * q + s) = rows.row(k) * t[s];
    }
    rows = std::move(next);
  }
  return rows * mps.right;
}

Mps random_mps(int length, int bond_dim, int phys_dim, std::uint64_t seed) {
  require(length >= 1 && bond_dim >= 1 && phys_dim >= 1,
          ErrorCode::kInvalidArgument, "random MPS needs positive sizes");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  auto draw = [&] { return cplx(normal(gen), normal(gen)); };
  Mps out;
  for (int j = 0; j < length; ++j) {
    MpsTensor t(bond_dim, phys_dim, bond_dim);
    for (int s = 0; s < phys_dim; ++s) {
      for (int a = 0; a < bond_dim; ++a) {
        for (int b = 0; b < bond_dim; ++b) t[s](a, b) = draw();
      }
    }
    out.tensors.push_back(std::move(t));
  }
  out.left = Vector(bond_dim);
  out.right = Vector(bond_dim);
  for (int a = 0; a < bond_dim; ++a) out.left(a) = draw();
  for (int a = 0; a < bond_dim; ++a) out.right(a) = draw();
  out.left.normalize();
  return out;
}

std::string format_mps(const Mps& mps) {
  mps.validate();
  std::ostringstream os;
  os << "holoq-mps 1\n";
  os << "length " << mps.length() << "\n";
  os << "gauge " << (mps.gauge == Gauge::kRight ? "right" : "none") << "\n";
  for (int j = 0; j < mps.length(); ++j) {
    const auto& t = mps.tensors[j];
    os << "site " << j + 1 << " " << t.left_dim() << " " << t.phys_dim() << " "
       << t.right_dim() << "\n";
    for (int a = 0; a < t.left_dim(); ++a) {
      for (int s = 0; s < t.phys_dim(); ++s) {
        for (int b = 0; b < t.right_dim(); ++b) {
          os << textio::format_complex(t(a, s, b)) << "\n";
        }
      }
    }
  }
  os << "left " << mps.left.size() << "\n";
  for (Eigen::Index a = 0; a < mps.left.size(); ++a) {
    os << textio::format_complex(mps.left(a)) << "\n";
  }
  os << "right " << mps.right.size() << "\n";
  for (Eigen::Index a = 0; a < mps.right.size(); ++a) {
    os << textio::format_complex(mps.right(a)) << "\n";
  }
  return os.str();
}

Mps parse_mps(const std::string& text) {
  textio::Reader in(text);
  in.expect_header("holoq-mps", 1);
  const int len = in.keyword_int("length");
  require(len >= 1, ErrorCode::kIo, "MPS length must be positive");
  const std::string gauge = in.keyword_word("gauge");
  require(gauge == "right" || gauge == "none", ErrorCode::kIo,
          "unknown gauge '" + gauge + "'");
  Mps out;
  out.gauge = gauge == "right" ? Gauge::kRight : Gauge::kNone;
  for (int j = 1; j <= len; ++j) {
    in.expect_word("site");
    require(in.read_int() == j, ErrorCode::kIo, "sites out of order");
    const int cl = in.read_int();
    const int q = in.read_int();
    const int cr = in.read_int();
    MpsTensor t(cl, q, cr);
    for (int a = 0; a < cl; ++a) {
      for (int s = 0; s < q; ++s) {
        for (int b = 0; b < cr; ++b) t[s](a, b) = in.read_complex();
      }
    }
    out.tensors.push_back(std::move(t));
  }
  out.left = in.keyword_vector("left");
  out.right = in.keyword_vector("right");
  in.expect_end();
  out.validate();
  return out;
}

void save_mps(const Mps& mps, const std::filesystem::path& path) {
  textio::write_file(path, format_mps(mps));
}

Mps load_mps(const std::filesystem::path& path) {
  return parse_mps(textio::read_file(path));
}

}  // namespace holoq
