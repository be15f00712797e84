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

#include "holoq/holo_prep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holoq/errors.hpp"
#include "holoq/gates.hpp"
#include "holoq/textio.hpp"

namespace holoq {

namespace {

std::vector<int> range(int first, int count) {
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

std::string operator_label(const Matrix& m) {
  if (m.rows() == 2) {
    for (char c : {'I', 'X', 'Y', 'Z'}) {
      if (max_abs(m - pauli::from_label(c)) < 1e-14) return std::string(1, c);
    }
  }
  return "O";
}

std::vector<int> site_unitary_targets(int phys_first, int n_p, int bond_first,
                                      int n_b) {
  std::vector<int> t = range(phys_first, n_p);
  const auto b = range(bond_first, n_b);
  t.insert(t.end(), b.begin(), b.end());
  return t;
}

}  // namespace

const Matrix& HoloSpec::unitary_for_site(int site) const {
  require(site >= 1, ErrorCode::kInvalidArgument, "sites are 1-based");
  require(!unitaries.empty(), ErrorCode::kInvalidArgument,
          "spec has no unitaries");
  return unitaries[static_cast<std::size_t>(site - 1) % unitaries.size()];
}

MpsTensor HoloSpec::tensor_for_site(int site) const {
  return extract_tensor(unitary_for_site(site), bond_dim(), phys_dim());
}

void HoloSpec::validate() const {
  require(n_b >= 0 && n_p >= 1 && n_b + n_p <= kStatevectorCap,
          ErrorCode::kDimension, "invalid register sizes");
  require(!unitaries.empty(), ErrorCode::kInvalidArgument,
          "spec has no unitaries");
  const Eigen::Index d = Eigen::Index{1} << (n_b + n_p);
  for (const auto& u : unitaries) {
    require(u.rows() == d && u.cols() == d, ErrorCode::kDimension,
            "site unitary must be 2^(n_b+n_p) square");
    require(is_unitary(u, 1e-10), ErrorCode::kInvalidArgument,
            "site unitary is not unitary");
  }
  require(left.size() == bond_dim(), ErrorCode::kDimension,
          "left boundary must have dimension 2^n_b");
  require(std::abs(left.norm() - 1.0) <= 1e-10, ErrorCode::kInvalidArgument,
          "left boundary must be a unit vector");
  if (policy == RightPolicy::kPostselect) {
    require(right.size() == bond_dim(), ErrorCode::kDimension,
            "right boundary must have dimension 2^n_b");
    require(right.norm() > 0.0, ErrorCode::kInvalidArgument,
            "right boundary vanishes");
  }
  require(burn_in >= 0 || burn_in == kAutoBurnIn, ErrorCode::kInvalidArgument,
          "burn-in must be non-negative");
}

HoloSpec spec_from_mps(const Mps& mps) {
  mps.validate();
  require(mps.gauge == Gauge::kRight, ErrorCode::kNotCanonical,
          "spec needs a right-canonical MPS");
  HoloSpec spec;
  const int chi = mps.tensors.front().left_dim();
  spec.n_b = log2_exact(chi);
  spec.n_p = log2_exact(mps.tensors.front().phys_dim());
  for (const auto& t : mps.tensors) spec.unitaries.push_back(embed_isometry(t));
  spec.left = mps.left;
  spec.right = mps.right;
  spec.policy = RightPolicy::kPostselect;
  spec.burn_in = 0;
  spec.validate();
  return spec;
}

Mps spec_to_mps(const HoloSpec& spec, int length) {
  spec.validate();
  require(length >= 1, ErrorCode::kInvalidArgument, "length must be positive");
  Mps out;
  for (int i = 1; i <= length; ++i) out.tensors.push_back(spec.tensor_for_site(i));
  out.left = spec.left;
  out.right = spec.policy == RightPolicy::kPostselect
                  ? spec.right
                  : Vector(Vector::Ones(spec.bond_dim()));
  out.gauge = Gauge::kRight;
  return out;
}

std::string CorrelatorRequest::describe() const {
  std::ostringstream os;
  if (ops.empty()) os << "1";
  for (std::size_t k = 0; k < ops.size(); ++k) {
    os << (k ? "*" : "") << operator_label(ops[k].second.matrix)
       << ops[k].first;
  }
  if (bulk()) {
    os << " bulk";
  } else {
    os << " L=" << length;
  }
  return os.str();
}

ResolvedRequest resolve(const HoloSpec& spec, const CorrelatorRequest& request) {
  spec.validate();
  require(request.length >= 0, ErrorCode::kInvalidArgument,
          "chain length must be non-negative");
  int prev = 0;
  for (const auto& [site, op] : request.ops) {
    require(site > prev, ErrorCode::kInvalidArgument,
            "request sites must be positive and strictly increasing");
    require(op.hermitian, ErrorCode::kInvalidArgument,
            "requested operators must be Hermitian");
    require(op.dim() == spec.phys_dim(), ErrorCode::kDimension,
            "operator does not match the physical dimension");
    prev = site;
  }
  ResolvedRequest out;
  if (request.bulk()) {
    out.burn_in = spec.burn_in == kAutoBurnIn ? auto_burn_in(spec, request)
                                              : spec.burn_in;
    for (const auto& [site, op] : request.ops) {
      out.ops.emplace_back(out.burn_in + site, op);
    }
    out.length = std::max(1, out.burn_in + prev);
  } else {
    require(prev <= request.length, ErrorCode::kInvalidArgument,
            "request site " + std::to_string(prev) + " beyond chain length " +
                std::to_string(request.length));
    out.ops = request.ops;
    out.length = request.length;
  }
  return out;
}

std::vector<std::string> request_tags(const ResolvedRequest& request) {
  std::vector<std::string> tags;
  for (const auto& [site, op] : request.ops) tags.push_back("s" + std::to_string(site));
  return tags;
}

namespace {

Circuit prep_circuit(const HoloSpec& spec, const ResolvedRequest& req) {
  Circuit c(spec.width());
  const auto bond = range(0, spec.n_b);
  const auto phys = range(spec.n_b, spec.n_p);
  const auto targets = site_unitary_targets(spec.n_b, spec.n_p, 0, spec.n_b);
  if (spec.n_b > 0) c.gate(state_prep_unitary(spec.left), bond, "prep_L");
  std::size_t next = 0;
  for (int i = 1; i <= req.length; ++i) {
    c.reset(phys).site = i;
    c.gate(spec.unitary_for_site(i), targets, "U").site = i;
    if (next < req.ops.size() && req.ops[next].first == i) {
      const Matrix& o = req.ops[next].second.matrix;
      c.measure(phys, o, "s" + std::to_string(i), operator_label(o)).site = i;
      ++next;
    }
  }
  if (spec.policy == RightPolicy::kPostselect && spec.n_b > 0) {
    const Vector r = spec.right.conjugate() / spec.right.norm();
    c.measure(bond, r * r.adjoint(), "R", "PR");
  }
  return c;
}

}  // namespace

Circuit build_prep_circuit(const HoloSpec& spec,
                           const CorrelatorRequest& request) {
  return prep_circuit(spec, resolve(spec, request));
}

EstimatorResult sample_correlator(const HoloSpec& spec,
                                  const CorrelatorRequest& request,
                                  std::int64_t shots, std::uint64_t seed,
                                  bool keep_samples) {
  require(shots >= 1, ErrorCode::kInvalidArgument, "shots must be positive");
  const ResolvedRequest req = resolve(spec, request);
  const Circuit c = prep_circuit(spec, req);
  const auto tags = request_tags(req);
  const bool post = spec.policy == RightPolicy::kPostselect && spec.n_b > 0;
  std::vector<double> value(static_cast<std::size_t>(shots));
  std::vector<char> accepted(static_cast<std::size_t>(shots), 1);
  parallel_for(shots, [&](std::int64_t i) {
    const auto rec = run_shot(c, seed, static_cast<std::uint64_t>(i));
    double p = 1.0;
    for (const auto& t : tags) p *= rec.values.at(t);
    value[static_cast<std::size_t>(i)] = p;
    if (post) accepted[static_cast<std::size_t>(i)] = rec.values.at("R") > 0.5;
  });
  std::vector<double> kept;
  kept.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (accepted[i]) kept.push_back(value[i]);
  }
  require(!kept.empty(), ErrorCode::kNoAcceptance,
          "post-selection accepted none of " + std::to_string(shots) + " shots");
  EstimatorResult r = summarize(std::move(kept), keep_samples);
  r.shots = shots;
  r.accepted = static_cast<std::int64_t>(
      std::count(accepted.begin(), accepted.end(), 1));
  return r;
}

namespace {

Matrix propagate(const HoloSpec& spec, const ResolvedRequest& req,
                 bool with_ops) {
  Matrix rho = initial_bond_matrix(spec.left);
  std::size_t next = 0;
  for (int i = 1; i <= req.length; ++i) {
    const MpsTensor t = spec.tensor_for_site(i);
    const Matrix* op = nullptr;
    if (next < req.ops.size() && req.ops[next].first == i) {
      if (with_ops) op = &req.ops[next].second.matrix;
      ++next;
    }
    rho = apply_channel(t, rho, op);
  }
  return rho;
}

}  // namespace

double exact_correlator(const HoloSpec& spec, const CorrelatorRequest& request) {
  const ResolvedRequest req = resolve(spec, request);
  const Matrix rho = propagate(spec, req, true);
  if (spec.policy == RightPolicy::kTrace || spec.n_b == 0) {
    return rho.trace().real();
  }
  const Matrix norm = propagate(spec, req, false);
  const double z = spec.right.dot(norm * spec.right).real();
  require(z > 1e-300, ErrorCode::kNoAcceptance,
          "post-selection probability vanishes");
  return spec.right.dot(rho * spec.right).real() / z;
}

Matrix bond_density(const HoloSpec& spec, int sites) {
  spec.validate();
  require(sites >= 0, ErrorCode::kInvalidArgument, "site count is negative");
  Matrix rho = initial_bond_matrix(spec.left);
  for (int i = 1; i <= sites; ++i) rho = apply_channel(spec.tensor_for_site(i), rho);
  return rho;
}

std::vector<double> bond_entanglement_spectrum(const HoloSpec& spec, int j) {
  require(j >= 1, ErrorCode::kInvalidArgument, "cut must follow a site");
  const Matrix rho = bond_density(spec, j);
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

Circuit build_renyi2_circuit(const HoloSpec& spec, int j) {
  const int width = 2 * spec.n_b + spec.n_p;
  if (width > kStatevectorCap) {
    throw CapacityError(width, kStatevectorCap,
                        "two replicas need " + std::to_string(width) +
                            " qubits, cap is " +
                            std::to_string(kStatevectorCap));
  }
  spec.validate();
  require(j >= 1, ErrorCode::kInvalidArgument, "cut must follow a site");
  Circuit c(width);
  const auto bond_a = range(0, spec.n_b);
  const auto bond_b = range(spec.n_b, spec.n_b);
  const auto phys = range(2 * spec.n_b, spec.n_p);
  const auto ta = site_unitary_targets(2 * spec.n_b, spec.n_p, 0, spec.n_b);
  const auto tb = site_unitary_targets(2 * spec.n_b, spec.n_p, spec.n_b, spec.n_b);
  if (spec.n_b > 0) {
    const Matrix prep = state_prep_unitary(spec.left);
    c.gate(prep, bond_a, "prep_L");
    c.gate(prep, bond_b, "prep_L");
  }
  for (int i = 1; i <= j; ++i) {
    c.reset(phys).site = i;
    c.gate(spec.unitary_for_site(i), ta, "U").site = i;
    c.reset(phys).site = i;
    c.gate(spec.unitary_for_site(i), tb, "U").site = i;
  }
  for (int k = 0; k < spec.n_b; ++k) {
    c.measure({k, spec.n_b + k}, gates::swap(), "swap" + std::to_string(k),
              "SWAP");
  }
  return c;
}

EstimatorResult renyi2_swap_sample(const HoloSpec& spec, int j,
                                   std::int64_t shots, std::uint64_t seed,
                                   bool keep_samples) {
  require(shots >= 1, ErrorCode::kInvalidArgument, "shots must be positive");
  const Circuit c = build_renyi2_circuit(spec, j);
  std::vector<double> value(static_cast<std::size_t>(shots), 1.0);
  if (spec.n_b > 0) {
    parallel_for(shots, [&](std::int64_t i) {
      const auto rec = run_shot(c, seed, static_cast<std::uint64_t>(i));
      double p = 1.0;
      for (const auto& t : c.tags()) p *= rec.values.at(t);
      value[static_cast<std::size_t>(i)] = p;
    });
  }
  return summarize(std::move(value), keep_samples);
}

double renyi2_entropy(double purity) {
  require(purity > 0.0, ErrorCode::kInvalidArgument,
          "purity estimate must be positive");
  return -std::log(purity);
}

int auto_burn_in(const HoloSpec& spec, const CorrelatorRequest& request,
                 double tol) {
  require(request.bulk(), ErrorCode::kInvalidArgument,
          "automatic burn-in applies to bulk requests");
  HoloSpec s = spec;
  int b = spec.burn_in > 0 ? spec.burn_in : 4;
  s.burn_in = b;
  double prev = exact_correlator(s, request);
  while (b <= 4096) {
    s.burn_in = 2 * b;
    const double next = exact_correlator(s, request);
    if (std::abs(next - prev) < tol) return b;
    prev = next;
    b *= 2;
  }
  fail(ErrorCode::kNonConvergence,
       "burn-in did not converge below 4096 sites");
}

std::string format_spec(const HoloSpec& spec) {
  spec.validate();
  std::ostringstream os;
  os << "holoq-spec 1\n";
  os << "n_b " << spec.n_b << "\nn_p " << spec.n_p << "\n";
  os << "policy "
     << (spec.policy == RightPolicy::kTrace ? "trace" : "postselect") << "\n";
  os << "burn_in ";
  if (spec.burn_in == kAutoBurnIn) {
    os << "auto\n";
  } else {
    os << spec.burn_in << "\n";
  }
  os << "unitaries " << spec.unitaries.size() << "\n";
  for (const auto& u : spec.unitaries) {
    os << "unitary " << u.rows() << " " << u.cols() << "\n";
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        os << textio::format_complex(u(r, c)) << "\n";
      }
    }
  }
  os << "left " << spec.left.size() << "\n";
  for (Eigen::Index a = 0; a < spec.left.size(); ++a) {
    os << textio::format_complex(spec.left(a)) << "\n";
  }
  if (spec.policy == RightPolicy::kPostselect) {
    os << "right " << spec.right.size() << "\n";
    for (Eigen::Index a = 0; a < spec.right.size(); ++a) {
      os << textio::format_complex(spec.right(a)) << "\n";
    }
  }
  return os.str();
}

HoloSpec parse_spec(const std::string& text) {
  textio::Reader in(text);
  in.expect_header("holoq-spec", 1);
  HoloSpec spec;
  spec.n_b = in.keyword_int("n_b");
  spec.n_p = in.keyword_int("n_p");
  const std::string policy = in.keyword_word("policy");
  require(policy == "trace" || policy == "postselect", ErrorCode::kIo,
          "unknown policy '" + policy + "'");
  spec.policy = policy == "trace" ? RightPolicy::kTrace : RightPolicy::kPostselect;
  const std::string burn = in.keyword_word("burn_in");
  if (burn == "auto") {
    spec.burn_in = kAutoBurnIn;
  } else {
    textio::Reader b(burn);
    spec.burn_in = b.read_int();
  }
  const int count = in.keyword_int("unitaries");
  require(count >= 1 && count <= 1 << 16, ErrorCode::kIo,
          "bad unitary count");
  for (int k = 0; k < count; ++k) spec.unitaries.push_back(in.keyword_matrix("unitary"));
  spec.left = in.keyword_vector("left");
  if (spec.policy == RightPolicy::kPostselect) spec.right = in.keyword_vector("right");
  in.expect_end();
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(ErrorCode::kIo, std::string("invalid spec: ") + e.what());
  }
  return spec;
}

void save_spec(const HoloSpec& spec, const std::filesystem::path& path) {
  textio::write_file(path, format_spec(spec));
}

HoloSpec load_spec(const std::filesystem::path& path) {
  return parse_spec(textio::read_file(path));
}

}  // namespace holoq
