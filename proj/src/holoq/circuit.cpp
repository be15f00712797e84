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

#include "holoq/circuit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "holoq/errors.hpp"
#include "holoq/rng.hpp"

namespace holoq {

namespace {

std::atomic<int> g_max_threads{0};

std::vector<int> shifted(const std::vector<int>& q, int by) {
  std::vector<int> out = q;
  for (auto& x : out) x += by;
  return out;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void check_width(int n, int cap, const char* what) {
  if (n > cap) {
    throw CapacityError(n, cap,
                        std::string(what) + " needs " + std::to_string(n) +
                            " qubits, cap is " + std::to_string(cap));
  }
}

}  // namespace

Circuit::Circuit(int n_qubits) : n_(n_qubits) {
  require(n_qubits >= 1, ErrorCode::kInvalidArgument,
          "circuit needs at least one qubit");
}

void Circuit::check_qubits(const std::vector<int>& qubits) const {
  require(!qubits.empty(), ErrorCode::kInvalidArgument,
          "instruction has no qubits");
  std::set<int> seen;
  for (int q : qubits) {
    require(q >= 0 && q < n_, ErrorCode::kInvalidArgument,
            "qubit " + std::to_string(q) + " out of range");
    require(seen.insert(q).second, ErrorCode::kInvalidArgument,
            "repeated qubit " + std::to_string(q));
  }
}

Instruction& Circuit::gate(const Matrix& u, std::vector<int> qubits,
                           std::string name, std::vector<double> params) {
  check_qubits(qubits);
  require(u.rows() == (Eigen::Index{1} << qubits.size()), ErrorCode::kDimension,
          "gate size does not match its qubits");
  require(is_unitary(u), ErrorCode::kInvalidArgument,
          "gate '" + name + "' is not unitary");
  Instruction ins;
  ins.kind = OpKind::kGate;
  ins.qubits = std::move(qubits);
  ins.matrix = u;
  ins.name = std::move(name);
  ins.params = std::move(params);
  ops_.push_back(std::move(ins));
  return ops_.back();
}

Instruction& Circuit::measure(std::vector<int> qubits, const Matrix& observable,
                              std::string tag, std::string label) {
  check_qubits(qubits);
  require(observable.rows() == (Eigen::Index{1} << qubits.size()),
          ErrorCode::kDimension, "observable size does not match its qubits");
  require(!tag.empty(), ErrorCode::kInvalidArgument,
          "measurement needs a record tag");
  require(!tag_set_.contains(tag), ErrorCode::kInvalidArgument,
          "duplicate record tag '" + tag + "'");
  Instruction ins;
  ins.kind = OpKind::kMeasure;
  ins.spaces = eigenspaces(observable);
  ins.qubits = std::move(qubits);
  ins.matrix = observable;
  tag_set_.insert(tag);
  ins.name = std::move(label);
  ins.tag = tag;
  tags_.push_back(std::move(tag));
  ops_.push_back(std::move(ins));
  return ops_.back();
}

Instruction& Circuit::reset(std::vector<int> qubits) {
  check_qubits(qubits);
  Instruction ins;
  ins.kind = OpKind::kReset;
  ins.qubits = std::move(qubits);
  ops_.push_back(std::move(ins));
  return ops_.back();
}

void Circuit::comment(std::string text) {
  Instruction ins;
  ins.kind = OpKind::kComment;
  ins.name = std::move(text);
  ops_.push_back(std::move(ins));
}

void Circuit::append(const Circuit& other) {
  require(other.n_ == n_, ErrorCode::kDimension,
          "appended circuit has a different width");
  for (const auto& ins : other.ops_) {
    if (ins.kind == OpKind::kMeasure) {
      require(tag_set_.insert(ins.tag).second, ErrorCode::kInvalidArgument,
              "duplicate record tag '" + ins.tag + "'");
      tags_.push_back(ins.tag);
    }
    ops_.push_back(ins);
  }
}

std::string Circuit::dump() const {
  std::ostringstream os;
  os << "qubits " << n_ << "\n";
  auto qubit_list = [&](const std::vector<int>& qs) {
    for (int q : qs) os << " " << q;
  };
  for (const auto& ins : ops_) {
    switch (ins.kind) {
      case OpKind::kComment:
        os << "# " << ins.name << "\n";
        continue;
      case OpKind::kGate:
        os << "gate " << ins.name;
        qubit_list(ins.qubits);
        if (!ins.params.empty()) {
          os << " params=";
          for (std::size_t i = 0; i < ins.params.size(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", ins.params[i]);
            os << (i ? "," : "") << buf;
          }
        }
        break;
      case OpKind::kMeasure:
        os << "measure";
        qubit_list(ins.qubits);
        os << " obs=" << ins.name << " tag=" << ins.tag;
        break;
      case OpKind::kReset:
        os << "reset";
        qubit_list(ins.qubits);
        break;
    }
    if (ins.site > 0) os << " site=" << ins.site;
    if (ins.level > 0) os << " level=" << ins.level;
    os << "\n";
  }
  return os.str();
}

ShotRecord run_shot(const Circuit& circuit, std::uint64_t seed,
                    std::uint64_t stream) {
  const int n = circuit.n_qubits();
  check_width(n, kStatevectorCap, "statevector simulation");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<cplx> psi(dim, 0.0);
  psi[0] = 1.0;
  std::vector<cplx> work(dim);
  PhiloxStream rng(seed, stream);
  ShotRecord rec;
  rec.seed = seed;
  rec.stream = stream;

  for (const auto& ins : circuit.instructions()) {
    switch (ins.kind) {
      case OpKind::kComment:
        break;
      case OpKind::kGate:
        apply_matrix(psi, n, ins.matrix, ins.qubits);
        break;
      case OpKind::kMeasure: {
        const double u = rng.uniform();
        double acc = 0.0;
        std::size_t chosen = ins.spaces.size();
        double chosen_p = 0.0;
        for (std::size_t k = 0; k < ins.spaces.size(); ++k) {
          std::copy(psi.begin(), psi.end(), work.begin());
          apply_matrix(work, n, ins.spaces[k].projector, ins.qubits);
          double p = 0.0;
          for (const auto& a : work) p += std::norm(a);
          if (p <= 0.0) continue;
          // The last populated branch absorbs rounding in the cumulative sum.
          acc += p;
          chosen = k;
          chosen_p = p;
          if (u < acc) break;
        }
        std::copy(psi.begin(), psi.end(), work.begin());
        apply_matrix(work, n, ins.spaces[chosen].projector, ins.qubits);
        const double inv = 1.0 / std::sqrt(chosen_p);
        for (std::size_t i = 0; i < dim; ++i) psi[i] = work[i] * inv;
        rec.values[ins.tag] = ins.spaces[chosen].eigenvalue;
        break;
      }
      case OpKind::kReset:
        for (int q : ins.qubits) {
          const std::size_t bit = std::size_t{1} << (n - 1 - q);
          double p1 = 0.0;
          for (std::size_t i = 0; i < dim; ++i) {
            if (i & bit) p1 += std::norm(psi[i]);
          }
          const bool one = rng.uniform() < p1;
          const double inv = 1.0 / std::sqrt(one ? p1 : 1.0 - p1);
          for (std::size_t i = 0; i < dim; ++i) {
            if (i & bit) continue;
            psi[i] = (one ? psi[i | bit] : psi[i]) * inv;
            psi[i | bit] = 0.0;
          }
        }
        break;
    }
  }
  return rec;
}

Vector run_unitary(const Circuit& circuit, const Vector* initial) {
  const int n = circuit.n_qubits();
  check_width(n, kStatevectorCap, "statevector simulation");
  const Eigen::Index dim = Eigen::Index{1} << n;
  Vector psi = Vector::Zero(dim);
  if (initial != nullptr) {
    require(initial->size() == dim, ErrorCode::kDimension,
            "initial state has the wrong size");
    psi = *initial;
  } else {
    psi(0) = 1.0;
  }
  std::span<cplx> view(psi.data(), static_cast<std::size_t>(dim));
  for (const auto& ins : circuit.instructions()) {
    if (ins.kind == OpKind::kComment) continue;
    require(ins.kind == OpKind::kGate, ErrorCode::kInvalidArgument,
            "unitary run needs a circuit of gates only");
    apply_matrix(view, n, ins.matrix, ins.qubits);
  }
  return psi;
}

namespace {

// rho(i, j) lives at index i * 2^n + j: row qubits 0..n-1, column qubits
// n..2n-1 of a 2n-qubit vector.
std::vector<cplx> propagate_density(const Circuit& circuit,
                                    const std::vector<std::string>& tags) {
  const int n = circuit.n_qubits();
  check_width(n, kDensityCap, "density-matrix simulation");
  for (const auto& t : tags) {
    require(std::find(circuit.tags().begin(), circuit.tags().end(), t) !=
                circuit.tags().end(),
            ErrorCode::kInvalidArgument, "unknown record tag '" + t + "'");
  }
  const std::set<std::string> weighted(tags.begin(), tags.end());
  std::vector<cplx> rho(std::size_t{1} << (2 * n), 0.0);
  rho[0] = 1.0;

  Matrix reset_super = Matrix::Zero(4, 4);
  {
    Matrix k0 = Matrix::Zero(2, 2);
    Matrix k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k1(0, 1) = 1.0;
    reset_super = kron(k0, k0) + kron(k1, k1);
  }

  for (const auto& ins : circuit.instructions()) {
    switch (ins.kind) {
      case OpKind::kComment:
        break;
      case OpKind::kGate:
        apply_matrix(rho, 2 * n, ins.matrix, ins.qubits);
        apply_matrix(rho, 2 * n, ins.matrix.conjugate(), shifted(ins.qubits, n));
        break;
      case OpKind::kMeasure: {
        const bool w = weighted.count(ins.tag) > 0;
        const Eigen::Index d = ins.matrix.rows();
        Matrix super = Matrix::Zero(d * d, d * d);
        for (const auto& sp : ins.spaces) {
          const double lambda = w ? sp.eigenvalue : 1.0;
          if (lambda == 0.0) continue;
          super += lambda * kron(sp.projector, sp.projector.conjugate());
        }
        apply_matrix(rho, 2 * n, super,
                     concat(ins.qubits, shifted(ins.qubits, n)));
        break;
      }
      case OpKind::kReset:
        for (int q : ins.qubits) {
          const std::vector<int> t{q, q + n};
          apply_matrix(rho, 2 * n, reset_super, t);
        }
        break;
    }
  }
  return rho;
}

}  // namespace

double run_exact_product(const Circuit& circuit,
                         const std::vector<std::string>& tags) {
  const auto rho = propagate_density(circuit, tags);
  const std::size_t dim = std::size_t{1} << circuit.n_qubits();
  cplx tr = 0.0;
  for (std::size_t i = 0; i < dim; ++i) tr += rho[i * dim + i];
  return tr.real();
}

Matrix run_density(const Circuit& circuit, const std::vector<std::string>& tags) {
  const auto rho = propagate_density(circuit, tags);
  const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits();
  Matrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) out(i, j) = rho[i * dim + j];
  }
  return out;
}

EstimatorResult summarize(std::vector<double> samples, bool keep_samples) {
  EstimatorResult r;
  r.shots = static_cast<std::int64_t>(samples.size());
  r.accepted = r.shots;
  if (samples.empty()) return r;
  double sum = 0.0;
  for (double x : samples) sum += x;
  r.mean = sum / static_cast<double>(r.shots);
  if (r.shots > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - r.mean) * (x - r.mean);
    const double var = ss / static_cast<double>(r.shots - 1);
    r.std_error = std::sqrt(var / static_cast<double>(r.shots));
  }
  if (keep_samples) r.samples = std::move(samples);
  return r;
}

void set_max_threads(int n) { g_max_threads = std::max(0, n); }

int max_threads() {
  const int cap = g_max_threads.load();
  const int hw = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  return cap > 0 ? cap : hw;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  const int workers = static_cast<int>(
      std::min<std::int64_t>(max_threads(), std::max<std::int64_t>(n, 1)));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    try {
      for (std::int64_t i = next++; i < n; i = next++) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<ShotRecord> run_shots(const Circuit& circuit, std::int64_t shots,
                                  std::uint64_t seed) {
  require(shots >= 1, ErrorCode::kInvalidArgument, "shots must be positive");
  std::vector<ShotRecord> out(static_cast<std::size_t>(shots));
  parallel_for(shots, [&](std::int64_t i) {
    out[static_cast<std::size_t>(i)] =
        run_shot(circuit, seed, static_cast<std::uint64_t>(i));
  });
  return out;
}

}  // namespace holoq
