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

// Dense simulator for circuits with gates, mid-circuit measurements of
// arbitrary Hermitian observables, and qubit reset. Qubit 0 is the most
// significant bit of the state index.

#ifndef HOLOQ_CIRCUIT_HPP_
#define HOLOQ_CIRCUIT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "holoq/linalg.hpp"

namespace holoq {

inline constexpr int kStatevectorCap = 24;
inline constexpr int kDensityCap = 12;

enum class OpKind { kGate, kMeasure, kReset, kComment };

struct Instruction {
  OpKind kind = OpKind::kGate;
  std::vector<int> qubits;
  Matrix matrix;               // gate unitary or measured observable
  std::string name;            // gate or observable label, comment text
  std::vector<double> params;  // dump only
  std::string tag;             // measurement record
  int site = 0;                // optional lattice annotation
  int level = 0;               // optional time-layer annotation
  std::vector<Eigenspace> spaces;
};

class Circuit {
 public:
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_; }
  const std::vector<Instruction>& instructions() const { return ops_; }
  const std::vector<std::string>& tags() const { return tags_; }

  // Throws kInvalidArgument for a non-unitary matrix or bad qubits.
  Instruction& gate(const Matrix& u, std::vector<int> qubits,
                    std::string name = "u", std::vector<double> params = {});
  // Non-Hermitian observables and duplicate tags are rejected.
  Instruction& measure(std::vector<int> qubits, const Matrix& observable,
                       std::string tag, std::string label = "obs");
  Instruction& reset(std::vector<int> qubits);
  void comment(std::string text);

  // Appends all instructions of `other` (same width), renaming nothing.
  void append(const Circuit& other);

  // Line-oriented text assembly.
  std::string dump() const;

 private:
  void check_qubits(const std::vector<int>& qubits) const;

  int n_;
  std::vector<Instruction> ops_;
  std::vector<std::string> tags_;
  std::set<std::string> tag_set_;
};

struct ShotRecord {
  std::map<std::string, double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

// One Born-rule sample starting from |0...0>. The RNG is Philox keyed by
// `seed` with counter stream `stream`.
ShotRecord run_shot(const Circuit& circuit, std::uint64_t seed,
                    std::uint64_t stream = 0);

// Final statevector of a circuit without measurements or resets.
Vector run_unitary(const Circuit& circuit, const Vector* initial = nullptr);

// Exact E[prod_{tags} lambda] by density-matrix propagation: tagged
// measurements insert sum_k lambda_k P_k rho P_k, other measurements dephase,
// resets trace out and reinitialise.
double run_exact_product(const Circuit& circuit,
                         const std::vector<std::string>& tags);

// Same propagation returning the final density matrix (untagged weights).
Matrix run_density(const Circuit& circuit,
                   const std::vector<std::string>& tags = {});

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t shots = 0;
  std::int64_t accepted = 0;
  std::vector<double> samples;
};

// Mean and sample standard deviation / sqrt(n); reduced in index order.
EstimatorResult summarize(std::vector<double> samples, bool keep_samples);

// Worker cap for shot parallelism (0 = hardware concurrency).
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for i in [0, n) over the worker pool; fn must be thread safe
// and write only to slot i of its own output.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

// Shot i uses stream i, so the records are independent of thread count.
std::vector<ShotRecord> run_shots(const Circuit& circuit, std::int64_t shots,
                                  std::uint64_t seed);

}  // namespace holoq

#endif  // HOLOQ_CIRCUIT_HPP_
