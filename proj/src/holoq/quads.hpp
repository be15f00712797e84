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

// Holographic quench dynamics. A local Hamiltonian is Trotterized into a
// brickwork of two-site gates on a finite chain; the space-time circuit is
// cut into left-facing diagonal slices and run on r + k - 1 reusable
// physical registers plus the bond register.
//
// Space-time points (x, tau): x is a 1-based site, tau counts brick layers,
// tau = 0 is the initial MPS and tau = r the end of the evolution.

#ifndef HOLOQ_QUADS_HPP_
#define HOLOQ_QUADS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "holoq/circuit.hpp"
#include "holoq/holo_prep.hpp"
#include "holoq/model.hpp"

namespace holoq {

// Constant, or piecewise constant: pieces (start time, value) with
// increasing starts; before the first start the first value applies.
struct Coefficient {
  double constant = 1.0;
  std::vector<std::pair<double, double>> pieces;

  static Coefficient fixed(double c);
  static Coefficient piecewise(std::vector<std::pair<double, double>> pieces);
  double at(double t) const;
};

struct HamiltonianTerm {
  int offset = 0;  // 0-based first site
  Matrix op;       // on consecutive sites, leftmost most significant
  Coefficient coeff;
};

struct PlacedTerm {
  int first = 1;  // 1-based
  int span = 1;
  const HamiltonianTerm* term = nullptr;
};

struct LocalHamiltonian {
  int phys_dim = 2;
  std::vector<HamiltonianTerm> terms;
  // Translation-invariant terms start at sites 1 + offset + n * period;
  // otherwise each term sits once at site 1 + offset.
  bool translation_invariant = true;
  int period = 1;

  static LocalHamiltonian from_model(const Model& model);

  // Largest term span.
  int locality() const;
  int span(const HamiltonianTerm& term) const;
  void validate() const;
  std::vector<PlacedTerm> placements(int length) const;
};

struct TrotterGate {
  int site = 1;  // acts on (site, site + 1), site most significant
  Matrix matrix;
};

struct TrotterLayer {
  int parity = 1;  // 1: bonds (1,2), (3,4), ...; 0: bonds (2,3), (4,5), ...
  double time = 0.0;      // coefficient evaluation time
  double duration = 0.0;  // may be negative for a reversed layer
  std::vector<TrotterGate> gates;
};

struct TrotterPlan {
  double t = 0.0;
  double dt = 0.0;  // effective step, t / steps
  int order = 1;
  int steps = 0;
  int length = 0;  // chain length in original sites
  int block = 1;   // original sites per plan site
  int phys_dim = 2;  // per plan site
  std::vector<TrotterLayer> layers;

  int r() const { return static_cast<int>(layers.size()); }
  int sites() const { return length / block; }
  int gate_count() const;
  // Layer index closing the step that ends at `time`; throws unless `time`
  // is a multiple of dt.
  int layer_at_time(double time) const;
};

// Order 1: per step an odd-bond layer then an even-bond layer. Order 2: odd
// (dt/2), even (dt), odd (dt/2). Coefficients are evaluated at the midpoint
// of each step. Single-site terms join the odd bond holding the site (the
// even bond for an unpaired last site). Locality k > 2 merges k - 1
// consecutive sites into one; `length` must then be a multiple of k - 1.
// When dt does not divide t the step is shortened to t / ceil(t / dt).
TrotterPlan trotterize(const LocalHamiltonian& h, int length, double t,
                       double dt, int order);

// The plan run backwards: layers in reverse order with adjoint gates.
TrotterPlan reversed(const TrotterPlan& plan);

// Merges `block` consecutive sites of a spec into one site of dimension
// Q^block; its unitary applies the original site unitaries in order.
HoloSpec merge_sites(const HoloSpec& spec, int block);

struct SpaceTimePoint {
  int x = 1;    // original site
  int tau = 0;  // layer
  SiteOperator op;
};

std::string point_tag(const SpaceTimePoint& p);

struct ScheduleOptions {
  // false gives every site its own register (no resets) for audits.
  bool reuse = true;
};

struct SliceSchedule {
  int n_b = 0;
  int n_p = 0;     // qubits per plan site
  int n_phys = 0;  // physical registers, r + k - 1 with reuse
  int width = 0;
  int r = 0;
  int sites = 0;  // plan sites
  int block = 1;
  // Per slice: the plan-site interval of the top row it completes.
  std::vector<std::pair<int, int>> top;
  std::vector<Circuit> slices;
  // reuse[j]: plan sites hosted by physical register j, in order.
  std::vector<std::vector<int>> reuse;
  std::vector<std::string> tags;

  int register_of(int site) const;
  std::vector<int> site_qubits(int site) const;
  // All slices in one circuit with "slice s" comments at the boundaries.
  Circuit flatten() const;
  std::string dump() const { return flatten().dump(); }
};

// Measurements are tagged by point_tag and use measure-and-continue
// semantics. Throws for tau outside [0, r], x outside the chain, duplicate
// points and mismatched dimensions.
SliceSchedule build_quads_schedule(const HoloSpec& spec, const TrotterPlan& plan,
                                   const std::vector<SpaceTimePoint>& points,
                                   const ScheduleOptions& options = {});

struct QuenchOptions {
  bool exact = true;
  std::int64_t shots = 1000;
  std::uint64_t seed = 1;
};

struct QuenchResult {
  std::vector<SpaceTimePoint> points;
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t shots = 0;
  std::int64_t accepted = 0;
  int width = 0;

  std::string label() const;
};

// One schedule per observable; the value is the mean product of the
// observable's measurement records. Exact mode propagates the density
// matrix; postselected specs are normalised by the acceptance weight.
std::vector<QuenchResult> simulate_quench(
    const HoloSpec& spec, const TrotterPlan& plan,
    const std::vector<std::vector<SpaceTimePoint>>& observables,
    const QuenchOptions& options = {});

// Re <W(t) V W(t) V> for Hermitian unitary W at x_w and V at x_v, by a
// Hadamard test: controlled-V at tau = 0, the forward plan, W, the reversed
// plan, anti-controlled V at the end, then X on the ancilla (tag "otoc").
// The ancilla is the last qubit.
SliceSchedule build_otoc_schedule(const HoloSpec& spec, const TrotterPlan& plan,
                                  int x_w, const SiteOperator& w, int x_v,
                                  const SiteOperator& v);
QuenchResult simulate_otoc(const HoloSpec& spec, const TrotterPlan& plan,
                           int x_w, const SiteOperator& w, int x_v,
                           const SiteOperator& v,
                           const QuenchOptions& options = {});

// Statevector references on the unrolled chain (every site on its own
// register, no slicing) for self-checks; at most 20 qubits.
double dense_quench_reference(const HoloSpec& spec, const TrotterPlan& plan,
                              const std::vector<SpaceTimePoint>& points);
double dense_otoc_reference(const HoloSpec& spec, const TrotterPlan& plan,
                            int x_w, const SiteOperator& w, int x_v,
                            const SiteOperator& v);

// "observable,x,tau,value,stderr,shots,width" with ';'-joined point lists.
std::string format_quench_csv(const std::vector<QuenchResult>& results);

}  // namespace holoq

#endif  // HOLOQ_QUADS_HPP_
