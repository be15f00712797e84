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

#include "holoq/quads.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "holoq/errors.hpp"
#include "holoq/gates.hpp"
#include "holoq/rng.hpp"
#include "holoq/textio.hpp"

namespace holoq {

namespace {

std::vector<int> range(int first, int count) {
  std::vector<int> out(count);
  std::iota(out.begin(), out.end(), first);
  return out;
}

std::string label_of(const Matrix& m) {
  if (m.rows() == 2) {
    for (char c : {'I', 'X', 'Y', 'Z'}) {
      if (max_abs(m - pauli::from_label(c)) < 1e-14) return std::string(1, c);
    }
  }
  return "O";
}

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

int ipow(int base, int e) {
  int out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Hamiltonian

Coefficient Coefficient::fixed(double c) {
  Coefficient out;
  out.constant = c;
  return out;
}

Coefficient Coefficient::piecewise(std::vector<std::pair<double, double>> pieces) {
  require(!pieces.empty(), ErrorCode::kInvalidArgument,
          "piecewise coefficient needs at least one piece");
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    require(pieces[i].first > pieces[i - 1].first, ErrorCode::kInvalidArgument,
            "piecewise coefficient starts must increase");
  }
  Coefficient out;
  out.pieces = std::move(pieces);
  return out;
}

double Coefficient::at(double t) const {
  if (pieces.empty()) return constant;
  double v = pieces.front().second;
  for (const auto& [start, value] : pieces) {
    if (start <= t) v = value;
  }
  return v;
}

LocalHamiltonian LocalHamiltonian::from_model(const Model& model) {
  model.validate();
  LocalHamiltonian h;
  h.phys_dim = model.phys_dim;
  for (const auto& term : model.terms) {
    std::vector<Matrix> factors;
    for (const auto& f : term.factors) factors.push_back(f.matrix);
    h.terms.push_back({0, kron_all(factors), Coefficient::fixed(term.coeff)});
  }
  return h;
}

int LocalHamiltonian::span(const HamiltonianTerm& term) const {
  int s = 0;
  for (Eigen::Index d = 1; d < term.op.rows(); d *= phys_dim) ++s;
  return s;
}

int LocalHamiltonian::locality() const {
  int k = 1;
  for (const auto& term : terms) k = std::max(k, span(term));
  return k;
}

void LocalHamiltonian::validate() const {
  require(phys_dim >= 2 && is_power_of_two(phys_dim), ErrorCode::kDimension,
          "site dimension must be a power of two");
  require(period >= 1, ErrorCode::kInvalidArgument, "period must be positive");
  for (const auto& term : terms) {
    require(term.offset >= 0, ErrorCode::kInvalidArgument,
            "term offsets must be non-negative");
    const int s = span(term);
    require(term.op.rows() == term.op.cols() && term.op.rows() > 1 &&
                term.op.rows() == ipow(phys_dim, s),
            ErrorCode::kDimension,
            "term operator is not a power of the site dimension");
    require(is_hermitian(term.op), ErrorCode::kInvalidArgument,
            "Hamiltonian terms must be Hermitian");
  }
}

std::vector<PlacedTerm> LocalHamiltonian::placements(int length) const {
  validate();
  std::vector<PlacedTerm> out;
  for (const auto& term : terms) {
    const int s = span(term);
    if (translation_invariant) {
      for (int first = 1 + term.offset; first + s - 1 <= length; first += period) {
        out.push_back({first, s, &term});
      }
    } else {
      require(term.offset + s <= length, ErrorCode::kInvalidArgument,
              "term at offset " + std::to_string(term.offset) +
                  " runs past the chain end");
      out.push_back({1 + term.offset, s, &term});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trotter plan

int TrotterPlan::gate_count() const {
  int n = 0;
  for (const auto& layer : layers) n += static_cast<int>(layer.gates.size());
  return n;
}

int TrotterPlan::layer_at_time(double time) const {
  if (steps == 0) {
    require(time == 0.0, ErrorCode::kInvalidArgument,
            "empty plan only has time 0");
    return 0;
  }
  const double n = std::round(time / dt);
  require(time >= 0.0 && n <= steps && std::abs(n * dt - time) <= 1e-9 * std::max(1.0, t),
          ErrorCode::kInvalidArgument,
          "time " + textio::format_decimal(time) + " is not a step boundary");
  return static_cast<int>(n) * (order == 1 ? 2 : 3);
}

namespace {

struct BondTerm {
  Matrix op;  // on the two plan sites of the bond
  const Coefficient* coeff;
};

// Embeds a placed term into the plan sites it covers; returns the first plan
// site and the operator on one or two plan sites.
std::pair<int, Matrix> merge_term(const PlacedTerm& p, int q, int block) {
  const int a = (p.first - 1) / block + 1;
  const int b = (p.first + p.span - 2) / block + 1;
  if (b - a > 1) {
    fail(ErrorCode::kUnsupported, "term spans more than two merged sites");
  }
  const int pre = p.first - 1 - (a - 1) * block;
  const int post = (b - a + 1) * block - pre - p.span;
  Matrix op = kron(kron(identity(ipow(q, pre)), p.term->op), identity(ipow(q, post)));
  return {a, op};
}

}  // namespace

TrotterPlan trotterize(const LocalHamiltonian& h, int length, double t,
                       double dt, int order) {
  h.validate();
  require(std::isfinite(t) && std::isfinite(dt), ErrorCode::kInvalidArgument,
          "time and step must be finite");
  require(dt > 0.0, ErrorCode::kInvalidArgument, "dt must be positive");
  require(t >= 0.0, ErrorCode::kInvalidArgument, "t must be non-negative");
  require(order == 1 || order == 2, ErrorCode::kUnsupported,
          "Trotter order must be 1 or 2");
  require(length >= 1, ErrorCode::kInvalidArgument, "chain length must be positive");
  const int k = h.locality();
  const int block = k > 2 ? k - 1 : 1;
  require(length % block == 0, ErrorCode::kInvalidArgument,
          "chain length " + std::to_string(length) + " is not a multiple of " +
              std::to_string(block) + " merged sites");
  require(t == 0.0 || dt <= t * (1.0 + 1e-12), ErrorCode::kInvalidArgument,
          "dt exceeds the total time");

  TrotterPlan plan;
  plan.t = t;
  plan.order = order;
  plan.length = length;
  plan.block = block;
  plan.phys_dim = ipow(h.phys_dim, block);
  plan.steps = t == 0.0 ? 0 : static_cast<int>(std::ceil(t / dt - 1e-9));
  plan.dt = plan.steps == 0 ? dt : t / plan.steps;
  if (plan.steps == 0) return plan;

  const int n_sites = plan.sites();
  const auto placed = h.placements(length);
  require(n_sites >= 2 || placed.empty(), ErrorCode::kInvalidArgument,
          "a chain of one (merged) site has no bonds to evolve");
  const Eigen::Index q = plan.phys_dim;
  std::vector<std::vector<BondTerm>> bonds(n_sites + 1);
  for (const auto& p : placed) {
    auto [first, op] = merge_term(p, h.phys_dim, block);
    if (op.rows() == q * q) {
      bonds[first].push_back({op, &p.term->coeff});
      continue;
    }
    int bond = first % 2 == 1 ? first : first - 1;
    if (bond + 1 > n_sites) bond = first - 1;
    Matrix two = bond == first ? kron(op, identity(q)) : kron(identity(q), op);
    bonds[bond].push_back({two, &p.term->coeff});
  }

  auto layer = [&](int parity, double time, double duration) {
    TrotterLayer out;
    out.parity = parity;
    out.time = time;
    out.duration = duration;
    for (int x = parity == 1 ? 1 : 2; x + 1 <= n_sites; x += 2) {
      Matrix hb = Matrix::Zero(q * q, q * q);
      for (const auto& term : bonds[x]) hb += term.coeff->at(time) * term.op;
      out.gates.push_back({x, expm_hermitian(hb, duration)});
    }
    return out;
  };
  for (int n = 0; n < plan.steps; ++n) {
    const double mid = (n + 0.5) * plan.dt;
    if (order == 1) {
      plan.layers.push_back(layer(1, mid, plan.dt));
      plan.layers.push_back(layer(0, mid, plan.dt));
    } else {
      plan.layers.push_back(layer(1, mid, 0.5 * plan.dt));
      plan.layers.push_back(layer(0, mid, plan.dt));
      plan.layers.push_back(layer(1, mid, 0.5 * plan.dt));
    }
  }
  return plan;
}

TrotterPlan reversed(const TrotterPlan& plan) {
  TrotterPlan out = plan;
  std::reverse(out.layers.begin(), out.layers.end());
  for (auto& layer : out.layers) {
    layer.duration = -layer.duration;
    for (auto& g : layer.gates) g.matrix = g.matrix.adjoint().eval();
  }
  return out;
}

HoloSpec merge_sites(const HoloSpec& spec, int block) {
  spec.validate();
  require(block >= 1, ErrorCode::kInvalidArgument, "block must be positive");
  if (block == 1) return spec;
  const int cell = static_cast<int>(spec.unitaries.size());
  const int merged_cell = std::lcm(cell, block) / block;
  const int width = spec.n_p * block + spec.n_b;
  HoloSpec out = spec;
  out.n_p = spec.n_p * block;
  out.unitaries.clear();
  for (int m = 1; m <= merged_cell; ++m) {
    Matrix u = identity(Eigen::Index{1} << width);
    for (int j = 0; j < block; ++j) {
      auto targets = range(j * spec.n_p, spec.n_p);
      const auto bond = range(spec.n_p * block, spec.n_b);
      targets.insert(targets.end(), bond.begin(), bond.end());
      u = embed_operator(spec.unitary_for_site((m - 1) * block + j + 1), targets,
                         width) *
          u;
    }
    out.unitaries.push_back(u);
  }
  if (spec.burn_in > 0) out.burn_in = (spec.burn_in + block - 1) / block;
  return out;
}

// ---------------------------------------------------------------------------
// Slice schedule

std::string point_tag(const SpaceTimePoint& p) {
  return "x" + std::to_string(p.x) + "t" + std::to_string(p.tau);
}

int SliceSchedule::register_of(int site) const {
  require(site >= 1 && site <= sites, ErrorCode::kInvalidArgument,
          "site outside the chain");
  return (site - 1) % n_phys;
}

std::vector<int> SliceSchedule::site_qubits(int site) const {
  return range(n_b + register_of(site) * n_p, n_p);
}

Circuit SliceSchedule::flatten() const {
  Circuit c(width);
  for (const auto& s : slices) c.append(s);
  return c;
}

namespace {

// Operation pinned to a space-time point, on the sub-site's physical qubits
// preceded by the first ancilla when `controlled`.
struct Event {
  int site = 1;  // plan site
  int sub = 0;   // original site within the plan site
  int tau = 0;
  bool measure = true;
  Matrix matrix;
  bool controlled = false;
  std::string tag;
  std::string label;
};

struct Extras {
  int ancillas = 0;
  std::function<void(Circuit&, int first_ancilla)> prologue;
  std::function<void(Circuit&, int first_ancilla)> epilogue;
};

// Maps an original site to (plan site, sub-site) and checks its operator.
std::pair<int, int> locate(const TrotterPlan& plan, const HoloSpec& spec, int x,
                           const Matrix& op) {
  require(x >= 1 && x <= plan.length, ErrorCode::kInvalidArgument,
          "site " + std::to_string(x) + " beyond the chain extent " +
              std::to_string(plan.length));
  require(op.rows() == spec.phys_dim() && op.cols() == spec.phys_dim(),
          ErrorCode::kDimension, "operator does not match the site dimension");
  return {(x - 1) / plan.block + 1, (x - 1) % plan.block};
}

SliceSchedule schedule(const HoloSpec& spec_in, const TrotterPlan& plan,
                       std::vector<Event> events, const Extras& extras,
                       bool reuse) {
  const HoloSpec spec = merge_sites(spec_in, plan.block);
  require(spec.phys_dim() == plan.phys_dim, ErrorCode::kDimension,
          "spec and plan disagree on the site dimension");
  require(plan.length >= 1 && plan.length % plan.block == 0,
          ErrorCode::kInvalidArgument, "plan has no valid chain");
  const int n_sites = plan.sites();
  const int r = plan.r();

  // gate_at[tau][x]: index into layer tau - 1, or -1.
  std::vector<std::vector<int>> gate_at(r + 1, std::vector<int>(n_sites + 2, -1));
  for (int tau = 1; tau <= r; ++tau) {
    const auto& gates = plan.layers[tau - 1].gates;
    for (std::size_t g = 0; g < gates.size(); ++g) {
      const int x = gates[g].site;
      require(x >= 1 && x + 1 <= n_sites, ErrorCode::kInvalidArgument,
              "plan gate outside the chain");
      require(gates[g].matrix.rows() == plan.phys_dim * plan.phys_dim,
              ErrorCode::kDimension, "plan gate has the wrong dimension");
      require(gate_at[tau][x] < 0 && gate_at[tau][x + 1] < 0 &&
                  (x == 1 || gate_at[tau][x - 1] < 0),
              ErrorCode::kInvalidArgument, "overlapping gates in one layer");
      gate_at[tau][x] = static_cast<int>(g);
    }
  }

  // Top-row chunks end where no top-layer gate crosses the cut.
  std::vector<int> ends;
  for (int e = 1; e <= n_sites; ++e) {
    if (e == n_sites || r == 0 || gate_at[r][e] < 0) ends.push_back(e);
  }
  // Right edge of each chunk's past light cone after each layer.
  std::vector<std::vector<int>> edge(ends.size(), std::vector<int>(r + 1));
  for (std::size_t s = 0; s < ends.size(); ++s) {
    int e = ends[s];
    edge[s][r] = e;
    for (int tau = r; tau >= 1; --tau) {
      if (gate_at[tau][e] >= 0) ++e;
      edge[s][tau - 1] = e;
    }
  }

  SliceSchedule out;
  out.n_b = spec.n_b;
  out.n_p = spec.n_p;
  out.r = r;
  out.sites = n_sites;
  out.block = plan.block;
  out.n_phys = reuse ? r + 1 : n_sites;
  out.width = spec.n_b + spec.n_p * out.n_phys + extras.ancillas;
  out.reuse.assign(out.n_phys, {});
  const int first_ancilla = spec.n_b + spec.n_p * out.n_phys;
  if (reuse) {
    int prev = 0;
    for (std::size_t s = 0; s < ends.size(); ++s) {
      require(edge[s][0] - prev <= out.n_phys, ErrorCode::kInvalidArgument,
              "plan layer structure needs more than r + 1 physical registers");
      prev = ends[s];
    }
  }

  std::vector<std::vector<Event>> by_site(n_sites + 1);
  for (auto& ev : events) {
    if (ev.measure) out.tags.push_back(ev.tag);
    by_site[ev.site].push_back(std::move(ev));
  }
  for (auto& list : by_site) {
    std::stable_sort(list.begin(), list.end(),
                     [](const Event& a, const Event& b) { return a.tau < b.tau; });
  }
  std::vector<std::size_t> next(n_sites + 1, 0);

  const auto bond = range(0, spec.n_b);
  auto flush = [&](Circuit& c, int site, int before_tau) {
    auto& list = by_site[site];
    while (next[site] < list.size() && list[next[site]].tau < before_tau) {
      const Event& ev = list[next[site]++];
      std::vector<int> qubits;
      if (ev.controlled) qubits.push_back(first_ancilla);
      const auto all = out.site_qubits(site);
      const int n_sub = spec.n_p / plan.block;
      qubits.insert(qubits.end(), all.begin() + ev.sub * n_sub,
                    all.begin() + (ev.sub + 1) * n_sub);
      Instruction& ins = ev.measure ? c.measure(qubits, ev.matrix, ev.tag, ev.label)
                                    : c.gate(ev.matrix, qubits, ev.label);
      ins.site = site;
      ins.level = ev.tau;
    }
  };

  int created = 0;
  for (std::size_t s = 0; s < ends.size(); ++s) {
    Circuit c(out.width);
    const int lo = s == 0 ? 1 : ends[s - 1] + 1;
    out.top.emplace_back(lo, ends[s]);
    c.comment("slice " + std::to_string(s + 1) + " top " + std::to_string(lo) +
              ".." + std::to_string(ends[s]));
    if (s == 0) {
      if (spec.n_b > 0) c.gate(state_prep_unitary(spec.left), bond, "prep_L");
      if (extras.prologue) extras.prologue(c, first_ancilla);
    }
    // Extend the MPS up to the bottom of the slice's light cone.
    for (int y = created + 1; y <= edge[s][0]; ++y) {
      auto targets = out.site_qubits(y);
      out.reuse[out.register_of(y)].push_back(y);
      if (y > out.n_phys) c.reset(targets).site = y;
      targets.insert(targets.end(), bond.begin(), bond.end());
      c.gate(spec.unitary_for_site(y), targets, "U").site = y;
    }
    created = std::max(created, edge[s][0]);
    // Evolution gates of the diagonal, layer by layer.
    for (int tau = 1; tau <= r; ++tau) {
      const int from = s == 0 ? 1 : edge[s - 1][tau] + 1;
      for (int x = from; x <= edge[s][tau]; ++x) {
        const int g = gate_at[tau][x];
        if (g < 0) continue;
        flush(c, x, tau);
        flush(c, x + 1, tau);
        auto targets = out.site_qubits(x);
        const auto right = out.site_qubits(x + 1);
        targets.insert(targets.end(), right.begin(), right.end());
        Instruction& ins =
            c.gate(plan.layers[tau - 1].gates[g].matrix, targets, "trotter");
        ins.site = x;
        ins.level = tau;
      }
    }
    for (int x = lo; x <= ends[s]; ++x) flush(c, x, r + 1);
    if (s + 1 == ends.size()) {
      if (spec.policy == RightPolicy::kPostselect && spec.n_b > 0) {
        const Vector rv = spec.right.conjugate() / spec.right.norm();
        c.measure(bond, rv * rv.adjoint(), "R", "PR");
      }
      if (extras.epilogue) extras.epilogue(c, first_ancilla);
    }
    out.slices.push_back(std::move(c));
  }
  return out;
}

}  // namespace

SliceSchedule build_quads_schedule(const HoloSpec& spec, const TrotterPlan& plan,
                                   const std::vector<SpaceTimePoint>& points,
                                   const ScheduleOptions& options) {
  std::vector<Event> events;
  std::vector<std::string> seen;
  for (const auto& p : points) {
    require(p.tau >= 0 && p.tau <= plan.r(), ErrorCode::kInvalidArgument,
            "measurement layer " + std::to_string(p.tau) + " outside [0, " +
                std::to_string(plan.r()) + "]");
    require(p.op.hermitian && is_hermitian(p.op.matrix),
            ErrorCode::kInvalidArgument, "measured operators must be Hermitian");
    const auto [site, sub] = locate(plan, spec, p.x, p.op.matrix);
    const std::string tag = point_tag(p);
    require(std::find(seen.begin(), seen.end(), tag) == seen.end(),
            ErrorCode::kInvalidArgument, "duplicate space-time point " + tag);
    seen.push_back(tag);
    Event ev;
    ev.site = site;
    ev.sub = sub;
    ev.tau = p.tau;
    ev.matrix = p.op.matrix;
    ev.tag = tag;
    ev.label = label_of(p.op.matrix);
    events.push_back(std::move(ev));
  }
  return schedule(spec, plan, std::move(events), {}, options.reuse);
}

namespace {

bool postselected(const HoloSpec& spec) {
  return spec.policy == RightPolicy::kPostselect && spec.n_b > 0;
}

QuenchResult run_schedule(const HoloSpec& spec, const SliceSchedule& sched,
                          const std::vector<std::string>& tags,
                          const QuenchOptions& options, std::uint64_t seed) {
  const Circuit c = sched.flatten();
  QuenchResult res;
  res.width = sched.width;
  const bool post = postselected(spec);
  if (options.exact) {
    if (sched.width > kDensityCap) {
      throw CapacityError(sched.width, kDensityCap,
                          "holographic schedule needs " +
                              std::to_string(sched.width) +
                              " qubits, exact-mode cap is " +
                              std::to_string(kDensityCap));
    }
    if (post) {
      auto with_r = tags;
      with_r.push_back("R");
      const double z = run_exact_product(c, {"R"});
      require(z > 1e-300, ErrorCode::kNoAcceptance,
              "post-selection probability vanishes");
      res.value = run_exact_product(c, with_r) / z;
    } else {
      res.value = run_exact_product(c, tags);
    }
    return res;
  }
  require(options.shots >= 1, ErrorCode::kInvalidArgument, "shots must be positive");
  if (sched.width > kStatevectorCap) {
    throw CapacityError(sched.width, kStatevectorCap,
                        "holographic schedule needs " +
                            std::to_string(sched.width) +
                            " qubits, sampling cap is " +
                            std::to_string(kStatevectorCap));
  }
  const auto n = static_cast<std::size_t>(options.shots);
  std::vector<double> value(n);
  std::vector<char> accepted(n, 1);
  parallel_for(options.shots, [&](std::int64_t i) {
    const auto rec = run_shot(c, seed, static_cast<std::uint64_t>(i));
    double p = 1.0;
    for (const auto& t : tags) p *= rec.values.at(t);
    value[static_cast<std::size_t>(i)] = p;
    if (post) accepted[static_cast<std::size_t>(i)] = rec.values.at("R") > 0.5;
  });
  std::vector<double> kept;
  for (std::size_t i = 0; i < n; ++i) {
    if (accepted[i]) kept.push_back(value[i]);
  }
  require(!kept.empty(), ErrorCode::kNoAcceptance,
          "post-selection accepted none of " + std::to_string(n) + " shots");
  const EstimatorResult est = summarize(std::move(kept), false);
  res.value = est.mean;
  res.std_error = est.std_error;
  res.shots = options.shots;
  res.accepted = est.shots;
  return res;
}

}  // namespace

std::string QuenchResult::label() const {
  if (points.empty()) return "otoc";
  std::string s;
  for (std::size_t i = 0; i < points.size(); ++i) {
    s += (i ? "*" : "") + label_of(points[i].op.matrix) + "(" +
         std::to_string(points[i].x) + "," + std::to_string(points[i].tau) + ")";
  }
  return s;
}

std::vector<QuenchResult> simulate_quench(
    const HoloSpec& spec, const TrotterPlan& plan,
    const std::vector<std::vector<SpaceTimePoint>>& observables,
    const QuenchOptions& options) {
  std::vector<QuenchResult> out;
  for (std::size_t i = 0; i < observables.size(); ++i) {
    const SliceSchedule sched = build_quads_schedule(spec, plan, observables[i]);
    QuenchResult res = run_schedule(spec, sched, sched.tags, options,
                                    derive_seed(options.seed, i));
    res.points = observables[i];
    out.push_back(std::move(res));
  }
  return out;
}

SliceSchedule build_otoc_schedule(const HoloSpec& spec, const TrotterPlan& plan,
                                  int x_w, const SiteOperator& w, int x_v,
                                  const SiteOperator& v) {
  for (const Matrix* m : {&w.matrix, &v.matrix}) {
    require(is_hermitian(*m) && is_unitary(*m), ErrorCode::kInvalidArgument,
            "OTOC operators must be Hermitian and unitary");
  }
  TrotterPlan full = plan;
  const TrotterPlan back = reversed(plan);
  full.layers.insert(full.layers.end(), back.layers.begin(), back.layers.end());
  const int r = plan.r();

  const auto [site_v, sub_v] = locate(plan, spec, x_v, v.matrix);
  const auto [site_w, sub_w] = locate(plan, spec, x_w, w.matrix);
  const Eigen::Index d = v.matrix.rows();
  const Matrix p0 = pauli::I() * 0.5 + pauli::Z() * 0.5;
  const Matrix p1 = pauli::I() * 0.5 - pauli::Z() * 0.5;
  std::vector<Event> events(3);
  // Hadamard-test branches: ancilla 1 gets V first, ancilla 0 gets V last.
  events[0].site = site_v;
  events[0].sub = sub_v;
  events[0].tau = 0;
  events[0].measure = false;
  events[0].matrix = kron(p0, identity(d)) + kron(p1, v.matrix);
  events[0].controlled = true;
  events[0].label = "c1V";
  events[1].site = site_w;
  events[1].sub = sub_w;
  events[1].tau = r;
  events[1].measure = false;
  events[1].matrix = w.matrix;
  events[1].label = "W";
  events[2].site = site_v;
  events[2].sub = sub_v;
  events[2].tau = 2 * r;
  events[2].measure = false;
  events[2].matrix = kron(p0, v.matrix) + kron(p1, identity(d));
  events[2].controlled = true;
  events[2].label = "c0V";

  Extras extras;
  extras.ancillas = 1;
  extras.prologue = [](Circuit& c, int a) { c.gate(gates::hadamard(), {a}, "H"); };
  extras.epilogue = [](Circuit& c, int a) { c.measure({a}, pauli::X(), "otoc", "X"); };
  SliceSchedule sched = schedule(spec, full, std::move(events), extras, true);
  sched.tags = {"otoc"};
  return sched;
}

QuenchResult simulate_otoc(const HoloSpec& spec, const TrotterPlan& plan,
                           int x_w, const SiteOperator& w, int x_v,
                           const SiteOperator& v, const QuenchOptions& options) {
  const SliceSchedule sched = build_otoc_schedule(spec, plan, x_w, w, x_v, v);
  return run_schedule(spec, sched, {"otoc"}, options,
                      derive_seed(options.seed, 0x07'0C));
}

namespace {

inline constexpr int kDenseReferenceCap = 20;

// Unrolled register: bond qubits first, then original sites in order.
struct Unrolled {
  int n_b = 0;
  int n_p = 0;
  int n = 0;
  std::vector<cplx> psi;

  std::vector<int> qubits(int first, int count) const {
    return range(n_b + (first - 1) * n_p, count * n_p);
  }
  void apply(const Matrix& m, const std::vector<int>& targets) {
    apply_matrix(psi, n, m, targets);
  }
  void layers(const TrotterPlan& plan, int from, int to, bool adjoint = false) {
    for (int l = from; l < to; ++l) {
      for (const auto& g : plan.layers[static_cast<std::size_t>(l)].gates) {
        const Matrix m = adjoint ? Matrix(g.matrix.adjoint()) : g.matrix;
        apply(m, qubits((g.site - 1) * plan.block + 1, 2 * plan.block));
      }
    }
  }
};

Unrolled unrolled(const HoloSpec& spec, int length) {
  spec.validate();
  Unrolled u;
  u.n_b = spec.n_b;
  u.n_p = spec.n_p;
  u.n = spec.n_b + length * spec.n_p;
  if (u.n > kDenseReferenceCap) {
    throw CapacityError(u.n, kDenseReferenceCap,
                        "dense reference needs " + std::to_string(u.n) +
                            " qubits, cap is " + std::to_string(kDenseReferenceCap));
  }
  Circuit c(u.n);
  const auto bond = range(0, spec.n_b);
  if (spec.n_b > 0) c.gate(state_prep_unitary(spec.left), bond);
  for (int i = 1; i <= length; ++i) {
    auto t = u.qubits(i, 1);
    t.insert(t.end(), bond.begin(), bond.end());
    c.gate(spec.unitary_for_site(i), t);
  }
  const Vector v = run_unitary(c);
  u.psi.assign(v.data(), v.data() + v.size());
  if (postselected(spec)) {
    const Vector rv = spec.right.conjugate() / spec.right.norm();
    u.apply(rv * rv.adjoint(), bond);
    double norm = 0.0;
    for (const auto& a : u.psi) norm += std::norm(a);
    require(norm > 1e-300, ErrorCode::kNoAcceptance,
            "post-selection probability vanishes");
    for (auto& a : u.psi) a /= std::sqrt(norm);
  }
  return u;
}

double branch(Unrolled u, const TrotterPlan& plan,
              const std::vector<SpaceTimePoint>& pts, std::size_t k, int layer) {
  if (k == pts.size()) {
    double norm = 0.0;
    for (const auto& a : u.psi) norm += std::norm(a);
    return norm;
  }
  u.layers(plan, layer, pts[k].tau);
  double total = 0.0;
  for (const auto& space : eigenspaces(pts[k].op.matrix)) {
    Unrolled b = u;
    b.apply(space.projector, b.qubits(pts[k].x, 1));
    total += space.eigenvalue * branch(std::move(b), plan, pts, k + 1, pts[k].tau);
  }
  return total;
}

}  // namespace

double dense_quench_reference(const HoloSpec& spec, const TrotterPlan& plan,
                              const std::vector<SpaceTimePoint>& points) {
  std::vector<SpaceTimePoint> pts = points;
  for (const auto& p : pts) {
    require(p.tau >= 0 && p.tau <= plan.r(), ErrorCode::kInvalidArgument,
            "measurement layer outside the plan");
    locate(plan, spec, p.x, p.op.matrix);
  }
  std::stable_sort(pts.begin(), pts.end(),
                   [](const auto& a, const auto& b) { return a.tau < b.tau; });
  return branch(unrolled(spec, plan.length), plan, pts, 0, 0);
}

double dense_otoc_reference(const HoloSpec& spec, const TrotterPlan& plan,
                            int x_w, const SiteOperator& w, int x_v,
                            const SiteOperator& v) {
  locate(plan, spec, x_w, w.matrix);
  locate(plan, spec, x_v, v.matrix);
  const Unrolled psi = unrolled(spec, plan.length);
  Unrolled phi = psi;
  for (int rep = 0; rep < 2; ++rep) {
    phi.apply(v.matrix, phi.qubits(x_v, 1));
    phi.layers(plan, 0, plan.r());
    phi.apply(w.matrix, phi.qubits(x_w, 1));
    for (int l = plan.r() - 1; l >= 0; --l) phi.layers(plan, l, l + 1, true);
  }
  cplx overlap = 0.0;
  for (std::size_t i = 0; i < psi.psi.size(); ++i) {
    overlap += std::conj(psi.psi[i]) * phi.psi[i];
  }
  return overlap.real();
}

std::string format_quench_csv(const std::vector<QuenchResult>& results) {
  std::ostringstream os;
  os << "observable,x,tau,value,stderr,shots,width\n";
  for (const auto& r : results) {
    std::string xs;
    std::string taus;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
      xs += (i ? ";" : "") + std::to_string(r.points[i].x);
      taus += (i ? ";" : "") + std::to_string(r.points[i].tau);
    }
    // Labels of multi-point observables hold commas: quote them.
    const std::string label = r.label();
    if (label.find(',') != std::string::npos) {
      os << '"' << label << '"';
    } else {
      os << label;
    }
    os << "," << xs << "," << taus << ","
       << textio::format_decimal(r.value) << ","
       << textio::format_decimal(r.std_error) << "," << r.shots << ","
       << r.width << "\n";
  }
  return os.str();
}

}  // namespace holoq
