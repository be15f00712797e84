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

#include "holoq/vqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "holoq/errors.hpp"
#include "holoq/gates.hpp"
#include "holoq/minimize.hpp"
#include "holoq/rng.hpp"
#include "holoq/textio.hpp"

namespace holoq {

namespace {

using std::numbers::pi;

constexpr int kSquarings = 30;

// Shared by energy and correlators: the cell tensors and the steady bond
// density at a cell boundary.
struct BulkState {
  std::vector<MpsTensor> cell;
  Matrix rho;

  explicit BulkState(const HoloSpec& spec) {
    spec.validate();
    const int c = static_cast<int>(spec.unitaries.size());
    for (int s = 1; s <= c; ++s) cell.push_back(spec.tensor_for_site(s));
    rho = steady_bond_density(spec);
  }

  // <prod_i ops[i] on sites first + i>, offsets 1-based after the cell
  // boundary. Null entries are identities.
  double expect(int first, const std::vector<const Matrix*>& ops) const {
    const int c = static_cast<int>(cell.size());
    Matrix r = rho;
    const int last = first + static_cast<int>(ops.size()) - 1;
    for (int s = 1; s <= last; ++s) {
      const Matrix* op = s >= first ? ops[s - first] : nullptr;
      r = apply_channel(cell[(s - 1) % c], r, op);
    }
    return r.trace().real();
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> random_params(int n, std::uint64_t seed) {
  PhiloxStream rng(seed, 0);
  std::vector<double> p(n);
  for (auto& x : p) x = -pi + 2.0 * pi * rng.uniform();
  return p;
}

}  // namespace

Ansatz Ansatz::xxz_u1(bool alternation) {
  return {AnsatzKind::kXxzU1, 1, alternation};
}

Ansatz Ansatz::xyz(bool alternation) {
  return {AnsatzKind::kXyz, 1, alternation};
}

Ansatz Ansatz::heisenberg_g() { return {AnsatzKind::kHeisenbergG, 1, true}; }

Ansatz Ansatz::star(int n_b, bool alternation) {
  Ansatz a{AnsatzKind::kStar, n_b, alternation};
  a.validate();
  return a;
}

int Ansatz::n_b() const { return kind == AnsatzKind::kStar ? star_bonds : 1; }

int Ansatz::num_params() const {
  switch (kind) {
    case AnsatzKind::kXxzU1:
      return 2;
    case AnsatzKind::kXyz:
      return 3;
    case AnsatzKind::kHeisenbergG:
      return 1;
    case AnsatzKind::kStar:
      return star_bonds == 0 ? 3 : gates::kSu4Params * star_bonds;
  }
  return 0;
}

std::string Ansatz::name() const {
  std::string base;
  switch (kind) {
    case AnsatzKind::kXxzU1:
      base = "xxz-u1";
      break;
    case AnsatzKind::kXyz:
      base = "xyz";
      break;
    case AnsatzKind::kHeisenbergG:
      return "heisenberg-g";
    case AnsatzKind::kStar:
      base = "star(" + std::to_string(star_bonds) + ")";
      break;
  }
  return alternation ? base + "+alt" : base;
}

void Ansatz::validate() const {
  require(kind != AnsatzKind::kStar || (star_bonds >= 0 && star_bonds <= 10),
          ErrorCode::kInvalidArgument, "star ansatz needs 0..10 bond qubits");
  require(kind != AnsatzKind::kHeisenbergG || alternation,
          ErrorCode::kInvalidArgument, "heisenberg-g always alternates");
}

Matrix ansatz_unitary(const Ansatz& ansatz, std::span<const double> params,
                      int site_parity) {
  ansatz.validate();
  require(static_cast<int>(params.size()) == ansatz.num_params(),
          ErrorCode::kInvalidArgument,
          "ansatz " + ansatz.name() + " takes " +
              std::to_string(ansatz.num_params()) + " parameters, got " +
              std::to_string(params.size()));
  Matrix u;
  switch (ansatz.kind) {
    case AnsatzKind::kXxzU1:
      u = gates::exchange(2.0 * params[0]) * gates::zz_rotation(params[1]);
      break;
    case AnsatzKind::kXyz: {
      const Matrix h = params[0] * kron(pauli::X(), pauli::X()) +
                       params[1] * kron(pauli::Y(), pauli::Y()) +
                       params[2] * kron(pauli::Z(), pauli::Z());
      u = expm_hermitian(h, 1.0);
      break;
    }
    case AnsatzKind::kHeisenbergG:
      u = gates::exchange(params[0]);
      break;
    case AnsatzKind::kStar: {
      const int nb = ansatz.star_bonds;
      if (nb == 0) {
        u = gates::zyz(params[0], params[1], params[2]);
        break;
      }
      u = Matrix::Identity(Eigen::Index{2} << nb, Eigen::Index{2} << nb);
      for (int j = 1; j <= nb; ++j) {
        const int targets[2] = {0, j};
        const Matrix block =
            gates::su4(params.subspan((j - 1) * gates::kSu4Params,
                                      gates::kSu4Params));
        u = embed_operator(block, targets, nb + 1) * u;
      }
      break;
    }
  }
  if (ansatz.alternation && site_parity % 2 == 1) {
    const int target[1] = {0};
    u = u * embed_operator(pauli::X(), target,
                           log2_exact(u.rows()));
  }
  return u;
}

HoloSpec ansatz_spec(const Ansatz& ansatz, std::span<const double> params,
                     int burn_in) {
  HoloSpec spec;
  spec.n_b = ansatz.n_b();
  spec.n_p = 1;
  if (ansatz.alternation) {
    spec.unitaries = {ansatz_unitary(ansatz, params, 1),
                      ansatz_unitary(ansatz, params, 0)};
  } else {
    spec.unitaries = {ansatz_unitary(ansatz, params, 1)};
  }
  spec.left = Vector::Zero(spec.bond_dim());
  spec.left(0) = 1.0;
  spec.policy = RightPolicy::kTrace;
  spec.burn_in = burn_in;
  return spec;
}

Matrix steady_bond_density(const HoloSpec& spec) {
  spec.validate();
  const int chi = spec.bond_dim();
  const int n = chi * chi;
  Matrix s = Matrix::Identity(n, n);
  for (size_t c = 0; c < spec.unitaries.size(); ++c) {
    s = transfer_channel(spec.tensor_for_site(static_cast<int>(c) + 1)).matrix * s;
  }
  // (S - 1) vec(rho) = 0 with tr rho = 1.
  Matrix a(n + 1, n);
  a.topRows(n) = s - Matrix::Identity(n, n);
  a.row(n).setZero();
  for (int d = 0; d < chi; ++d) a(n, d * chi + d) = 1.0;
  Vector b = Vector::Zero(n + 1);
  b(n) = 1.0;
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  qr.setThreshold(1e-10);
  Matrix rho;
  if (qr.rank() == n) {
    Vector x = qr.solve(b);
    rho = x.reshaped(chi, chi);
  } else {
    Vector v = initial_bond_matrix(spec.left).reshaped();
    for (int k = 0; k < kSquarings; ++k) s = s * s;
    v = s * v;
    rho = v.reshaped(chi, chi);
    rho /= rho.trace();
  }
  return (rho + rho.adjoint()) / 2.0;
}

double steady_correlator(const HoloSpec& spec, const CorrelatorRequest& request) {
  require(request.bulk(), ErrorCode::kInvalidArgument,
          "steady-state correlators take bulk offsets");
  require(!request.ops.empty(), ErrorCode::kInvalidArgument,
          "empty correlator request");
  int prev = 0;
  for (const auto& [site, op] : request.ops) {
    require(site > prev, ErrorCode::kInvalidArgument,
            "request sites must be positive and strictly increasing");
    require(op.dim() == spec.phys_dim(), ErrorCode::kDimension,
            "operator does not match the physical dimension");
    prev = site;
  }
  BulkState bulk(spec);
  const int first = request.ops.front().first;
  std::vector<const Matrix*> ops(prev - first + 1, nullptr);
  for (const auto& [site, op] : request.ops) ops[site - first] = &op.matrix;
  return bulk.expect(first, ops);
}

EnergyEstimate energy(const Model& model, const Ansatz& ansatz,
                      std::span<const double> params,
                      const EnergyOptions& options) {
  model.validate();
  require(model.phys_dim == 2, ErrorCode::kDimension,
          "ansaetze act on one physical qubit per site");
  return spec_energy(model, ansatz_spec(ansatz, params, options.burn_in),
                     ansatz.cell(), options);
}

EnergyEstimate spec_energy(const Model& model, const HoloSpec& spec, int phases,
                           const EnergyOptions& options) {
  model.validate();
  require(phases >= 1, ErrorCode::kInvalidArgument, "phase count must be positive");
  require(model.phys_dim == spec.phys_dim(), ErrorCode::kDimension,
          "model and spec disagree on the site dimension");
  const int k = model.locality();
  const bool steady = options.exact && options.steady_state;
  if (!steady) {
    require(spec.burn_in >= k, ErrorCode::kInvalidArgument,
            "burn-in must cover the term span");
  }
  EnergyEstimate out;

  if (steady) {
    const BulkState bulk(spec);
    for (const auto& t : model.terms) {
      std::vector<const Matrix*> ops;
      for (const auto& f : t.factors) ops.push_back(&f.matrix);
      double sum = 0.0;
      for (int p = 0; p < phases; ++p) sum += bulk.expect(1 + p, ops);
      out.energy += t.coeff * sum / phases;
    }
    return out;
  }

  double var = 0.0;
  for (size_t ti = 0; ti < model.terms.size(); ++ti) {
    const auto& t = model.terms[ti];
    for (int p = 0; p < phases; ++p) {
      CorrelatorRequest req;
      for (int i = 0; i < t.span(); ++i) req.ops.emplace_back(1 + p + i, t.factors[i]);
      if (options.exact) {
        out.energy += t.coeff * exact_correlator(spec, req) / phases;
        continue;
      }
      const EstimatorResult r = sample_correlator(
          spec, req, options.shots, derive_seed(options.seed, ti * 2 + p));
      out.energy += t.coeff * r.mean / phases;
      var += std::pow(t.coeff * r.std_error / phases, 2);
      out.shots += r.shots;
    }
  }
  out.std_error = std::sqrt(var);
  return out;
}

void OptimizerConfig::validate() const {
  require(step > 0 && fd_epsilon > 0 && max_iterations > 0 &&
              sampled_iterations > 0 &&
              gradient_tol > 0 && max_uphill > 0,
          ErrorCode::kInvalidArgument, "gradient settings must be positive");
  require(shots_start > 0 && shots_end > 0 && burn_in >= 0,
          ErrorCode::kInvalidArgument, "shot schedule must be positive");
  require(temperatures > 0 && proposals > 0 && polish_candidates > 0 &&
              restarts > 0 && width > 0 &&
              t_initial > 0 && t_final > 0 && t_final <= t_initial,
          ErrorCode::kInvalidArgument, "annealing settings must be positive");
}

std::vector<double> energy_gradient(const Model& model, const Ansatz& ansatz,
                                    std::span<const double> params,
                                    double epsilon) {
  return central_gradient(
      [&](const std::vector<double>& p) { return energy(model, ansatz, p).energy; },
      std::vector<double>(params.begin(), params.end()), epsilon);
}

namespace {

class Runner {
 public:
  Runner(const Model& model, const Ansatz& ansatz, const OptimizerConfig& cfg)
      : model_(model), ansatz_(ansatz), cfg_(cfg) {}

  // Exact energy, or a sampled one with a fresh derived seed.
  EnergyEstimate eval(const std::vector<double>& p, std::int64_t shots,
                      std::uint64_t seed) const {
    EnergyOptions o;
    o.exact = cfg_.exact;
    o.burn_in = cfg_.burn_in;
    o.shots = shots;
    o.seed = seed;
    return energy(model_, ansatz_, p, o);
  }

  std::int64_t shots_at(int it) const {
    const double f = cfg_.sampled_iterations > 1
                         ? static_cast<double>(it) / (cfg_.sampled_iterations - 1)
                         : 1.0;
    return cfg_.shots_start +
           std::llround(f * static_cast<double>(cfg_.shots_end - cfg_.shots_start));
  }

  std::vector<double> sampled_gradient(const std::vector<double>& x, double eps,
                                       std::int64_t shots, std::uint64_t seed) const {
    const int n = static_cast<int>(x.size());
    std::vector<double> e(2 * n);
    parallel_for(2 * n, [&](std::int64_t i) {
      std::vector<double> p = x;
      p[i / 2] += (i % 2 == 0 ? eps : -eps);
      e[i] = eval(p, shots, derive_seed(seed, i)).energy;
    });
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = (e[2 * i] - e[2 * i + 1]) / (2 * eps);
    return g;
  }

  VqeResult gradient(std::vector<double> x, int first_iteration) const {
    if (!cfg_.exact) return noisy_gradient(std::move(x), first_iteration);
    return cfg_.quasi_newton ? exact_bfgs(std::move(x), first_iteration)
                             : exact_gradient(std::move(x), first_iteration);
  }

  VqeResult exact_gradient(std::vector<double> x, int it0) const {
    VqeResult res;
    EnergyEstimate e = eval(x, 0, 0);
    res.trace.push_back({it0, x, e.energy, 0.0, 0});
    std::vector<double> g = energy_gradient(model_, ansatz_, x, cfg_.fd_epsilon);
    double alpha = cfg_.step;
    int uphill = 0;
    int it = 0;
    res.message = "iteration cap reached";
    while (it < cfg_.max_iterations) {
      if (std::sqrt(dot(g, g)) < cfg_.gradient_tol) {
        res.converged = true;
        res.message = "gradient below tolerance";
        break;
      }
      std::vector<double> xn = x;
      for (size_t i = 0; i < x.size(); ++i) xn[i] -= alpha * g[i];
      const EnergyEstimate en = eval(xn, 0, 0);
      const double scale = std::max(1.0, std::abs(e.energy));
      if (en.energy > e.energy) {
        if (en.energy - e.energy < 1e-14 * scale) {
          res.converged = true;
          res.message = "energy stationary to rounding";
          break;
        }
        alpha *= 0.5;
        if (++uphill > cfg_.max_uphill) {
          res.message = "energy increased for " + std::to_string(uphill) +
                        " consecutive steps";
          break;
        }
        continue;
      }
      uphill = 0;
      ++it;
      const std::vector<double> gn =
          energy_gradient(model_, ansatz_, xn, cfg_.fd_epsilon);
      std::vector<double> s(x.size()), y(x.size());
      for (size_t i = 0; i < x.size(); ++i) {
        s[i] = xn[i] - x[i];
        y[i] = gn[i] - g[i];
      }
      const double sy = dot(s, y);
      alpha = sy > 0 ? std::clamp(dot(s, s) / sy, 1e-8, 10.0) : cfg_.step;
      const bool flat = e.energy - en.energy < 1e-15 * scale;
      x = std::move(xn);
      g = gn;
      e = en;
      res.trace.push_back({it0 + it, x, e.energy, 0.0, 0});
      if (flat && std::sqrt(dot(g, g)) < 10 * cfg_.fd_epsilon) {
        res.converged = true;
        res.message = "energy stationary to rounding";
        break;
      }
    }
    res.params = x;
    res.energy = e.energy;
    return res;
  }

  VqeResult exact_bfgs(std::vector<double> x0, int it0) const {
    BfgsOptions opt;
    opt.initial_step = cfg_.step;
    opt.max_iterations = cfg_.max_iterations;
    opt.gradient_tol = cfg_.gradient_tol;
    opt.max_halvings = cfg_.max_uphill;
    opt.flat_gradient = 10 * cfg_.fd_epsilon;
    VqeResult res;
    const BfgsResult r = bfgs_minimize(
        [&](const std::vector<double>& p) { return eval(p, 0, 0).energy; },
        [&](const std::vector<double>& p) {
          return energy_gradient(model_, ansatz_, p, cfg_.fd_epsilon);
        },
        std::move(x0), opt,
        [&](int it, const std::vector<double>& p, double e) {
          res.trace.push_back({it0 + it, p, e, 0.0, 0});
        });
    res.params = r.x;
    res.energy = r.value;
    res.converged = r.converged;
    res.message = r.message;
    return res;
  }

  VqeResult noisy_gradient(std::vector<double> x, int it0) const {
    VqeResult res;
    std::uint64_t counter = 0;
    auto next_seed = [&] { return derive_seed(cfg_.seed, 0x5EED0000ULL + counter++); };
    EnergyEstimate e = eval(x, shots_at(0), next_seed());
    res.trace.push_back({it0, x, e.energy, e.std_error, e.shots});
    for (int it = 1; it <= cfg_.sampled_iterations; ++it) {
      const std::int64_t shots = shots_at(it - 1);
      // Keep |dE| above a few standard errors for a quadratic minimum.
      const double eps =
          std::clamp(std::sqrt(6.0 * e.std_error), cfg_.fd_epsilon, 0.5);
      const std::vector<double> g = sampled_gradient(x, eps, shots, next_seed());
      for (size_t i = 0; i < x.size(); ++i) x[i] -= cfg_.step * g[i];
      e = eval(x, shots, next_seed());
      res.trace.push_back({it0 + it, x, e.energy, e.std_error, e.shots});
    }
    res.params = x;
    res.energy = e.energy;
    res.std_error = e.std_error;
    res.converged = true;
    res.message = "shot schedule completed";
    return res;
  }

  struct Chain {
    std::vector<double> best;
    double best_e = std::numeric_limits<double>::infinity();
    std::vector<TracePoint> trace;
  };

  Chain anneal_chain(int restart) const {
    Chain ch;
    const int n = ansatz_.num_params();
    const std::uint64_t seed = derive_seed(cfg_.seed, 0xA000ULL + restart);
    PhiloxStream rng(seed, 1);
    std::vector<double> x = (restart == 0 && !cfg_.initial.empty())
                                ? cfg_.initial
                                : random_params(n, derive_seed(seed, 2));
    std::uint64_t counter = 0;
    auto eval_at = [&](const std::vector<double>& p) {
      return eval(p, cfg_.shots_end, derive_seed(seed, 3 + counter++)).energy;
    };
    double e = eval_at(x);
    ch.best = x;
    ch.best_e = e;
    const double ratio = cfg_.t_final / cfg_.t_initial;
    for (int ti = 0; ti < cfg_.temperatures; ++ti) {
      const double f = cfg_.temperatures > 1
                           ? static_cast<double>(ti) / (cfg_.temperatures - 1)
                           : 1.0;
      const double temp = cfg_.t_initial * std::pow(ratio, f);
      const double w = cfg_.width * std::sqrt(temp / cfg_.t_initial);
      for (int k = 0; k < cfg_.proposals; ++k) {
        std::vector<double> xn = x;
        for (auto& v : xn) v += w * rng.normal();
        const double en = eval_at(xn);
        if (en <= e || rng.uniform() < std::exp(-(en - e) / temp)) {
          x = std::move(xn);
          e = en;
          if (e < ch.best_e) {
            ch.best_e = e;
            ch.best = x;
          }
        }
      }
      ch.trace.push_back({restart * cfg_.temperatures + ti, x, e, 0.0, 0});
    }
    return ch;
  }

  VqeResult anneal() const {
    std::vector<Chain> chains(cfg_.restarts);
    parallel_for(cfg_.restarts, [&](std::int64_t r) {
      chains[r] = anneal_chain(static_cast<int>(r));
    });
    VqeResult res;
    std::vector<size_t> order(chains.size());
    for (size_t r = 0; r < chains.size(); ++r) {
      order[r] = r;
      res.trace.insert(res.trace.end(), chains[r].trace.begin(), chains[r].trace.end());
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return chains[a].best_e < chains[b].best_e;
    });
    res.params = chains[order[0]].best;
    res.energy = chains[order[0]].best_e;
    res.converged = true;
    res.message = "annealing completed";
    if (cfg_.polish && cfg_.exact) {
      // Descent can stall on a saddle, so the best few chains are polished.
      const size_t m = std::min<size_t>(order.size(), cfg_.polish_candidates);
      int it0 = cfg_.restarts * cfg_.temperatures;
      bool first = true;
      for (size_t c = 0; c < m; ++c) {
        VqeResult pol = gradient(chains[order[c]].best, it0);
        if (!pol.trace.empty()) it0 = pol.trace.back().iteration + 1;
        res.trace.insert(res.trace.end(), pol.trace.begin(), pol.trace.end());
        if (first || pol.energy < res.energy) {
          res.params = pol.params;
          res.energy = pol.energy;
          res.converged = pol.converged;
          res.message = "annealing then " + pol.message;
          first = false;
        }
      }
    }
    return res;
  }

 private:
  const Model& model_;
  const Ansatz& ansatz_;
  const OptimizerConfig& cfg_;
};

}  // namespace

VqeResult optimize(const Model& model, const Ansatz& ansatz,
                   const OptimizerConfig& config) {
  model.validate();
  ansatz.validate();
  config.validate();
  require(config.initial.empty() ||
              static_cast<int>(config.initial.size()) == ansatz.num_params(),
          ErrorCode::kInvalidArgument, "initial parameters have the wrong length");
  const Runner runner(model, ansatz, config);
  if (config.method == OptimizerMethod::kAnnealing) return runner.anneal();
  std::vector<double> x = config.initial.empty()
                              ? random_params(ansatz.num_params(),
                                              derive_seed(config.seed, 0xA11ULL))
                              : config.initial;
  return runner.gradient(std::move(x), 0);
}

std::string format_trace_csv(const VqeResult& result) {
  std::ostringstream os;
  os << "iteration";
  const size_t n = result.trace.empty() ? result.params.size()
                                        : result.trace.front().params.size();
  for (size_t i = 0; i < n; ++i) os << ",p" << i;
  os << ",energy,stderr,shots\n";
  for (const auto& t : result.trace) {
    os << t.iteration;
    for (double p : t.params) os << ',' << textio::format_decimal(p);
    os << ',' << textio::format_decimal(t.energy) << ',' << textio::format_decimal(t.std_error)
       << ',' << t.shots << '\n';
  }
  return os.str();
}

std::vector<CorrelationRow> correlation_profile(const Ansatz& ansatz,
                                                std::span<const double> params,
                                                int r_max) {
  require(r_max >= 0, ErrorCode::kInvalidArgument, "r_max must be >= 0");
  const BulkState bulk(ansatz_spec(ansatz, params));
  const Matrix x = pauli::X();
  const Matrix z = pauli::Z();
  const int phases = ansatz.cell();
  std::vector<CorrelationRow> rows;
  for (int r = 0; r <= r_max; ++r) {
    CorrelationRow row;
    row.r = r;
    for (int p = 0; p < phases; ++p) {
      for (const Matrix* op : {&x, &z}) {
        const double a = bulk.expect(1 + p, {op});
        const double b = bulk.expect(1 + p + r, {op});
        double ab;
        if (r == 0) {
          const Matrix sq = (*op) * (*op);
          ab = bulk.expect(1 + p, {&sq});
        } else {
          std::vector<const Matrix*> ops(r + 1, nullptr);
          ops.front() = op;
          ops.back() = op;
          ab = bulk.expect(1 + p, ops);
        }
        (op == &x ? row.cx : row.cz) += (ab - a * b) / phases;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace holoq
