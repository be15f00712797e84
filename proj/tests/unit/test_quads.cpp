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

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <tuple>

#include "doctest.h"
#include "holoq/errors.hpp"
#include "holoq/quads.hpp"
#include "support/quench.hpp"

namespace holoq {
namespace {

using testing::dense_h;
using testing::dense_otoc;
using testing::dense_quench;
using testing::random_spec;

LocalHamiltonian heisenberg() { return LocalHamiltonian::from_model(Model::xxz(1.0, 1.0)); }
LocalHamiltonian tfim(double h) { return LocalHamiltonian::from_model(Model::tfim(1.0, h)); }

HoloSpec neel_spec() {
  HoloSpec s;
  s.n_b = 0;
  s.n_p = 1;
  s.unitaries = {pauli::X(), pauli::I()};
  s.left = Vector::Ones(1);
  s.burn_in = 0;
  return s;
}

SpaceTimePoint at(int x, int tau, char label = 'Z') {
  return {x, tau, SiteOperator::pauli(label)};
}

Matrix cos_sin(const Matrix& p, double theta) {
  // exp(-i theta P) for an involution P.
  return std::cos(theta) * Matrix::Identity(p.rows(), p.cols()) -
         cplx(0.0, std::sin(theta)) * p;
}

TEST_CASE("trotterize: empty plans and argument errors") {
  const TrotterPlan empty = trotterize(tfim(1.0), 6, 0.0, 0.1, 2);
  CHECK(empty.r() == 0);
  CHECK(empty.gate_count() == 0);
  CHECK(empty.layer_at_time(0.0) == 0);
  CHECK_THROWS_AS(trotterize(tfim(1.0), 6, 0.1, 0.2, 1), Error);
  CHECK_THROWS_AS(trotterize(tfim(1.0), 6, 1.0, 0.0, 1), Error);
  CHECK_THROWS_AS(trotterize(tfim(1.0), 6, -1.0, 0.1, 1), Error);
  try {
    trotterize(tfim(1.0), 6, 1.0, 0.1, 4);
    FAIL("order 4 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupported);
  }
  // dt not dividing t shortens the step.
  const TrotterPlan p = trotterize(tfim(1.0), 4, 1.0, 0.3, 1);
  CHECK(p.steps == 4);
  CHECK(p.dt == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.r() == 8);
  CHECK(p.layer_at_time(0.5) == 4);
  CHECK_THROWS_AS(p.layer_at_time(0.6), Error);
  CHECK(trotterize(tfim(1.0), 4, 1.0, 0.25, 2).r() == 12);
}

TEST_CASE("trotterize: first-order TFIM layer structure") {
  const double dt = 0.13;
  const double h = 0.7;
  const Matrix zz = kron(pauli::Z(), pauli::Z());
  for (int len : {4, 5}) {
    CAPTURE(len);
    const TrotterPlan p = trotterize(tfim(h), len, dt, dt, 1);
    REQUIRE(p.r() == 2);
    CHECK(p.layers[0].parity == 1);
    CHECK(p.layers[1].parity == 0);
    std::set<int> odd;
    std::set<int> even;
    for (const auto& g : p.layers[0].gates) odd.insert(g.site);
    for (const auto& g : p.layers[1].gates) even.insert(g.site);
    CHECK(odd == (len == 4 ? std::set<int>{1, 3} : std::set<int>{1, 3}));
    CHECK(even == (len == 4 ? std::set<int>{2} : std::set<int>{2, 4}));
    for (const auto& layer : p.layers) {
      for (const auto& g : layer.gates) CHECK(is_unitary(g.matrix, 1e-12));
    }
    // Odd bonds carry the coupling and both fields.
    const Matrix xi = kron(pauli::X(), pauli::I());
    const Matrix ix = kron(pauli::I(), pauli::X());
    const Matrix odd_gate = testing::dense_expm(-1.0 * zz - h * xi - h * ix, dt);
    for (const auto& g : p.layers[0].gates) CHECK(max_abs(g.matrix - odd_gate) < 1e-13);
    // Even bonds carry only the coupling, except the unpaired last site.
    for (const auto& g : p.layers[1].gates) {
      Matrix expect = cos_sin(zz, -dt);
      if (g.site + 1 == len && len % 2 == 1) expect = testing::dense_expm(-1.0 * zz - h * ix, dt);
      CHECK(max_abs(g.matrix - expect) < 1e-13);
    }
  }
}

TEST_CASE("trotterize: piecewise coefficients use the step midpoint") {
  LocalHamiltonian h;
  h.terms.push_back({0, kron(pauli::Z(), pauli::Z()),
                     Coefficient::piecewise({{0.0, 1.0}, {0.5, 3.0}})});
  CHECK(h.terms[0].coeff.at(-1.0) == 1.0);
  CHECK(h.terms[0].coeff.at(0.5) == 3.0);
  const TrotterPlan p = trotterize(h, 2, 1.0, 0.5, 1);
  REQUIRE(p.r() == 4);
  const Matrix zz = kron(pauli::Z(), pauli::Z());
  CHECK(max_abs(p.layers[0].gates[0].matrix - cos_sin(zz, 0.5)) < 1e-13);
  CHECK(max_abs(p.layers[2].gates[0].matrix - cos_sin(zz, 1.5)) < 1e-13);
  CHECK(p.layers[1].gates.empty());
}

// log-log slope of the observable error against dt.
double trotter_slope(int order) {
  const int len = 4;
  const double t = 1.0;
  const double hx = 0.9;
  const double hz = 0.35;
  LocalHamiltonian h = tfim(hx);
  h.terms.push_back({0, pauli::Z(), Coefficient::fixed(hz)});
  std::vector<std::pair<int, Matrix>> placed;
  for (int j = 1; j < len; ++j) placed.emplace_back(j, -1.0 * kron(pauli::Z(), pauli::Z()));
  for (int j = 1; j <= len; ++j) {
    placed.emplace_back(j, -hx * pauli::X());
    placed.emplace_back(j, hz * pauli::Z());
  }
  const Matrix hd = dense_h(len, placed);
  const HoloSpec spec = random_spec(0, 1, 2, 77);
  const Vector psi = testing::dense_initial(spec, len);
  const testing::DenseChain ch = testing::chain_of(spec, len);
  const Vector exact = testing::evolve_exact(hd, psi, t);
  auto zx = [&](const Vector& v) {
    return v.dot(ch.apply(v, 2, 1, pauli::X())).real();
  };
  std::vector<double> logs_dt;
  std::vector<double> logs_err;
  for (double dt : {0.1, 0.05, 0.025}) {
    const TrotterPlan p = trotterize(h, len, t, dt, order);
    const Vector v = testing::apply_layers(psi, ch, p, 0, p.r());
    logs_dt.push_back(std::log(dt));
    logs_err.push_back(std::log(std::abs(zx(v) - zx(exact))));
  }
  const double n = 3.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    sx += logs_dt[i];
    sy += logs_err[i];
    sxx += logs_dt[i] * logs_dt[i];
    sxy += logs_dt[i] * logs_err[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

TEST_CASE("trotterize: observable error follows the plan order") {
  CHECK(trotter_slope(1) == doctest::Approx(1.0).epsilon(0.2));
  CHECK(trotter_slope(2) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("schedule: width is r + k - 1 registers and independent of length") {
  const HoloSpec spec = random_spec(1, 1, 1, 5);
  const TrotterPlan small = trotterize(tfim(1.0), 10, 0.4, 0.2, 1);
  REQUIRE(small.r() == 4);
  int width = -1;
  for (int len : {10, 50, 200}) {
    const TrotterPlan p = trotterize(tfim(1.0), len, 0.4, 0.2, 1);
    const SliceSchedule s = build_quads_schedule(spec, p, {at(len, 4)});
    CHECK(s.n_phys == p.r() + 1);
    CHECK(s.width == spec.n_b + spec.n_p * (p.r() + 1));
    CHECK(s.flatten().n_qubits() == s.width);
    if (width < 0) width = s.width;
    CHECK(s.width == width);
  }
  // r = 2, k = 2: three sites' worth of physical qubits.
  const TrotterPlan two = trotterize(heisenberg(), 8, 0.1, 0.1, 1);
  REQUIRE(two.r() == 2);
  const SliceSchedule s2 = build_quads_schedule(spec, two, {});
  CHECK(s2.n_phys == 3);
  CHECK(s2.width == spec.n_b + 3);
  // The top layer pairs (2,3), (4,5), ...: slices complete sites {1}, {2,3},
  // {4,5}, ... and each later slice extends the MPS by k = 2 sites, keeping
  // r + 1 sites alive.
  int created = 0;
  for (std::size_t sl = 0; sl < s2.slices.size(); ++sl) {
    int fresh = 0;
    for (const auto& ins : s2.slices[sl].instructions()) {
      if (ins.kind == OpKind::kGate && ins.name == "U") {
        created = std::max(created, ins.site);
        ++fresh;
      }
    }
    CAPTURE(sl);
    if (sl == 0) {
      CHECK(s2.top[sl] == std::make_pair(1, 1));
      CHECK(fresh == 2);
    } else if (sl + 1 < s2.slices.size()) {
      CHECK(s2.top[sl].second - s2.top[sl].first == 1);
      CHECK(fresh == 2);
      CHECK(created - s2.top[sl].first + 1 == 3);
    }
  }
}

TEST_CASE("schedule: every plan gate appears exactly once") {
  const HoloSpec spec = random_spec(1, 1, 2, 9);
  for (int order : {1, 2}) {
    for (int len : {5, 8, 13}) {
      CAPTURE(order);
      CAPTURE(len);
      const TrotterPlan p = trotterize(heisenberg(), len, 0.6, 0.2, order);
      const SliceSchedule s = build_quads_schedule(spec, p, {});
      std::map<std::pair<int, int>, int> seen;
      for (const auto& slice : s.slices) {
        for (const auto& ins : slice.instructions()) {
          if (ins.kind != OpKind::kGate || ins.name != "trotter") continue;
          const auto key = std::make_pair(ins.level, ins.site);
          ++seen[key];
          const auto& layer = p.layers[static_cast<std::size_t>(ins.level - 1)];
          bool found = false;
          for (const auto& g : layer.gates) {
            if (g.site == ins.site) found = max_abs(g.matrix - ins.matrix) == 0.0;
          }
          CHECK(found);
        }
      }
      CHECK(static_cast<int>(seen.size()) == p.gate_count());
      for (const auto& [key, count] : seen) CHECK(count == 1);
    }
  }
}

// Replays the instruction stream tracking which site each register hosts.
void audit(const SliceSchedule& s, const std::vector<SpaceTimePoint>& points) {
  std::vector<int> host(static_cast<std::size_t>(s.n_phys), 0);
  std::vector<int> last_level(static_cast<std::size_t>(s.sites + 2), 0);
  std::vector<int> measured(static_cast<std::size_t>(s.sites + 2), -1);
  std::vector<bool> done(static_cast<std::size_t>(s.sites + 2), false);
  auto reg = [&](int q) { return (q - s.n_b) / s.n_p; };
  auto check_hosted = [&](int site, const std::vector<int>& qubits, std::size_t from,
                          std::size_t count) {
    for (std::size_t i = from; i < from + count; ++i) {
      REQUIRE(host[static_cast<std::size_t>(reg(qubits[i]))] == site);
    }
  };
  std::map<std::pair<int, int>, int> level_of_measure;
  for (std::size_t sl = 0; sl < s.slices.size(); ++sl) {
    for (const auto& ins : s.slices[sl].instructions()) {
      switch (ins.kind) {
        case OpKind::kReset: {
          const int r = reg(ins.qubits.front());
          // The previous occupant must be finished.
          REQUIRE(done[static_cast<std::size_t>(host[static_cast<std::size_t>(r)])]);
          host[static_cast<std::size_t>(r)] = 0;
          break;
        }
        case OpKind::kGate:
          if (ins.name == "U") {
            const int r = reg(ins.qubits.front());
            REQUIRE(host[static_cast<std::size_t>(r)] == 0);
            REQUIRE(r == s.register_of(ins.site));
            host[static_cast<std::size_t>(r)] = ins.site;
          } else if (ins.name == "trotter") {
            const std::size_t w = static_cast<std::size_t>(s.n_p);
            check_hosted(ins.site, ins.qubits, 0, w);
            check_hosted(ins.site + 1, ins.qubits, w, w);
            for (int x : {ins.site, ins.site + 1}) {
              REQUIRE(!done[static_cast<std::size_t>(x)]);
              REQUIRE(ins.level > measured[static_cast<std::size_t>(x)]);
              REQUIRE(ins.level > last_level[static_cast<std::size_t>(x)]);
              last_level[static_cast<std::size_t>(x)] = ins.level;
            }
          }
          break;
        case OpKind::kMeasure:
          if (ins.tag == "R") break;
          check_hosted(ins.site, ins.qubits, 0, ins.qubits.size());
          // Gates up to the layer have run, later ones have not.
          REQUIRE(last_level[static_cast<std::size_t>(ins.site)] <= ins.level);
          level_of_measure[{ins.site, ins.level}] = last_level[static_cast<std::size_t>(ins.site)];
          measured[static_cast<std::size_t>(ins.site)] = ins.level;
          break;
        case OpKind::kComment:
          break;
      }
    }
    for (int x = s.top[sl].first; x <= s.top[sl].second; ++x) {
      done[static_cast<std::size_t>(x)] = true;
    }
  }
  for (const auto& p : points) CHECK(level_of_measure.count({p.x, p.tau}) == 1);
  for (int x = 1; x <= s.sites; ++x) CHECK(done[static_cast<std::size_t>(x)]);
}

TEST_CASE("schedule: dataflow audit of reuse, resets and layer order") {
  const HoloSpec spec = random_spec(1, 1, 1, 13);
  for (int order : {1, 2}) {
    const TrotterPlan p = trotterize(tfim(1.0), 12, 0.4, 0.2, order);
    std::vector<SpaceTimePoint> pts = {at(1, p.r()), at(4, 2), at(7, 0), at(12, p.r()),
                                       at(6, 3, 'X')};
    const SliceSchedule s = build_quads_schedule(spec, p, pts);
    CHECK(s.tags.size() == pts.size());
    audit(s, pts);
    // Rotating reuse: register j hosts sites j + 1, j + 1 + n_phys, ...
    for (int j = 0; j < s.n_phys; ++j) {
      const auto& hosted = s.reuse[static_cast<std::size_t>(j)];
      for (std::size_t i = 0; i < hosted.size(); ++i) {
        CHECK(hosted[i] == j + 1 + static_cast<int>(i) * s.n_phys);
      }
    }
  }
  const std::string dump = build_quads_schedule(spec, trotterize(tfim(1.0), 4, 0.2, 0.2, 2),
                                                {})
                               .dump();
  CHECK(dump.find("# slice 1 top 1..2") != std::string::npos);
  CHECK(dump.find("# slice 2 top 3..4") != std::string::npos);
}

TEST_CASE("schedule: argument errors") {
  const HoloSpec spec = random_spec(1, 1, 1, 2);
  const TrotterPlan p = trotterize(tfim(1.0), 6, 0.2, 0.1, 1);
  CHECK_THROWS_AS(build_quads_schedule(spec, p, {at(3, p.r() + 1)}), Error);
  CHECK_THROWS_AS(build_quads_schedule(spec, p, {at(3, -1)}), Error);
  CHECK_THROWS_AS(build_quads_schedule(spec, p, {at(7, 1)}), Error);
  CHECK_THROWS_AS(build_quads_schedule(spec, p, {at(2, 1), at(2, 1, 'X')}), Error);
  const HoloSpec qutrit_like = random_spec(1, 2, 1, 2);
  CHECK_THROWS_AS(build_quads_schedule(qutrit_like, p, {}), Error);
}

TEST_CASE("schedule: flattened unitary equals the unsheared circuit") {
  std::mt19937_64 gen(31);
  std::normal_distribution<double> nd;
  int cases = 0;
  for (int len : {2, 5, 8}) {
    for (int order : {1, 2}) {
      const HoloSpec spec = random_spec(1, 1, 2, 100 + len * 3 + order);
      const LocalHamiltonian h = order == 1 ? tfim(0.8) : heisenberg();
      const TrotterPlan p = trotterize(h, len, 0.5, 0.25, order);
      ScheduleOptions opt;
      opt.reuse = false;
      const Circuit flat = build_quads_schedule(spec, p, {}, opt).flatten();
      const Circuit ref = testing::unsheared_circuit(spec, p);
      REQUIRE(flat.n_qubits() == ref.n_qubits());
      for (int trial = 0; trial < 3; ++trial) {
        Vector in(Eigen::Index{1} << flat.n_qubits());
        for (Eigen::Index i = 0; i < in.size(); ++i) in(i) = cplx(nd(gen), nd(gen));
        in.normalize();
        CHECK((run_unitary(flat, &in) - run_unitary(ref, &in)).norm() < 1e-10);
      }
      ++cases;
    }
  }
  CHECK(cases == 6);
}

TEST_CASE("quench: Neel state under Heisenberg matches dense evolution") {
  const HoloSpec spec = neel_spec();
  const TrotterPlan p = trotterize(heisenberg(), 8, 0.4, 0.2, 1);
  REQUIRE(p.r() == 4);
  std::vector<std::vector<SpaceTimePoint>> obs;
  for (int x = 1; x <= 8; ++x) obs.push_back({at(x, 4)});
  const auto res = simulate_quench(spec, p, obs);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(res[i].value - dense_quench(spec, p, obs[i])) < 1e-10);
    CHECK(res[i].width == 5);
  }
  // The evolution actually moved the magnetisation.
  CHECK(std::abs(res[3].value + 1.0) > 1e-3);
}

TEST_CASE("quench: correlated initial states, products and two-time records") {
  const HoloSpec spec = random_spec(1, 1, 2, 21);
  const TrotterPlan p = trotterize(tfim(0.6), 6, 0.3, 0.1, 2);
  REQUIRE(p.r() == 9);
  const TrotterPlan q = trotterize(tfim(0.6), 6, 0.3, 0.15, 1);
  REQUIRE(q.r() == 4);
  const std::vector<std::vector<SpaceTimePoint>> obs = {
      {at(2, 1), at(3, 4)},
      {at(1, 0, 'X'), at(5, 4)},
      {at(3, 2, 'Y'), at(3, 4, 'X')},
      {at(2, 4), at(3, 4), at(4, 4, 'X')},
  };
  const auto res = simulate_quench(spec, q, obs);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(res[i].value - dense_quench(spec, q, obs[i])) < 1e-10);
  }
  // Same observable on the deeper second-order plan.
  const auto deep = simulate_quench(spec, p, {{at(2, 3), at(4, 9)}});
  CHECK(std::abs(deep[0].value - dense_quench(spec, p, {at(2, 3), at(4, 9)})) < 1e-10);
  // Dephasing at t1 matters: the record differs from the unmeasured product.
  const double unmeasured = dense_quench(spec, q, {at(3, 4, 'X')});
  CHECK(std::abs(res[2].value - unmeasured) > 1e-6);
}

TEST_CASE("quench: post-selected boundary matches the normalised MPS") {
  const Mps m = random_mps(6, 2, 2, 44);
  const HoloSpec spec = spec_from_mps(to_right_canonical(m));
  const TrotterPlan p = trotterize(heisenberg(), 6, 0.2, 0.1, 1);
  const std::vector<SpaceTimePoint> obs = {at(2, 2), at(5, 4, 'X')};
  const auto res = simulate_quench(spec, p, {obs});
  CHECK(std::abs(res[0].value - dense_quench(spec, p, obs)) < 1e-10);
}

TEST_CASE("quench: zero Hamiltonian and empty plans reproduce prep correlators") {
  const HoloSpec spec = random_spec(1, 1, 2, 8);
  CorrelatorRequest req;
  req.length = 6;
  req.ops = {{2, SiteOperator::pauli('Z')}, {5, SiteOperator::pauli('X')}};
  const double prep = exact_correlator(spec, req);
  const TrotterPlan empty = trotterize(tfim(1.0), 6, 0.0, 0.1, 1);
  const SliceSchedule s = build_quads_schedule(spec, empty, {at(2, 0), at(5, 0, 'X')});
  CHECK(s.n_phys == 1);
  CHECK(s.width == spec.width());
  CHECK(std::abs(simulate_quench(spec, empty, {{at(2, 0), at(5, 0, 'X')}})[0].value - prep) <
        1e-12);
  LocalHamiltonian zero;
  const TrotterPlan idle = trotterize(zero, 6, 0.6, 0.2, 2);
  CHECK(idle.r() == 9);
  const auto res = simulate_quench(spec, idle, {{at(2, 9), at(5, 9, 'X')}});
  CHECK(std::abs(res[0].value - prep) < 1e-12);
}

TEST_CASE("quench: sampled mode agrees with exact mode") {
  const HoloSpec spec = random_spec(1, 1, 1, 3);
  const TrotterPlan p = trotterize(tfim(1.0), 5, 0.3, 0.15, 1);
  const std::vector<std::vector<SpaceTimePoint>> obs = {{at(2, 4)}, {at(1, 2, 'X'), at(3, 4)}};
  QuenchOptions opt;
  opt.exact = false;
  opt.shots = 4000;
  opt.seed = 17;
  const auto sampled = simulate_quench(spec, p, obs, opt);
  const auto exact = simulate_quench(spec, p, obs);
  for (std::size_t i = 0; i < obs.size(); ++i) {
    CHECK(sampled[i].shots == 4000);
    CHECK(sampled[i].std_error > 0.0);
    CHECK(std::abs(sampled[i].value - exact[i].value) < 5.0 * sampled[i].std_error);
  }
  // Deterministic for a fixed seed.
  CHECK(simulate_quench(spec, p, obs, opt)[1].value == sampled[1].value);
}

TEST_CASE("quench: capacity errors report the schedule width") {
  const HoloSpec spec = random_spec(1, 1, 1, 3);
  const TrotterPlan p = trotterize(tfim(1.0), 14, 1.2, 0.1, 1);
  REQUIRE(p.r() == 24);
  try {
    simulate_quench(spec, p, {{at(1, 24)}});
    FAIL("capacity not enforced");
  } catch (const CapacityError& e) {
    CHECK(e.requested() == 26);
    CHECK(std::string(e.what()).find("26") != std::string::npos);
  }
}

TEST_CASE("quench: three-site terms run on merged sites") {
  // Cluster-like chain: sum X Z X + 0.7 Z + 0.4 ZZ.
  LocalHamiltonian h;
  h.terms.push_back({0, kron(kron(pauli::X(), pauli::Z()), pauli::X()), Coefficient::fixed(1.0)});
  h.terms.push_back({0, pauli::Z(), Coefficient::fixed(0.7)});
  h.terms.push_back({0, kron(pauli::Z(), pauli::Z()), Coefficient::fixed(0.4)});
  const TrotterPlan p = trotterize(h, 6, 0.2, 0.1, 1);
  CHECK(p.block == 2);
  CHECK(p.phys_dim == 4);
  CHECK(p.sites() == 3);
  CHECK_THROWS_AS(trotterize(h, 5, 0.2, 0.1, 1), Error);
  const HoloSpec spec = random_spec(1, 1, 3, 4);
  const SliceSchedule s = build_quads_schedule(spec, p, {at(3, 4)});
  CHECK(s.width == spec.n_b + 2 * spec.n_p * (p.r() + 1));
  for (const auto& obs : std::vector<std::vector<SpaceTimePoint>>{
           {at(3, 4)}, {at(1, 2, 'X'), at(6, 4)}, {at(4, 1), at(5, 3, 'Y')}}) {
    const auto res = simulate_quench(spec, p, {obs});
    CHECK(std::abs(res[0].value - dense_quench(spec, p, obs)) < 1e-10);
  }
  // Sum of the merged bond generators is H: small-step plans approach exact
  // evolution.
  std::vector<std::pair<int, Matrix>> placed;
  for (int j = 1; j <= 4; ++j) placed.emplace_back(j, kron(kron(pauli::X(), pauli::Z()), pauli::X()));
  for (int j = 1; j <= 6; ++j) placed.emplace_back(j, 0.7 * pauli::Z());
  for (int j = 1; j <= 5; ++j) placed.emplace_back(j, 0.4 * kron(pauli::Z(), pauli::Z()));
  const Matrix hd = dense_h(6, placed);
  const HoloSpec product = testing::product_spec();
  Vector psi = testing::dense_initial(product, 6);
  const auto ch = testing::chain_of(product, 6);
  const TrotterPlan fine = trotterize(h, 6, 0.2, 0.005, 2);
  const Vector v = testing::apply_layers(psi, ch, fine, 0, fine.r());
  CHECK((v - testing::evolve_exact(hd, psi, 0.2)).norm() < 1e-4);
}

TEST_CASE("otoc: trivial limits") {
  const HoloSpec neel = neel_spec();
  const TrotterPlan empty = trotterize(heisenberg(), 6, 0.0, 0.1, 1);
  const auto z = SiteOperator::pauli('Z');
  CHECK(simulate_otoc(neel, empty, 3, z, 3, z).value == doctest::Approx(1.0).epsilon(1e-12));
  const HoloSpec spec = random_spec(1, 1, 2, 61);
  // Commuting W and V at t = 0: W V W V = 1.
  CHECK(simulate_otoc(spec, empty, 2, z, 4, SiteOperator::pauli('X')).value ==
        doctest::Approx(1.0).epsilon(1e-12));
  // Same site, anticommuting: X Z X Z = -1; checked against contraction.
  const Mps m = spec_to_mps(spec, 6);
  SiteOps ops;
  ops[3] = SiteOperator(pauli::X() * pauli::Z() * pauli::X() * pauli::Z(), false);
  const double contracted = normalized_expectation(m, ops, Closure::kTrace).real();
  CHECK(simulate_otoc(spec, empty, 3, SiteOperator::pauli('X'), 3, z).value ==
        doctest::Approx(contracted).epsilon(1e-12));
  CHECK(contracted == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("otoc: TFIM quench matches the dense OTOC") {
  const HoloSpec spec = random_spec(1, 1, 2, 71);
  const TrotterPlan p = trotterize(tfim(1.1), 6, 0.3, 0.3, 2);
  REQUIRE(p.r() == 3);
  const auto z = SiteOperator::pauli('Z');
  const auto x = SiteOperator::pauli('X');
  for (auto [xw, xv] : {std::pair{3, 3}, std::pair{2, 4}, std::pair{5, 2}}) {
    CAPTURE(xw);
    CAPTURE(xv);
    const QuenchResult res = simulate_otoc(spec, p, xw, z, xv, x);
    CHECK(res.width == spec.n_b + (2 * p.r() + 1) + 1);
    CHECK(std::abs(res.value - dense_otoc(spec, p, xw, pauli::Z(), xv, pauli::X()).real()) < 1e-9);
  }
  CHECK_THROWS_AS(simulate_otoc(spec, p, 2, SiteOperator(2.0 * pauli::Z()), 3, x), Error);
}

TEST_CASE("quench: results CSV") {
  QuenchResult r;
  r.points = {at(2, 1), at(3, 4, 'X')};
  r.value = 0.5;
  r.std_error = 0.0;
  r.width = 6;
  CHECK(format_quench_csv({r}) ==
        "observable,x,tau,value,stderr,shots,width\n\"Z(2,1)*X(3,4)\",2;3,1;4,0.5,0,0,6\n");
}

}  // namespace
}  // namespace holoq
