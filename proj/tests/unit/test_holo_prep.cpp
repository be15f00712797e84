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

#include <filesystem>

#include "doctest.h"
#include "holoq/errors.hpp"
#include "holoq/holo_prep.hpp"
#include "support/specs.hpp"

namespace holoq {
namespace {

using testing::ghz_spec;
using testing::product_spec;
using testing::random_spec;

int count(const Circuit& c, OpKind kind) {
  int n = 0;
  for (const auto& ins : c.instructions()) n += ins.kind == kind;
  return n;
}

CorrelatorRequest zz(int a, int b, int length) {
  CorrelatorRequest r;
  r.ops = {{a, SiteOperator::pauli('Z')}, {b, SiteOperator::pauli('Z')}};
  r.length = length;
  return r;
}

TEST_CASE("prep circuit structure") {
  HoloSpec s = random_spec(1, 1, 1, 1);
  CorrelatorRequest none;
  none.length = 3;
  const Circuit c = build_prep_circuit(s, none);
  CHECK(c.n_qubits() == 2);
  CHECK(count(c, OpKind::kReset) == 3);
  CHECK(count(c, OpKind::kGate) == 4);  // boundary preparation + 3 sites
  CHECK(count(c, OpKind::kMeasure) == 0);

  const Circuit two = build_prep_circuit(s, zz(4, 7, 9));
  CHECK(count(two, OpKind::kMeasure) == 2);
  CHECK(two.tags() == std::vector<std::string>{"s4", "s7"});

  s.policy = RightPolicy::kPostselect;
  const Circuit post = build_prep_circuit(s, none);
  CHECK(post.tags() == std::vector<std::string>{"R"});
  CHECK(post.instructions().back().qubits == std::vector<int>{0});

  CHECK_THROWS_AS(build_prep_circuit(s, zz(2, 5, 4)), Error);
  CHECK_THROWS_AS(build_prep_circuit(s, zz(5, 2, 8)), Error);
}

TEST_CASE("width does not depend on the chain length") {
  const HoloSpec s = random_spec(2, 1, 1, 3);
  for (int len : {3, 30, 300}) {
    CorrelatorRequest r;
    r.length = len;
    CHECK(build_prep_circuit(s, r).n_qubits() == 3);
  }
}

TEST_CASE("product spec samples a deterministic value") {
  const HoloSpec s = product_spec();
  CorrelatorRequest r;
  r.ops = {{5, SiteOperator::pauli('Z')}};
  r.length = 6;
  const auto est = sample_correlator(s, r, 500, 1);
  CHECK(est.mean == 1.0);
  CHECK(est.std_error == 0.0);
  CHECK(est.shots == 500);
  CHECK(exact_correlator(s, r) == 1.0);
}

TEST_CASE("identity observables give one") {
  const HoloSpec s = random_spec(2, 1, 3, 5);
  CorrelatorRequest r;
  r.ops = {{2, SiteOperator::pauli('I')}, {4, SiteOperator::pauli('I')}};
  r.length = 6;
  CHECK(exact_correlator(s, r) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("exact correlator equals the MPS contraction") {
  for (int cell : {1, 2}) {
    const HoloSpec s = random_spec(2, 1, cell, 40 + cell);
    const Mps m = spec_to_mps(s, 9);
    for (int rr = 1; rr <= 6; ++rr) {
      const auto req = zz(2, 2 + rr, 9);
      const SiteOps ops{{2, SiteOperator::pauli('Z')},
                        {2 + rr, SiteOperator::pauli('Z')}};
      const cplx ref = contract_expectation(m, ops, Closure::kTrace);
      CHECK(std::abs(exact_correlator(s, req) - ref) < 1e-10);
    }
  }
}

TEST_CASE("postselected correlator equals the normalized contraction") {
  HoloSpec s = random_spec(1, 1, 1, 8);
  s.policy = RightPolicy::kPostselect;
  const Mps m = spec_to_mps(s, 6);
  const SiteOps ops{{2, SiteOperator::pauli('X')}, {5, SiteOperator::pauli('Z')}};
  CorrelatorRequest req;
  req.ops = {{2, SiteOperator::pauli('X')}, {5, SiteOperator::pauli('Z')}};
  req.length = 6;
  const cplx ref = normalized_expectation(m, ops);
  CHECK(std::abs(exact_correlator(s, req) - ref) < 1e-10);
  const Vector psi = to_dense(m);
  const cplx dense = testing::dense_expectation(psi, 6, 2, {{2, pauli::X()}, {5, pauli::Z()}});
  CHECK(std::abs(exact_correlator(s, req) - dense) < 1e-10);

  const auto est = sample_correlator(s, req, 40000, 3);
  CHECK(est.accepted < est.shots);
  CHECK(est.accepted > 0);
  CHECK(std::abs(est.mean - ref.real()) < 5 * est.std_error);
}

TEST_CASE("GHZ correlations at any distance") {
  const HoloSpec s = ghz_spec();
  for (int rr = 1; rr <= 6; ++rr) {
    CHECK(exact_correlator(s, zz(3, 3 + rr, 10)) == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto est = sample_correlator(s, zz(2, 8, 8), 200, 4);
  CHECK(est.mean == 1.0);
}

TEST_CASE("circuit density propagation agrees with the channels") {
  const HoloSpec s = random_spec(1, 1, 2, 12);
  CorrelatorRequest req;
  req.ops = {{2, SiteOperator::pauli('X')}, {4, SiteOperator::pauli('Y')}};
  req.length = 5;
  const Circuit c = build_prep_circuit(s, req);
  CHECK(run_exact_product(c, {"s2", "s4"}) ==
        doctest::Approx(exact_correlator(s, req)).epsilon(1e-10));
}

TEST_CASE("sampled correlator within five standard errors") {
  const HoloSpec s = random_spec(1, 1, 1, 21);
  const auto req = zz(2, 3, 4);
  const auto est = sample_correlator(s, req, 20000, 77, true);
  CHECK(est.samples.size() == 20000);
  CHECK(std::abs(est.mean - exact_correlator(s, req)) < 5 * est.std_error);
  // Same seed, same answer.
  const auto again = sample_correlator(s, req, 20000, 77);
  CHECK(again.mean == est.mean);
}

TEST_CASE("bulk requests count from the burn-in") {
  HoloSpec s = random_spec(1, 1, 1, 6);
  s.burn_in = 4;
  CorrelatorRequest bulk;
  bulk.ops = {{1, SiteOperator::pauli('Z')}, {2, SiteOperator::pauli('Z')}};
  const auto res = resolve(s, bulk);
  CHECK(res.length == 6);
  CHECK(res.ops[0].first == 5);
  CHECK(exact_correlator(s, bulk) == doctest::Approx(exact_correlator(s, zz(5, 6, 6))));
  CHECK(bulk.describe() == "Z1*Z2 bulk");
}

TEST_CASE("burn-in convergence is exponential") {
  const HoloSpec base = random_spec(1, 1, 1, 31);
  CorrelatorRequest bulk;
  bulk.ops = {{1, SiteOperator::pauli('Z')}, {2, SiteOperator::pauli('Z')}};
  std::vector<double> gaps;
  for (int b : {1, 2, 4, 8}) {
    HoloSpec s = base;
    s.burn_in = b;
    const double cb = exact_correlator(s, bulk);
    s.burn_in = 2 * b;
    gaps.push_back(std::abs(exact_correlator(s, bulk) - cb));
  }
  // Doubling b should at least square the (sub-unit) decay factor.
  CHECK(gaps[3] < gaps[2] * gaps[2] / gaps[1] * 10 + 1e-15);
  CHECK(gaps[3] < 1e-3 * gaps[0] + 1e-15);
  HoloSpec a = base;
  a.burn_in = kAutoBurnIn;
  const int b = auto_burn_in(a, bulk);
  CHECK(b >= 4);
  HoloSpec s = base;
  s.burn_in = b;
  const double cb = exact_correlator(s, bulk);
  s.burn_in = 2 * b;
  CHECK(std::abs(exact_correlator(s, bulk) - cb) < 1e-8);
}

TEST_CASE("bond spectrum of simple specs") {
  HoloSpec p = product_spec();
  CHECK(bond_entanglement_spectrum(p, 3) == std::vector<double>{1.0});
  HoloSpec q = random_spec(1, 1, 1, 2);
  q.unitaries = {Matrix::Identity(4, 4)};
  q.left = Vector::Unit(2, 0);
  const auto one = bond_entanglement_spectrum(q, 2);
  CHECK(one[0] == doctest::Approx(1.0));
  CHECK(std::abs(one[1]) < 1e-15);
  const auto g = bond_entanglement_spectrum(ghz_spec(), 4);
  CHECK(g[0] == doctest::Approx(0.5));
  CHECK(g[1] == doctest::Approx(0.5));
}

TEST_CASE("bond spectrum equals the physical Schmidt spectrum") {
  const HoloSpec s = random_spec(2, 1, 1, 19);
  const Vector psi = testing::unrolled_state(s, 8);
  for (int j = 1; j <= 7; ++j) {
    const auto bond = bond_entanglement_spectrum(s, j);
    const auto schmidt = testing::schmidt_spectrum(psi, 2, j);
    // Either list may carry extra (numerically zero) entries.
    for (std::size_t k = 0; k < std::max(bond.size(), schmidt.size()); ++k) {
      const double a = k < bond.size() ? bond[k] : 0.0;
      const double b = k < schmidt.size() ? schmidt[k] : 0.0;
      CHECK(std::abs(a - b) < 1e-10);
    }
  }
}

TEST_CASE("replica swap estimate of the purity") {
  const auto prod = renyi2_swap_sample(product_spec(), 3, 100, 1);
  CHECK(prod.mean == 1.0);
  CHECK(renyi2_entropy(prod.mean) == 0.0);

  const Circuit g = build_renyi2_circuit(ghz_spec(), 3);
  CHECK(g.n_qubits() == 3);
  CHECK(run_exact_product(g, g.tags()) == doctest::Approx(0.5));

  const HoloSpec s = random_spec(1, 1, 1, 55);
  double purity = 0.0;
  for (double l : bond_entanglement_spectrum(s, 3)) purity += l * l;
  const Circuit c = build_renyi2_circuit(s, 3);
  CHECK(run_exact_product(c, c.tags()) == doctest::Approx(purity).epsilon(1e-12));
  const auto est = renyi2_swap_sample(s, 3, 100000, 9);
  CHECK(std::abs(est.mean - purity) < 5 * est.std_error);

  const HoloSpec two = random_spec(2, 1, 1, 56);
  double p2 = 0.0;
  for (double l : bond_entanglement_spectrum(two, 4)) p2 += l * l;
  const Circuit c2 = build_renyi2_circuit(two, 4);
  CHECK(run_exact_product(c2, c2.tags()) == doctest::Approx(p2).epsilon(1e-12));

  HoloSpec wide = product_spec();
  wide.n_b = 12;
  CHECK_THROWS_AS(build_renyi2_circuit(wide, 1), CapacityError);
}

TEST_CASE("post-selection with no acceptance") {
  HoloSpec s = random_spec(1, 1, 1, 1);
  s.unitaries = {Matrix::Identity(4, 4)};
  s.left = Vector::Unit(2, 0);
  s.right = Vector::Unit(2, 1);
  s.policy = RightPolicy::kPostselect;
  CorrelatorRequest r;
  r.length = 3;
  try {
    sample_correlator(s, r, 100, 1);
    FAIL("expected no-acceptance error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoAcceptance);
  }
}

TEST_CASE("spec container round trip") {
  HoloSpec s = random_spec(1, 2, 2, 4);
  s.policy = RightPolicy::kPostselect;
  s.burn_in = kAutoBurnIn;
  const auto path = std::filesystem::temp_directory_path() / "holoq_test.spec";
  save_spec(s, path);
  const HoloSpec back = load_spec(path);
  std::filesystem::remove(path);
  CHECK(back.n_b == 1);
  CHECK(back.n_p == 2);
  CHECK(back.burn_in == kAutoBurnIn);
  CHECK(back.policy == RightPolicy::kPostselect);
  REQUIRE(back.unitaries.size() == 2);
  for (int k = 0; k < 2; ++k) CHECK((back.unitaries[k].array() == s.unitaries[k].array()).all());
  CHECK((back.left.array() == s.left.array()).all());
  CHECK((back.right.array() == s.right.array()).all());
  CHECK_THROWS_AS(parse_spec("holoq-spec 1\nn_b 1\nn_p 1\npolicy sideways\n"), Error);
  CHECK_THROWS_AS(parse_spec(format_spec(s) + "extra"), Error);
}

TEST_CASE("MPS to spec and back") {
  const Mps m = to_right_canonical(random_mps(5, 2, 2, 3));
  const HoloSpec s = spec_from_mps(m);
  CHECK(s.unitaries.size() == 5);
  const Mps back = spec_to_mps(s, 5);
  for (int j = 0; j < 5; ++j) {
    for (int q = 0; q < 2; ++q) CHECK(max_abs(back.tensors[j][q] - m.tensors[j][q]) < 1e-14);
  }
  CorrelatorRequest req;
  req.ops = {{1, SiteOperator::pauli('Y')}, {5, SiteOperator::pauli('X')}};
  req.length = 5;
  const SiteOps ops{{1, SiteOperator::pauli('Y')}, {5, SiteOperator::pauli('X')}};
  CHECK(std::abs(exact_correlator(s, req) - normalized_expectation(m, ops)) < 1e-10);
}

}  // namespace
}  // namespace holoq
