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

#include "holoq/jobs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <variant>

#include <Eigen/SVD>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include "json.hpp"

#include "holoq/holo_prep.hpp"
#include "holoq/oracles.hpp"
#include "holoq/quads.hpp"
#include "holoq/rng.hpp"
#include "holoq/textio.hpp"
#include "holoq/vqe.hpp"

namespace holoq::jobs {

namespace {

using json = nlohmann::json;
using textio::format_decimal;

inline constexpr const char* kVersion = "0.1.0";

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::kConfig, path + ": " + what);
}

// An object whose keys must all be consumed before done().
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
    if (!j.is_object()) bad(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  std::string at(const std::string& key) const { return path_ + "." + key; }

  const json* find(const std::string& key) {
    const auto it = j_->find(key);
    if (it == j_->end()) return nullptr;
    used_.insert(key);
    return &*it;
  }
  const json& need(const std::string& key) {
    const json* v = find(key);
    if (v == nullptr) bad(path_, "missing key '" + key + "'");
    return *v;
  }

  double num(const std::string& key, std::optional<double> def = {}) {
    const json* v = def ? find(key) : &need(key);
    if (v == nullptr) return *def;
    if (!v->is_number()) bad(at(key), "expected a number");
    return v->get<double>();
  }
  std::int64_t integer(const std::string& key, std::optional<std::int64_t> def = {}) {
    const json* v = def ? find(key) : &need(key);
    if (v == nullptr) return *def;
    if (!v->is_number_integer()) bad(at(key), "expected an integer");
    return v->get<std::int64_t>();
  }
  int int32(const std::string& key, std::optional<int> def = {}) {
    const std::int64_t v = integer(key, def);
    if (v < -(1LL << 30) || v > (1LL << 30)) bad(at(key), "integer out of range");
    return static_cast<int>(v);
  }
  std::uint64_t u64(const std::string& key, std::optional<std::uint64_t> def = {}) {
    const json* v = def ? find(key) : &need(key);
    if (v == nullptr) return *def;
    if (!v->is_number_unsigned()) bad(at(key), "expected a non-negative integer");
    return v->get<std::uint64_t>();
  }
  bool flag(const std::string& key, std::optional<bool> def = {}) {
    const json* v = def ? find(key) : &need(key);
    if (v == nullptr) return *def;
    if (!v->is_boolean()) bad(at(key), "expected true or false");
    return v->get<bool>();
  }
  std::string str(const std::string& key, std::optional<std::string> def = {}) {
    const json* v = def ? find(key) : &need(key);
    if (v == nullptr) return *def;
    if (!v->is_string()) bad(at(key), "expected a string");
    return v->get<std::string>();
  }
  std::vector<double> nums(const std::string& key) {
    const json& v = need(key);
    if (!v.is_array()) bad(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) bad(at(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  std::vector<int> ints(const std::string& key) {
    const json* v = find(key);
    std::vector<int> out;
    if (v == nullptr) return out;
    if (!v->is_array()) bad(at(key), "expected an array of integers");
    for (const auto& e : *v) {
      if (!e.is_number_integer()) bad(at(key), "expected an array of integers");
      out.push_back(e.get<int>());
    }
    return out;
  }
  const json& array(const std::string& key) {
    const json& v = need(key);
    if (!v.is_array()) bad(at(key), "expected an array");
    return v;
  }

  void done() const {
    for (auto it = j_->begin(); it != j_->end(); ++it) {
      if (used_.count(it.key()) == 0) bad(path_, "unknown key '" + it.key() + "'");
    }
  }

 private:
  const json* j_;
  std::string path_;
  std::set<std::string> used_;
};

std::string index_path(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

// ---------------------------------------------------------------------------
// Typed configs

// Site operator from Pauli letters, one letter per qubit of the site.
SiteOperator site_op(const std::string& label, const std::string& path) {
  if (label.empty()) bad(path, "empty operator label");
  Matrix m = Matrix::Ones(1, 1);
  for (char c : label) {
    if (std::string("IXYZ").find(c) == std::string::npos) {
      bad(path, "operator label '" + label + "' must use I, X, Y, Z");
    }
    m = kron(m, pauli::from_label(c));
  }
  return SiteOperator(m);
}

// "Z1 Z3" or "ZX2*IZ4": Pauli letters followed by a 1-based site.
std::vector<std::pair<int, SiteOperator>> site_ops(const std::string& text,
                                                   const std::string& path) {
  std::string s = text;
  std::replace(s.begin(), s.end(), '*', ' ');
  std::istringstream in(s);
  std::vector<std::pair<int, SiteOperator>> out;
  std::string tok;
  while (in >> tok) {
    const auto digit = tok.find_first_of("0123456789");
    if (digit == 0 || digit == std::string::npos ||
        tok.find_first_not_of("0123456789", digit) != std::string::npos) {
      bad(path, "cannot read operator token '" + tok + "'");
    }
    out.emplace_back(std::stoi(tok.substr(digit)),
                     site_op(tok.substr(0, digit), path));
  }
  return out;
}

// Per-site labels: a string gives one qubit per site, an array one label
// per site.
std::vector<SiteOperator> term_factors(const json& v, const std::string& path) {
  std::vector<SiteOperator> out;
  if (v.is_string()) {
    for (char c : v.get<std::string>()) out.push_back(site_op(std::string(1, c), path));
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_string()) bad(path, "expected operator labels");
      out.push_back(site_op(e.get<std::string>(), path));
    }
  } else {
    bad(path, "expected a label string or an array of labels");
  }
  if (out.empty()) bad(path, "empty term");
  return out;
}

Coefficient coefficient(const json* v, const std::string& path) {
  if (v == nullptr) return Coefficient::fixed(1.0);
  if (v->is_number()) return Coefficient::fixed(v->get<double>());
  Obj o(*v, path);
  const json& arr = o.array("pieces");
  std::vector<std::pair<double, double>> pieces;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const json& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      bad(index_path(o.at("pieces"), i), "expected [start, value]");
    }
    pieces.emplace_back(p[0].get<double>(), p[1].get<double>());
  }
  o.done();
  return Coefficient::piecewise(std::move(pieces));
}

Model model_ref(const json& v, const std::string& path) {
  Obj o(v, path);
  const std::string kind = o.str("kind");
  Model m;
  if (kind == "xxz" || kind == "heisenberg") {
    const double J = o.num("J", 1.0);
    m = Model::xxz(J, kind == "xxz" ? o.num("delta", 1.0) : 1.0);
  } else if (kind == "tfim") {
    const double J = o.num("J", 1.0);
    m = Model::tfim(J, o.num("h", 1.0));
  } else if (kind == "custom") {
    const json& arr = o.array("terms");
    std::vector<ModelTerm> terms;
    int dim = 0;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Obj t(arr[i], index_path(o.at("terms"), i));
      ModelTerm term;
      term.factors = term_factors(t.need("ops"), t.at("ops"));
      term.coeff = t.num("coeff", 1.0);
      t.done();
      dim = term.factors.front().dim();
      terms.push_back(std::move(term));
    }
    m = Model::custom(std::move(terms), dim == 0 ? 2 : dim);
  } else {
    bad(o.at("kind"), "unknown model '" + kind + "'");
  }
  o.done();
  return m;
}

LocalHamiltonian hamiltonian_ref(const json& v, const std::string& path) {
  if (v.is_object() && v.contains("kind") && v["kind"] == "local") {
    Obj o(v, path);
    o.str("kind");
    LocalHamiltonian h;
    h.translation_invariant = o.flag("translation_invariant", true);
    h.period = o.int32("period", 1);
    const json& arr = o.array("terms");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      Obj t(arr[i], index_path(o.at("terms"), i));
      const auto factors = term_factors(t.need("ops"), t.at("ops"));
      HamiltonianTerm term;
      term.op = Matrix::Ones(1, 1);
      for (const auto& f : factors) term.op = kron(term.op, f.matrix);
      h.phys_dim = factors.front().dim();
      term.offset = t.int32("offset", 0);
      term.coeff = coefficient(t.find("coeff"), t.at("coeff"));
      t.done();
      h.terms.push_back(std::move(term));
    }
    o.done();
    return h;
  }
  return LocalHamiltonian::from_model(model_ref(v, path));
}

Ansatz ansatz_ref(const json& v, const std::string& path) {
  Obj o(v, path);
  const std::string kind = o.str("kind");
  Ansatz a;
  if (kind == "heisenberg-g") {
    a = Ansatz::heisenberg_g();
  } else if (kind == "xxz-u1") {
    a = Ansatz::xxz_u1(o.flag("alternation", true));
  } else if (kind == "xyz") {
    a = Ansatz::xyz(o.flag("alternation", true));
  } else if (kind == "star") {
    const int n_b = o.int32("n_b");
    a = Ansatz::star(n_b, o.flag("alternation", false));
  } else {
    bad(o.at("kind"), "unknown ansatz '" + kind + "'");
  }
  o.done();
  return a;
}

struct SpecRef {
  enum class Kind { kFile, kMps, kBuiltin, kAnsatz } kind = Kind::kBuiltin;
  std::string path;
  std::string builtin;
  Ansatz ansatz;
  std::vector<double> params;
  std::optional<int> burn_in;
};

SpecRef spec_ref(const json& v, const std::string& path) {
  Obj o(v, path);
  SpecRef s;
  int sources = 0;
  if (o.find("file") != nullptr) {
    s.kind = SpecRef::Kind::kFile;
    s.path = o.str("file");
    ++sources;
  }
  if (o.find("mps") != nullptr) {
    s.kind = SpecRef::Kind::kMps;
    s.path = o.str("mps");
    ++sources;
  }
  if (o.find("builtin") != nullptr) {
    s.kind = SpecRef::Kind::kBuiltin;
    s.builtin = o.str("builtin");
    if (s.builtin != "ghz" && s.builtin != "product" && s.builtin != "neel") {
      bad(o.at("builtin"), "unknown builtin '" + s.builtin + "'");
    }
    ++sources;
  }
  if (o.find("ansatz") != nullptr) {
    s.kind = SpecRef::Kind::kAnsatz;
    s.ansatz = ansatz_ref(o.need("ansatz"), o.at("ansatz"));
    s.params = o.nums("params");
    ++sources;
  }
  if (sources != 1) bad(path, "give exactly one of file, mps, builtin, ansatz");
  if (o.find("burn_in") != nullptr) s.burn_in = o.int32("burn_in");
  o.done();
  return s;
}

HoloSpec load_spec_ref(const SpecRef& ref, const std::filesystem::path& base) {
  const auto resolve_path = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() || base.empty() ? fp : base / fp;
  };
  HoloSpec spec;
  switch (ref.kind) {
    case SpecRef::Kind::kFile:
      spec = load_spec(resolve_path(ref.path));
      break;
    case SpecRef::Kind::kMps:
      spec = spec_from_mps(to_right_canonical(load_mps(resolve_path(ref.path))));
      break;
    case SpecRef::Kind::kBuiltin:
      spec = builtin_spec(ref.builtin);
      break;
    case SpecRef::Kind::kAnsatz:
      spec = ansatz_spec(ref.ansatz, ref.params);
      break;
  }
  if (ref.burn_in) spec.burn_in = *ref.burn_in;
  spec.validate();
  return spec;
}

struct Common {
  std::string command;
  std::uint64_t seed = 1;
  std::int64_t shots = 1000;
  bool exact = false;
  bool verify_dense = false;
};

struct EnergyCfg {
  Model model;
  std::optional<int> phases;
  bool steady_state = true;
};

struct PrepCfg {
  SpecRef spec;
  std::vector<CorrelatorRequest> requests;
  std::optional<EnergyCfg> energy;
  std::vector<int> spectrum;
  std::vector<int> purity;
  bool both = false;
};

struct VqeCfg {
  Model model;
  Ansatz ansatz;
  OptimizerConfig optimizer;
  std::optional<int> r_max;
  std::optional<int> reference_chi;
  double reference_tol = 1e-4;
  std::vector<double> sweep;
  int ed_length = 12;
  int starts = 4;
  std::vector<Ansatz> sweep_ansatze;  // empty: the main ansatz
};

struct PointCfg {
  int x = 1;
  std::optional<int> tau;
  std::optional<double> time;
  SiteOperator op;
};

struct OtocCfg {
  PointCfg w;
  PointCfg v;
};

struct QuadsCfg {
  SpecRef spec;
  LocalHamiltonian h;
  int length = 0;
  double t = 0.0;
  double dt = 0.0;
  int order = 2;
  std::vector<std::vector<PointCfg>> observables;
  std::vector<OtocCfg> otoc;
  bool schedule = false;
};

struct OracleItem {
  std::string kind;
  double J = 1.0;
  double h = 1.0;
  int r_max = 4;
  Model model;
  int length = 2;
  Boundary boundary = Boundary::kOpen;
  int chi = 2;
};

struct OracleCfg {
  std::vector<OracleItem> items;
};

struct VerifyCfg {
  int cases = 12;
};

using Payload = std::variant<PrepCfg, VqeCfg, QuadsCfg, OracleCfg, VerifyCfg>;

struct Config {
  Common common;
  Payload payload;
};

PrepCfg prep_cfg(const json& v, const std::string& path) {
  Obj o(v, path);
  PrepCfg c;
  c.spec = spec_ref(o.need("spec"), o.at("spec"));
  if (const json* reqs = o.find("requests")) {
    if (!reqs->is_array()) bad(o.at("requests"), "expected an array");
    for (std::size_t i = 0; i < reqs->size(); ++i) {
      Obj r((*reqs)[i], index_path(o.at("requests"), i));
      CorrelatorRequest req;
      req.ops = site_ops(r.str("ops"), r.at("ops"));
      req.length = r.int32("length", 0);
      r.done();
      c.requests.push_back(std::move(req));
    }
  }
  if (const json* e = o.find("energy")) {
    Obj eo(*e, o.at("energy"));
    EnergyCfg ec;
    ec.model = model_ref(eo.need("model"), eo.at("model"));
    if (eo.find("phases") != nullptr) ec.phases = eo.int32("phases");
    ec.steady_state = eo.flag("steady_state", true);
    eo.done();
    c.energy = std::move(ec);
  }
  c.spectrum = o.ints("spectrum");
  c.purity = o.ints("purity");
  c.both = o.flag("both", false);
  o.done();
  return c;
}

VqeCfg vqe_cfg(const json& v, const std::string& path) {
  Obj o(v, path);
  VqeCfg c;
  c.model = model_ref(o.need("model"), o.at("model"));
  c.ansatz = ansatz_ref(o.need("ansatz"), o.at("ansatz"));
  if (const json* ov = o.find("optimizer")) {
    Obj p(*ov, o.at("optimizer"));
    OptimizerConfig& cfg = c.optimizer;
    const std::string method = p.str("method", "gradient");
    if (method == "gradient") {
      cfg.method = OptimizerMethod::kGradient;
    } else if (method == "annealing") {
      cfg.method = OptimizerMethod::kAnnealing;
    } else {
      bad(p.at("method"), "unknown method '" + method + "'");
    }
    if (p.find("initial") != nullptr) cfg.initial = p.nums("initial");
    cfg.quasi_newton = p.flag("quasi_newton", cfg.quasi_newton);
    cfg.step = p.num("step", cfg.step);
    cfg.fd_epsilon = p.num("fd_epsilon", cfg.fd_epsilon);
    cfg.max_iterations = p.int32("max_iterations", cfg.max_iterations);
    cfg.gradient_tol = p.num("gradient_tol", cfg.gradient_tol);
    cfg.max_uphill = p.int32("max_uphill", cfg.max_uphill);
    cfg.sampled_iterations = p.int32("sampled_iterations", cfg.sampled_iterations);
    cfg.shots_start = p.integer("shots_start", cfg.shots_start);
    cfg.shots_end = p.integer("shots_end", cfg.shots_end);
    cfg.burn_in = p.int32("burn_in", cfg.burn_in);
    cfg.temperatures = p.int32("temperatures", cfg.temperatures);
    cfg.proposals = p.int32("proposals", cfg.proposals);
    cfg.t_initial = p.num("t_initial", cfg.t_initial);
    cfg.t_final = p.num("t_final", cfg.t_final);
    cfg.width = p.num("width", cfg.width);
    cfg.restarts = p.int32("restarts", cfg.restarts);
    cfg.polish = p.flag("polish", cfg.polish);
    cfg.polish_candidates = p.int32("polish_candidates", cfg.polish_candidates);
    p.done();
  }
  if (const json* cv = o.find("correlations")) {
    Obj p(*cv, o.at("correlations"));
    c.r_max = p.int32("r_max");
    p.done();
  }
  if (const json* rv = o.find("reference")) {
    Obj p(*rv, o.at("reference"));
    c.reference_chi = p.int32("chi");
    c.reference_tol = p.num("tolerance", c.reference_tol);
    p.done();
  }
  if (const json* sv = o.find("sweep")) {
    Obj p(*sv, o.at("sweep"));
    c.sweep = p.nums("delta");
    if (c.sweep.empty()) bad(p.at("delta"), "empty sweep");
    c.ed_length = p.int32("ed_length", c.ed_length);
    c.starts = p.int32("starts", c.starts);
    if (const json* av = p.find("ansatze")) {
      if (!av->is_array() || av->empty()) bad(p.at("ansatze"), "expected a non-empty array");
      for (std::size_t i = 0; i < av->size(); ++i) {
        c.sweep_ansatze.push_back(ansatz_ref((*av)[i], index_path(p.at("ansatze"), i)));
      }
    }
    if (c.starts < 1) bad(p.at("starts"), "must be positive");
    p.done();
    if (c.model.kind != ModelKind::kXxz) bad(o.at("sweep"), "sweeps need an xxz model");
  }
  o.done();
  return c;
}

PointCfg point_cfg(const json& v, const std::string& path, bool timed) {
  Obj o(v, path);
  PointCfg p;
  p.x = o.int32("x");
  p.op = site_op(o.str("op"), o.at("op"));
  if (timed) {
    const bool has_tau = o.find("tau") != nullptr;
    const bool has_time = o.find("time") != nullptr;
    if (has_tau == has_time) bad(path, "give exactly one of tau, time");
    if (has_tau) p.tau = o.int32("tau");
    if (has_time) p.time = o.num("time");
  }
  o.done();
  return p;
}

QuadsCfg quads_cfg(const json& v, const std::string& path) {
  Obj o(v, path);
  QuadsCfg c;
  c.spec = spec_ref(o.need("spec"), o.at("spec"));
  c.h = hamiltonian_ref(o.need("hamiltonian"), o.at("hamiltonian"));
  c.length = o.int32("length");
  c.t = o.num("t");
  c.dt = o.num("dt");
  c.order = o.int32("order", 2);
  if (const json* obs = o.find("observables")) {
    if (!obs->is_array()) bad(o.at("observables"), "expected an array");
    for (std::size_t i = 0; i < obs->size(); ++i) {
      const std::string p = index_path(o.at("observables"), i);
      const json& pts = (*obs)[i];
      if (!pts.is_array() || pts.empty()) bad(p, "expected a non-empty array of points");
      std::vector<PointCfg> row;
      for (std::size_t k = 0; k < pts.size(); ++k) {
        row.push_back(point_cfg(pts[k], index_path(p, k), true));
      }
      c.observables.push_back(std::move(row));
    }
  }
  if (const json* ot = o.find("otoc")) {
    if (!ot->is_array()) bad(o.at("otoc"), "expected an array");
    for (std::size_t i = 0; i < ot->size(); ++i) {
      Obj e((*ot)[i], index_path(o.at("otoc"), i));
      OtocCfg oc;
      oc.w = point_cfg(e.need("w"), e.at("w"), false);
      oc.v = point_cfg(e.need("v"), e.at("v"), false);
      e.done();
      c.otoc.push_back(std::move(oc));
    }
  }
  c.schedule = o.flag("schedule", false);
  o.done();
  return c;
}

OracleItem oracle_item(const json& v, const std::string& path) {
  OracleItem item;
  if (v.is_string()) {
    item.kind = v.get<std::string>();
    if (item.kind != "heisenberg-exact") {
      bad(path, "'" + item.kind + "' needs parameters");
    }
    return item;
  }
  if (!v.is_object() || v.size() != 1) bad(path, "expected {\"<oracle>\": {...}}");
  item.kind = v.begin().key();
  Obj o(v.begin().value(), path + "." + item.kind);
  if (item.kind == "heisenberg-exact") {
  } else if (item.kind == "tfim") {
    item.J = o.num("J", 1.0);
    item.h = o.num("h", 1.0);
    item.r_max = o.int32("r_max", 4);
  } else if (item.kind == "ed") {
    item.model = model_ref(o.need("model"), o.at("model"));
    item.length = o.int32("length");
    const std::string b = o.str("boundary", "open");
    if (b == "open") {
      item.boundary = Boundary::kOpen;
    } else if (b == "periodic") {
      item.boundary = Boundary::kPeriodic;
    } else {
      bad(o.at("boundary"), "expected open or periodic");
    }
  } else if (item.kind == "optimal-mps") {
    item.model = model_ref(o.need("model"), o.at("model"));
    item.chi = o.int32("chi");
  } else {
    bad(path, "unknown oracle '" + item.kind + "'");
  }
  o.done();
  return item;
}

Config decode(const json& root) {
  Obj o(root, "config");
  if (o.find("schema_version") == nullptr) bad("config", "missing key 'schema_version'");
  const std::int64_t version = o.integer("schema_version");
  if (version != kSchemaVersion) {
    bad("config.schema_version", "unsupported schema version " + std::to_string(version) +
                                     " (expected " + std::to_string(kSchemaVersion) + ")");
  }
  Config c;
  c.common.command = o.str("command");
  c.common.seed = o.u64("seed", 1);
  c.common.shots = o.integer("shots", 1000);
  if (c.common.shots < 1) bad("config.shots", "must be positive");
  c.common.exact = o.flag("exact", false);
  c.common.verify_dense = o.flag("verify_dense", false);
  const std::string& cmd = c.common.command;
  const std::string at = "config." + cmd;
  const json* payload = o.find(cmd);
  if (cmd == "prep") {
    if (payload == nullptr) bad("config", "missing key 'prep'");
    c.payload = prep_cfg(*payload, at);
  } else if (cmd == "vqe") {
    if (payload == nullptr) bad("config", "missing key 'vqe'");
    c.payload = vqe_cfg(*payload, at);
  } else if (cmd == "quads") {
    if (payload == nullptr) bad("config", "missing key 'quads'");
    c.payload = quads_cfg(*payload, at);
  } else if (cmd == "oracle") {
    if (payload == nullptr) bad("config", "missing key 'oracle'");
    Obj p(*payload, at);
    const json& arr = p.array("quantities");
    OracleCfg oc;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      oc.items.push_back(oracle_item(arr[i], index_path(p.at("quantities"), i)));
    }
    p.done();
    c.payload = std::move(oc);
  } else if (cmd == "verify") {
    VerifyCfg vc;
    if (payload != nullptr) {
      Obj p(*payload, at);
      vc.cases = p.int32("cases", vc.cases);
      if (vc.cases < 1) bad(p.at("cases"), "must be positive");
      p.done();
    }
    c.payload = vc;
  } else {
    bad("config.command", "unknown command '" + cmd + "'");
  }
  o.done();
  return c;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Runners

std::string f(double x) { return format_decimal(x); }

std::string json_text(const json& j) { return j.dump(2) + "\n"; }

struct Context {
  const Common& common;
  const std::filesystem::path& base;
  JobResult& out;

  void file(std::string name, std::string content) {
    out.files.push_back({std::move(name), std::move(content)});
  }
  void verify(bool ok, const std::string& what) {
    if (!ok && out.verified) {
      out.verified = false;
      out.failure = what;
    }
  }
};

void run_prep(const PrepCfg& c, Context& ctx, json& record) {
  const HoloSpec spec = load_spec_ref(c.spec, ctx.base);
  std::ostringstream csv;
  csv << "quantity,mode,mean,stderr,shots,accepted\n";
  const bool exact_rows = ctx.common.exact || c.both;
  const bool sampled_rows = !ctx.common.exact || c.both;
  record["spec"] = {{"n_b", spec.n_b}, {"n_p", spec.n_p}, {"burn_in", spec.burn_in}};
  json rows = json::array();
  const auto row = [&](const std::string& q, const std::string& mode, double mean,
                       double se, std::int64_t shots, std::int64_t acc) {
    csv << q << ',' << mode << ',' << f(mean) << ',' << f(se) << ',' << shots << ','
        << acc << '\n';
    rows.push_back({{"quantity", q}, {"mode", mode}, {"mean", mean}, {"stderr", se},
                    {"shots", shots}, {"accepted", acc}});
  };
  for (std::size_t i = 0; i < c.requests.size(); ++i) {
    const auto& req = c.requests[i];
    if (exact_rows) row(req.describe(), "exact", exact_correlator(spec, req), 0.0, 0, 0);
    if (sampled_rows) {
      const auto est = sample_correlator(spec, req, ctx.common.shots,
                                         derive_seed(ctx.common.seed, i + 1));
      row(req.describe(), "sampled", est.mean, est.std_error, est.shots, est.accepted);
    }
  }
  if (c.energy) {
    const int phases = c.energy->phases.value_or(static_cast<int>(spec.unitaries.size()));
    const std::string q = "energy " + c.energy->model.describe();
    EnergyOptions opt;
    opt.seed = derive_seed(ctx.common.seed, 0xE0);
    opt.shots = ctx.common.shots;
    if (exact_rows) {
      opt.exact = true;
      opt.steady_state = c.energy->steady_state;
      const auto e = spec_energy(c.energy->model, spec, phases, opt);
      row(q, "exact", e.energy, 0.0, 0, 0);
    }
    if (sampled_rows) {
      opt.exact = false;
      const auto e = spec_energy(c.energy->model, spec, phases, opt);
      row(q, "sampled", e.energy, e.std_error, e.shots, e.shots);
    }
  }
  for (int j : c.spectrum) {
    const auto lambda = bond_entanglement_spectrum(spec, j);
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      row("lambda j=" + std::to_string(j) + " k=" + std::to_string(k), "exact",
          lambda[k], 0.0, 0, 0);
    }
  }
  for (int j : c.purity) {
    const std::string q = "purity j=" + std::to_string(j);
    if (exact_rows) {
      double p = 0.0;
      for (double l : bond_entanglement_spectrum(spec, j)) p += l * l;
      row(q, "exact", p, 0.0, 0, 0);
    }
    if (sampled_rows) {
      const auto est = renyi2_swap_sample(spec, j, ctx.common.shots,
                                          derive_seed(ctx.common.seed, 0x5A00 + j));
      row(q, "sampled", est.mean, est.std_error, est.shots, est.accepted);
    }
  }
  record["rows"] = rows;
  ctx.file("prep.csv", csv.str());
  ctx.out.report.push_back("prep: " + std::to_string(rows.size()) + " rows");
}

void run_vqe(const VqeCfg& c, Context& ctx, json& record) {
  OptimizerConfig cfg = c.optimizer;
  cfg.exact = ctx.common.exact;
  cfg.seed = ctx.common.seed;
  const VqeResult res = optimize(c.model, c.ansatz, cfg);
  EnergyEstimate final_e{res.energy, res.std_error, 0};
  if (!cfg.exact) {
    EnergyOptions eo;
    eo.exact = false;
    eo.burn_in = cfg.burn_in;
    eo.shots = ctx.common.shots;
    eo.seed = derive_seed(ctx.common.seed, 0xF1);
    final_e = energy(c.model, c.ansatz, res.params, eo);
  }
  std::ostringstream summary;
  summary << "model,ansatz,mode,energy,stderr,shots,converged\n"
          << c.model.describe() << ',' << c.ansatz.name() << ','
          << (cfg.exact ? "exact" : "sampled") << ',' << f(final_e.energy) << ','
          << f(final_e.std_error) << ',' << final_e.shots << ','
          << (res.converged ? 1 : 0) << '\n';
  ctx.file("vqe.csv", summary.str());
  ctx.file("trace.csv", format_trace_csv(res));
  ctx.file("spec.txt", format_spec(ansatz_spec(c.ansatz, res.params, cfg.burn_in)));
  record["model"] = c.model.describe();
  record["ansatz"] = c.ansatz.name();
  record["energy"] = final_e.energy;
  record["stderr"] = final_e.std_error;
  record["optimizer_energy"] = res.energy;
  record["params"] = res.params;
  record["converged"] = res.converged;
  record["message"] = res.message;
  record["iterations"] = res.trace.empty() ? 0 : res.trace.back().iteration;
  ctx.out.report.push_back("energy " + f(final_e.energy));

  if (c.r_max) {
    std::ostringstream csv;
    csv << "r,cx,cz\n";
    for (const auto& row : correlation_profile(c.ansatz, res.params, *c.r_max)) {
      csv << row.r << ',' << f(row.cx) << ',' << f(row.cz) << '\n';
    }
    ctx.file("correlations.csv", csv.str());
  }
  if (c.reference_chi) {
    const MpsOptimum ref = optimal_mps_energy(c.model, *c.reference_chi);
    const double rel = std::abs(res.energy - ref.energy) / std::abs(ref.energy);
    record["reference"] = {{"chi", *c.reference_chi}, {"energy", ref.energy},
                           {"relative_error", rel}, {"tolerance", c.reference_tol}};
    ctx.out.report.push_back("reference " + f(ref.energy) + " relative " + f(rel));
    ctx.verify(rel <= c.reference_tol,
               "energy differs from the chi=" + std::to_string(*c.reference_chi) +
                   " optimum by " + f(rel) + " (relative)");
  }
  if (!c.sweep.empty()) {
    std::ostringstream csv;
    csv << "delta,holovqe,mean_field,ed,ansatz\n";
    // Each point keeps the lowest energy over the ansatze, each tried from a
    // warm start (its previous optimum) and `starts` random starts.
    const std::vector<Ansatz> ansatze =
        c.sweep_ansatze.empty() ? std::vector<Ansatz>{c.ansatz} : c.sweep_ansatze;
    std::vector<std::vector<double>> warm(ansatze.size());
    for (std::size_t i = 0; i < c.sweep.size(); ++i) {
      const double delta = c.sweep[i];
      const Model m = Model::xxz(c.model.J, delta);
      double best = 0.0;
      std::string winner;
      for (std::size_t a = 0; a < ansatze.size(); ++a) {
        std::optional<VqeResult> top;
        for (int k = warm[a].empty() ? 1 : 0; k <= c.starts; ++k) {
          OptimizerConfig sc = cfg;
          sc.seed = derive_seed(ctx.common.seed,
                                0x5E000 + 4096 * a + 64 * i + static_cast<std::size_t>(k));
          sc.initial = k == 0 ? warm[a] : std::vector<double>{};
          VqeResult r = optimize(m, ansatze[a], sc);
          if (!top || r.energy < top->energy) top = std::move(r);
        }
        warm[a] = top->params;
        if (winner.empty() || top->energy < best) {
          best = top->energy;
          winner = ansatze[a].name();
        }
      }
      const double mean_field = -std::abs(c.model.J) * std::max(1.0, std::abs(delta));
      const double ed =
          exact_diag_ground(m, c.ed_length, Boundary::kPeriodic).energy / c.ed_length;
      csv << f(delta) << ',' << f(best) << ',' << f(mean_field) << ',' << f(ed) << ','
          << winner << '\n';
    }
    ctx.file("sweep.csv", csv.str());
  }
}

SpaceTimePoint resolve_point(const PointCfg& p, const TrotterPlan& plan) {
  SpaceTimePoint s;
  s.x = p.x;
  s.op = p.op;
  s.tau = p.tau ? *p.tau : (p.time ? plan.layer_at_time(*p.time) : 0);
  return s;
}

void run_quads(const QuadsCfg& c, Context& ctx, json& record) {
  const HoloSpec spec = load_spec_ref(c.spec, ctx.base);
  const TrotterPlan plan = trotterize(c.h, c.length, c.t, c.dt, c.order);
  std::vector<std::vector<SpaceTimePoint>> obs;
  for (const auto& row : c.observables) {
    std::vector<SpaceTimePoint> pts;
    for (const auto& p : row) pts.push_back(resolve_point(p, plan));
    obs.push_back(std::move(pts));
  }
  const SliceSchedule base = build_quads_schedule(spec, plan, {});
  record["width"] = base.width;
  record["r"] = plan.r();
  record["n_phys"] = base.n_phys;
  record["n_b"] = spec.n_b;
  record["n_p"] = spec.n_p;
  record["block"] = plan.block;
  record["steps"] = plan.steps;
  record["dt"] = plan.dt;
  ctx.out.report.push_back("width " + std::to_string(base.width));

  QuenchOptions opt;
  opt.exact = ctx.common.exact;
  opt.shots = ctx.common.shots;
  opt.seed = ctx.common.seed;
  std::vector<QuenchResult> results = simulate_quench(spec, plan, obs, opt);
  for (std::size_t i = 0; i < c.otoc.size(); ++i) {
    const auto& o = c.otoc[i];
    QuenchOptions oo = opt;
    oo.seed = derive_seed(opt.seed, 0x0100 + i);
    results.push_back(simulate_otoc(spec, plan, o.w.x, o.w.op, o.v.x, o.v.op, oo));
  }
  ctx.file("quads.csv", format_quench_csv(results));
  if (c.schedule) {
    ctx.file("schedule.txt",
             build_quads_schedule(spec, plan, obs.empty() ? std::vector<SpaceTimePoint>{}
                                                          : obs.front())
                 .dump());
  }

  if (ctx.common.verify_dense) {
    double worst = 0.0;
    QuenchOptions exact_opt;
    exact_opt.exact = true;
    const auto exact = ctx.common.exact ? results : simulate_quench(spec, plan, obs, exact_opt);
    for (std::size_t i = 0; i < obs.size(); ++i) {
      worst = std::max(worst, std::abs(exact[i].value -
                                       dense_quench_reference(spec, plan, obs[i])));
    }
    for (const auto& o : c.otoc) {
      const double sliced =
          simulate_otoc(spec, plan, o.w.x, o.w.op, o.v.x, o.v.op, exact_opt).value;
      worst = std::max(worst, std::abs(sliced - dense_otoc_reference(
                                                    spec, plan, o.w.x, o.w.op, o.v.x, o.v.op)));
    }
    record["dense_mismatch"] = worst;
    ctx.out.report.push_back("dense mismatch " + f(worst));
    ctx.verify(worst <= 1e-8, "sliced and dense evolution differ by " + f(worst));
  }
}

void run_oracle(const OracleCfg& c, Context& ctx, json& record) {
  std::vector<OracleResult> rows;
  for (const auto& item : c.items) {
    if (item.kind == "heisenberg-exact") {
      rows.push_back({"heisenberg_energy", heisenberg_exact_energy(), "bethe-closed-form", 1e-15});
    } else if (item.kind == "tfim") {
      require(item.J > 0.0 && item.h > 0.0, ErrorCode::kInvalidArgument,
              "tfim oracle needs J > 0 and h > 0");
      const auto ff = tfim_free_fermion(item.h / item.J, item.r_max);
      char tag[64];
      std::snprintf(tag, sizeof tag, "tfim J=%g h=%g", item.J, item.h);
      rows.push_back({std::string(tag) + " energy", item.J * ff.energy, "free-fermion-quadrature",
                      item.J * ff.energy_accuracy});
      rows.push_back({std::string(tag) + " mx", ff.mx, "free-fermion-quadrature",
                      ff.energy_accuracy});
      for (int r = 0; r <= item.r_max; ++r) {
        rows.push_back({std::string(tag) + " cx r=" + std::to_string(r),
                        ff.cx[static_cast<std::size_t>(r)], "free-fermion-toeplitz", 1e-10});
        rows.push_back({std::string(tag) + " cz r=" + std::to_string(r),
                        ff.cz[static_cast<std::size_t>(r)], "free-fermion-toeplitz", 1e-10});
      }
    } else if (item.kind == "ed") {
      const auto g = exact_diag_ground(item.model, item.length, item.boundary);
      const std::string tag = "ed " + item.model.describe() + " L=" +
                              std::to_string(item.length) +
                              (item.boundary == Boundary::kOpen ? " open" : " periodic");
      rows.push_back({tag + " energy", g.energy, "lanczos", g.residual});
      rows.push_back({tag + " energy_per_site", g.energy / item.length, "lanczos",
                      g.residual / item.length});
    } else {
      const auto opt = optimal_mps_energy(item.model, item.chi);
      rows.push_back({"optimal_mps " + item.model.describe() + " chi=" + std::to_string(item.chi),
                      opt.energy, "itebd+isometry-descent", opt.accuracy});
    }
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"quantity", r.quantity}, {"value", r.value}, {"method", r.method},
                   {"accuracy", r.accuracy}});
  }
  record["rows"] = arr;
  ctx.file("oracle.csv", format_oracle_csv(rows));
  ctx.out.report.push_back("oracle: " + std::to_string(rows.size()) + " rows");
}

// Unrolled pure state: sites first (site 1 most significant), then the bond
// register.
Vector unrolled(const HoloSpec& spec, int length) {
  const int width = length * spec.n_p + spec.n_b;
  Circuit c(width);
  std::vector<int> bond;
  for (int k = 0; k < spec.n_b; ++k) bond.push_back(length * spec.n_p + k);
  if (spec.n_b > 0) c.gate(state_prep_unitary(spec.left), bond);
  for (int i = 1; i <= length; ++i) {
    std::vector<int> t;
    for (int k = 0; k < spec.n_p; ++k) t.push_back((i - 1) * spec.n_p + k);
    t.insert(t.end(), bond.begin(), bond.end());
    c.gate(spec.unitary_for_site(i), t);
  }
  return run_unitary(c);
}

void run_verify(const VerifyCfg& c, Context& ctx, json& record) {
  struct Check {
    std::string name;
    int cases = 0;
    double worst = 0.0;
    double tol = 0.0;
    bool pass() const { return worst <= tol; }
  };
  Check channel{"channel_vs_contraction", 0, 0.0, 1e-10};
  Check dense{"contraction_vs_dense", 0, 0.0, 1e-10};
  Check ent{"bond_vs_schmidt_spectrum", 0, 0.0, 1e-10};
  Check quads{"sliced_vs_dense_quench", 0, 0.0, 1e-10};
  Check width{"width_independent_of_length", 0, 0.0, 0.0};
  // Fraction of sampled estimates outside 5 sigma, allowed up to 1 in 10.
  Check sampling{"sampled_within_5_sigma", 0, 0.0, 0.1};
  const std::uint64_t seed = ctx.common.seed;
  int outside = 0;

  for (int i = 0; i < c.cases; ++i) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
    const int len = 2 + i % 5;
    const int chi = (i % 2 == 0) ? 2 : 4;
    const Mps mps = to_right_canonical(random_mps(len, chi, 2, s));
    const HoloSpec spec = spec_from_mps(mps);
    CorrelatorRequest req;
    SiteOps ops;
    const char labels[3] = {'X', 'Y', 'Z'};
    for (int site = 1; site <= len; site += 1 + i % 2) {
      const SiteOperator op = SiteOperator::pauli(labels[(site + i) % 3]);
      req.ops.emplace_back(site, op);
      ops.emplace(site, op);
    }
    req.length = len;
    const double by_channel = exact_correlator(spec, req);
    const double by_contraction = normalized_expectation(mps, ops).real();
    Vector psi = to_dense(mps);
    psi.normalize();
    Vector phi = psi;
    for (const auto& [site, op] : ops) {
      const std::vector<int> target{site - 1};
      apply_matrix(std::span<cplx>(phi.data(), static_cast<std::size_t>(phi.size())), len,
                   op.matrix, target);
    }
    const double by_dense = psi.dot(phi).real();
    channel.worst = std::max(channel.worst, std::abs(by_channel - by_contraction));
    dense.worst = std::max(dense.worst, std::abs(by_contraction - by_dense));
    ++channel.cases;
    ++dense.cases;

    const auto est = sample_correlator(spec, req, ctx.common.shots, derive_seed(s, 1));
    if (std::abs(est.mean - by_channel) > 5.0 * est.std_error + 1e-12) ++outside;
    ++sampling.cases;

    // Schmidt spectrum across (j, j + 1) of a random ansatz state.
    const Ansatz star = Ansatz::star(1 + i % 2);
    std::vector<double> params(static_cast<std::size_t>(star.num_params()));
    PhiloxStream rng(s, 2);
    for (auto& p : params) p = (2.0 * rng.uniform() - 1.0) * 3.141592653589793;
    const HoloSpec holo = ansatz_spec(star, params);
    const int j = 1 + i % 3;
    const Vector state = unrolled(holo, j);
    const Eigen::Index rows = Eigen::Index{1} << (j * holo.n_p);
    const Matrix psi_m = Eigen::Map<const Matrix>(state.data(), holo.bond_dim(), rows)
                             .transpose();
    const Eigen::VectorXd sv = psi_m.jacobiSvd().singularValues();
    const auto lambda = bond_entanglement_spectrum(holo, j);
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      const double schmidt = static_cast<Eigen::Index>(k) < sv.size()
                                 ? sv(static_cast<Eigen::Index>(k)) *
                                       sv(static_cast<Eigen::Index>(k))
                                 : 0.0;
      ent.worst = std::max(ent.worst, std::abs(lambda[k] - schmidt));
    }
    ++ent.cases;

    const LocalHamiltonian h = LocalHamiltonian::from_model(
        i % 2 == 0 ? Model::tfim(1.0, 0.7) : Model::xxz(1.0, 0.5));
    const int qlen = 3 + i % 3;
    const TrotterPlan plan = trotterize(h, qlen, 0.3, 0.15, 1 + i % 2);
    const HoloSpec init = spec_from_mps(to_right_canonical(random_mps(qlen, 2, 2, s + 7)));
    std::vector<SpaceTimePoint> pts = {{1 + i % qlen, plan.r(), SiteOperator::pauli('Z')}};
    QuenchOptions qo;
    qo.exact = true;
    const double sliced = simulate_quench(init, plan, {pts}, qo).front().value;
    quads.worst = std::max(quads.worst,
                           std::abs(sliced - dense_quench_reference(init, plan, pts)));
    ++quads.cases;
  }
  sampling.worst = static_cast<double>(outside) / sampling.cases;

  const LocalHamiltonian tfim = LocalHamiltonian::from_model(Model::tfim(1.0, 1.0));
  const HoloSpec ghz = builtin_spec("ghz");
  for (int r_steps = 1; r_steps <= 3; ++r_steps) {
    const auto w10 = build_quads_schedule(ghz, trotterize(tfim, 10, r_steps * 0.1, 0.1, 1), {});
    const auto w200 = build_quads_schedule(ghz, trotterize(tfim, 200, r_steps * 0.1, 0.1, 1), {});
    const int law = ghz.n_b + ghz.n_p * (w10.r + 1);
    width.worst = std::max({width.worst, std::abs(double(w10.width - w200.width)),
                            std::abs(double(w10.width - law))});
    ++width.cases;
  }

  std::ostringstream csv;
  csv << "check,cases,max_error,tolerance,pass\n";
  json arr = json::array();
  for (const Check* k : {&channel, &dense, &ent, &quads, &width, &sampling}) {
    csv << k->name << ',' << k->cases << ',' << f(k->worst) << ',' << f(k->tol) << ','
        << (k->pass() ? 1 : 0) << '\n';
    arr.push_back({{"check", k->name}, {"cases", k->cases}, {"max_error", k->worst},
                   {"tolerance", k->tol}, {"pass", k->pass()}});
    ctx.out.report.push_back(std::string(k->pass() ? "PASS " : "FAIL ") + k->name);
    ctx.verify(k->pass(), k->name + " failed: " + f(k->worst) + " > " + f(k->tol));
  }
  record["checks"] = arr;
  ctx.file("verify.csv", csv.str());
}

}  // namespace

HoloSpec builtin_spec(const std::string& name) {
  require(name == "ghz" || name == "product" || name == "neel",
          ErrorCode::kInvalidArgument, "unknown builtin spec '" + name + "'");
  HoloSpec s;
  s.burn_in = 0;
  if (name == "ghz") {
    // |0, b> -> |b, b> on [phys, bond], bond started in |+>.
    Matrix u = Matrix::Zero(4, 4);
    u(0, 0) = 1.0;
    u(3, 1) = 1.0;
    u(2, 2) = 1.0;
    u(1, 3) = 1.0;
    s.n_b = 1;
    s.unitaries = {u};
    s.left = Vector::Ones(2) / std::sqrt(2.0);
  } else {
    s.n_b = 0;
    s.unitaries = {pauli::I()};
    if (name == "neel") s.unitaries.push_back(pauli::X());
    s.left = Vector::Ones(1);
  }
  return s;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kIo, "SHA-256 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

Job parse_job(const std::string& text, const std::filesystem::path& base_dir) {
  const json root = parse_json(text);
  const Config cfg = decode(root);
  return {cfg.common.command, json_text(root), base_dir};
}

Job load_job(const std::filesystem::path& path) {
  return parse_job(textio::read_file(path), path.parent_path());
}

Job apply_overrides(const Job& job, const Overrides& o) {
  json root = parse_json(job.config);
  if (o.seed) root["seed"] = *o.seed;
  if (o.shots) root["shots"] = *o.shots;
  if (o.exact) root["exact"] = true;
  if (o.verify_dense) root["verify_dense"] = true;
  decode(root);
  return {job.command, json_text(root), job.base_dir};
}

JobResult run_job(const Job& job) {
  const Config cfg = decode(parse_json(job.config));
  JobResult out;
  out.command = cfg.common.command;
  Context ctx{cfg.common, job.base_dir, out};
  json record;
  record["command"] = cfg.common.command;
  record["seed"] = cfg.common.seed;
  record["shots"] = cfg.common.shots;
  record["exact"] = cfg.common.exact;
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, PrepCfg>) {
          run_prep(payload, ctx, record);
        } else if constexpr (std::is_same_v<T, VqeCfg>) {
          run_vqe(payload, ctx, record);
        } else if constexpr (std::is_same_v<T, QuadsCfg>) {
          run_quads(payload, ctx, record);
        } else if constexpr (std::is_same_v<T, OracleCfg>) {
          run_oracle(payload, ctx, record);
        } else {
          run_verify(payload, ctx, record);
        }
      },
      cfg.payload);
  record["verified"] = out.verified;
  if (!out.verified) record["failure"] = out.failure;
  out.files.push_back({"result.json", json_text(record)});

  json manifest;
  manifest["schema_version"] = kSchemaVersion;
  manifest["command"] = cfg.common.command;
  manifest["config_sha256"] = sha256_hex(job.config);
  manifest["seed"] = cfg.common.seed;
  manifest["versions"] = {{"holoq", kVersion},
                          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                        std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                        std::to_string(EIGEN_MINOR_VERSION)},
                          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                                                "." +
                                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                          {"openssl", OPENSSL_VERSION_TEXT}};
  json files = json::array();
  for (const auto& file : out.files) {
    files.push_back({{"name", file.name}, {"sha256", sha256_hex(file.content)}});
  }
  manifest["files"] = files;
  out.manifest = json_text(manifest);
  return out;
}

void write_result(const JobResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorCode::kIo, "cannot create output directory " + dir.string());
  for (const auto& file : result.files) textio::write_file(dir / file.name, file.content);
  textio::write_file(dir / "manifest.json", result.manifest);
}

std::string status_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimension: return "dimension";
    case ErrorCode::kNotCanonical: return "not_canonical";
    case ErrorCode::kIsometry: return "isometry";
    case ErrorCode::kDegenerate: return "degenerate";
    case ErrorCode::kCapacity: return "capacity";
    case ErrorCode::kNoAcceptance: return "no_acceptance";
    case ErrorCode::kNonConvergence: return "non_convergence";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kVerification: return "verification";
    case ErrorCode::kUnsupported: return "unsupported";
  }
  return "internal";
}

std::string error_record(ErrorCode code, const std::string& message) {
  json j;
  j["error"] = {{"status", static_cast<int>(code)}, {"name", status_name(code)},
                {"message", message}};
  return j.dump() + "\n";
}

std::string internal_error_record(const std::string& message) {
  json j;
  j["error"] = {{"status", 100}, {"name", "internal"}, {"message", message}};
  return j.dump() + "\n";
}

}  // namespace holoq::jobs
