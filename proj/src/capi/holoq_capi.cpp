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

#include "holoq/holoq.h"

#include <exception>
#include <new>
#include <string>

#include "holoq/circuit.hpp"
#include "holoq/holo_prep.hpp"
#include "holoq/jobs.hpp"
#include "holoq/oracles.hpp"

struct holoq_job {
  holoq::jobs::Job job;
};

struct holoq_result {
  holoq::jobs::JobResult result;
};

struct holoq_spec {
  holoq::HoloSpec spec;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_record;

holoq_status record(holoq::ErrorCode code, const std::string& what) {
  last_error = what;
  last_record = holoq::jobs::error_record(code, what);
  return static_cast<holoq_status>(code);
}

// Runs `fn`, mapping exceptions onto status codes.
template <class F>
holoq_status guarded(F&& fn) {
  try {
    fn();
    return HOLOQ_OK;
  } catch (const holoq::Error& e) {
    return record(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  last_record = holoq::jobs::internal_error_record(last_error);
  return HOLOQ_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (p == nullptr) {
    throw holoq::Error(holoq::ErrorCode::kInvalidArgument, std::string(what) + " is null");
  }
}

holoq::CorrelatorRequest request_of(const holoq_spec* spec, size_t count, const int* sites,
                                    const char* labels, int length) {
  need(spec, "spec");
  if (count > 0) {
    need(sites, "sites");
    need(labels, "labels");
  }
  const int n_p = spec->spec.n_p;
  const std::string text = labels == nullptr ? "" : labels;
  if (text.size() != count * static_cast<size_t>(n_p)) {
    throw holoq::Error(holoq::ErrorCode::kDimension,
                       "expected " + std::to_string(count * n_p) + " Pauli letters");
  }
  holoq::CorrelatorRequest req;
  req.length = length;
  for (size_t k = 0; k < count; ++k) {
    holoq::Matrix m = holoq::Matrix::Ones(1, 1);
    for (int q = 0; q < n_p; ++q) {
      const char c = text[k * static_cast<size_t>(n_p) + static_cast<size_t>(q)];
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw holoq::Error(holoq::ErrorCode::kInvalidArgument,
                           std::string("unknown Pauli label '") + c + "'");
      }
      m = holoq::kron(m, holoq::pauli::from_label(c));
    }
    req.ops.emplace_back(sites[k], holoq::SiteOperator(m));
  }
  return req;
}

}  // namespace

extern "C" {

const char* holoq_version(void) { return "0.1.0"; }

int holoq_schema_version(void) { return holoq::jobs::kSchemaVersion; }

const char* holoq_last_error(void) { return last_error.c_str(); }

const char* holoq_last_error_record(void) { return last_record.c_str(); }

const char* holoq_status_name(holoq_status status) {
  static thread_local std::string name;
  if (status == HOLOQ_OK) return "ok";
  if (status < HOLOQ_ERR_INVALID_ARGUMENT || status > HOLOQ_ERR_UNSUPPORTED) return "internal";
  name = holoq::jobs::status_name(static_cast<holoq::ErrorCode>(status));
  return name.c_str();
}

holoq_status holoq_set_threads(int threads) {
  return guarded([&] {
    if (threads < 0) {
      throw holoq::Error(holoq::ErrorCode::kInvalidArgument, "threads must be >= 0");
    }
    holoq::set_max_threads(threads);
  });
}

holoq_status holoq_job_load(const char* path, holoq_job** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new holoq_job{holoq::jobs::load_job(path)};
  });
}

holoq_status holoq_job_parse(const char* json_text, const char* base_dir, holoq_job** out) {
  return guarded([&] {
    need(json_text, "json_text");
    need(out, "out");
    *out = new holoq_job{holoq::jobs::parse_job(json_text, base_dir ? base_dir : "")};
  });
}

holoq_status holoq_job_set_seed(holoq_job* job, uint64_t seed) {
  return guarded([&] {
    need(job, "job");
    holoq::jobs::Overrides o;
    o.seed = seed;
    job->job = holoq::jobs::apply_overrides(job->job, o);
  });
}

holoq_status holoq_job_set_shots(holoq_job* job, int64_t shots) {
  return guarded([&] {
    need(job, "job");
    holoq::jobs::Overrides o;
    o.shots = shots;
    job->job = holoq::jobs::apply_overrides(job->job, o);
  });
}

holoq_status holoq_job_force_exact(holoq_job* job) {
  return guarded([&] {
    need(job, "job");
    holoq::jobs::Overrides o;
    o.exact = true;
    job->job = holoq::jobs::apply_overrides(job->job, o);
  });
}

holoq_status holoq_job_set_verify_dense(holoq_job* job) {
  return guarded([&] {
    need(job, "job");
    holoq::jobs::Overrides o;
    o.verify_dense = true;
    job->job = holoq::jobs::apply_overrides(job->job, o);
  });
}

holoq_status holoq_job_command(const holoq_job* job, const char** command) {
  return guarded([&] {
    need(job, "job");
    need(command, "command");
    *command = job->job.command.c_str();
  });
}

holoq_status holoq_job_expect_command(const holoq_job* job, const char* command) {
  return guarded([&] {
    need(job, "job");
    need(command, "command");
    if (job->job.command != command) {
      throw holoq::Error(holoq::ErrorCode::kConfig,
                         "config.command: config is for '" + job->job.command +
                             "', not '" + command + "'");
    }
  });
}

holoq_status holoq_job_config(const holoq_job* job, const char** json_text) {
  return guarded([&] {
    need(job, "job");
    need(json_text, "json_text");
    *json_text = job->job.config.c_str();
  });
}

holoq_status holoq_job_run(const holoq_job* job, holoq_result** out) {
  return guarded([&] {
    need(job, "job");
    need(out, "out");
    *out = new holoq_result{holoq::jobs::run_job(job->job)};
  });
}

void holoq_job_free(holoq_job* job) { delete job; }

size_t holoq_result_file_count(const holoq_result* result) {
  return result == nullptr ? 0 : result->result.files.size();
}

holoq_status holoq_result_file(const holoq_result* result, size_t index, const char** name,
                               const char** content) {
  return guarded([&] {
    need(result, "result");
    if (index >= result->result.files.size()) {
      throw holoq::Error(holoq::ErrorCode::kInvalidArgument, "file index out of range");
    }
    const auto& f = result->result.files[index];
    if (name != nullptr) *name = f.name.c_str();
    if (content != nullptr) *content = f.content.c_str();
  });
}

holoq_status holoq_result_manifest(const holoq_result* result, const char** json_text) {
  return guarded([&] {
    need(result, "result");
    need(json_text, "json_text");
    *json_text = result->result.manifest.c_str();
  });
}

size_t holoq_result_report_count(const holoq_result* result) {
  return result == nullptr ? 0 : result->result.report.size();
}

const char* holoq_result_report_line(const holoq_result* result, size_t index) {
  if (result == nullptr || index >= result->result.report.size()) return nullptr;
  return result->result.report[index].c_str();
}

int holoq_result_verified(const holoq_result* result) {
  return result != nullptr && result->result.verified ? 1 : 0;
}

const char* holoq_result_failure(const holoq_result* result) {
  return result == nullptr ? "" : result->result.failure.c_str();
}

holoq_status holoq_result_write(const holoq_result* result, const char* dir) {
  return guarded([&] {
    need(result, "result");
    need(dir, "dir");
    holoq::jobs::write_result(result->result, dir);
  });
}

void holoq_result_free(holoq_result* result) { delete result; }

holoq_status holoq_spec_load(const char* path, holoq_spec** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new holoq_spec{holoq::load_spec(path)};
  });
}

holoq_status holoq_spec_builtin(const char* name, holoq_spec** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new holoq_spec{holoq::jobs::builtin_spec(name)};
  });
}

holoq_status holoq_spec_dims(const holoq_spec* spec, int* n_b, int* n_p) {
  return guarded([&] {
    need(spec, "spec");
    if (n_b != nullptr) *n_b = spec->spec.n_b;
    if (n_p != nullptr) *n_p = spec->spec.n_p;
  });
}

holoq_status holoq_spec_exact_correlator(const holoq_spec* spec, size_t count,
                                         const int* sites, const char* labels, int length,
                                         double* value) {
  return guarded([&] {
    need(value, "value");
    const auto req = request_of(spec, count, sites, labels, length);
    *value = holoq::exact_correlator(spec->spec, req);
  });
}

holoq_status holoq_spec_sample_correlator(const holoq_spec* spec, size_t count,
                                          const int* sites, const char* labels, int length,
                                          int64_t shots, uint64_t seed, double* mean,
                                          double* std_error) {
  return guarded([&] {
    need(mean, "mean");
    const auto req = request_of(spec, count, sites, labels, length);
    const auto est = holoq::sample_correlator(spec->spec, req, shots, seed);
    *mean = est.mean;
    if (std_error != nullptr) *std_error = est.std_error;
  });
}

holoq_status holoq_spec_bond_spectrum(const holoq_spec* spec, int j, double* values,
                                      size_t capacity, size_t* count) {
  return guarded([&] {
    need(spec, "spec");
    need(count, "count");
    const auto lambda = holoq::bond_entanglement_spectrum(spec->spec, j);
    *count = lambda.size();
    if (values == nullptr) return;
    for (size_t k = 0; k < lambda.size() && k < capacity; ++k) values[k] = lambda[k];
  });
}

void holoq_spec_free(holoq_spec* spec) { delete spec; }

double holoq_heisenberg_exact_energy(void) { return holoq::heisenberg_exact_energy(); }

}  // extern "C"
