/* Copyright 2026 The holoq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to holoq. Objects are opaque handles released with the
 * matching *_free function. Every call returns a holoq_status; on failure
 * holoq_last_error() describes it until the next failing call on the same
 * thread. Strings returned through out-parameters are owned by the handle
 * they came from. */

#ifndef HOLOQ_HOLOQ_H_
#define HOLOQ_HOLOQ_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HOLOQ_API __declspec(dllexport)
#else
#define HOLOQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum holoq_status {
  HOLOQ_OK = 0,
  HOLOQ_ERR_INVALID_ARGUMENT = 1,
  HOLOQ_ERR_DIMENSION = 2,
  HOLOQ_ERR_NOT_CANONICAL = 3,
  HOLOQ_ERR_ISOMETRY = 4,
  HOLOQ_ERR_DEGENERATE = 5,
  HOLOQ_ERR_CAPACITY = 6,
  HOLOQ_ERR_NO_ACCEPTANCE = 7,
  HOLOQ_ERR_NON_CONVERGENCE = 8,
  HOLOQ_ERR_IO = 9,
  HOLOQ_ERR_CONFIG = 10,
  HOLOQ_ERR_VERIFICATION = 11,
  HOLOQ_ERR_UNSUPPORTED = 12,
  HOLOQ_ERR_INTERNAL = 100
} holoq_status;

typedef struct holoq_job holoq_job;
typedef struct holoq_result holoq_result;
typedef struct holoq_spec holoq_spec;

HOLOQ_API const char* holoq_version(void);
HOLOQ_API int holoq_schema_version(void);

/* Message of the last failure on this thread, "" if none. */
HOLOQ_API const char* holoq_last_error(void);
/* {"error": {"status", "name", "message"}} for the last failure. */
HOLOQ_API const char* holoq_last_error_record(void);
HOLOQ_API const char* holoq_status_name(holoq_status status);

/* Caps shot-parallel workers; 0 restores the hardware default. */
HOLOQ_API holoq_status holoq_set_threads(int threads);

/* Jobs. Configs are validated on load; relative paths inside a config
 * resolve against `base_dir` (or the config file's directory). */
HOLOQ_API holoq_status holoq_job_load(const char* path, holoq_job** out);
HOLOQ_API holoq_status holoq_job_parse(const char* json_text, const char* base_dir,
                                       holoq_job** out);
HOLOQ_API holoq_status holoq_job_set_seed(holoq_job* job, uint64_t seed);
HOLOQ_API holoq_status holoq_job_set_shots(holoq_job* job, int64_t shots);
HOLOQ_API holoq_status holoq_job_force_exact(holoq_job* job);
HOLOQ_API holoq_status holoq_job_set_verify_dense(holoq_job* job);
HOLOQ_API holoq_status holoq_job_command(const holoq_job* job, const char** command);
/* HOLOQ_ERR_CONFIG unless the config's command is `command`. */
HOLOQ_API holoq_status holoq_job_expect_command(const holoq_job* job, const char* command);
/* Canonical config text after overrides. */
HOLOQ_API holoq_status holoq_job_config(const holoq_job* job, const char** json_text);
HOLOQ_API holoq_status holoq_job_run(const holoq_job* job, holoq_result** out);
HOLOQ_API void holoq_job_free(holoq_job* job);

/* Results. A failed self-check still yields a result; holoq_result_verified
 * then returns 0 and holoq_result_failure says why. */
HOLOQ_API size_t holoq_result_file_count(const holoq_result* result);
HOLOQ_API holoq_status holoq_result_file(const holoq_result* result, size_t index,
                                         const char** name, const char** content);
HOLOQ_API holoq_status holoq_result_manifest(const holoq_result* result,
                                             const char** json_text);
HOLOQ_API size_t holoq_result_report_count(const holoq_result* result);
HOLOQ_API const char* holoq_result_report_line(const holoq_result* result, size_t index);
HOLOQ_API int holoq_result_verified(const holoq_result* result);
HOLOQ_API const char* holoq_result_failure(const holoq_result* result);
/* Writes the files and manifest.json into `dir`, creating it. */
HOLOQ_API holoq_status holoq_result_write(const holoq_result* result, const char* dir);
HOLOQ_API void holoq_result_free(holoq_result* result);

/* Holographic specs. Operators are Pauli labels, one letter per physical
 * qubit of a site, concatenated in site order: sites {1, 3} with labels
 * "ZZ" on a one-qubit spec measure Z1 Z3. length 0 is the bulk request. */
HOLOQ_API holoq_status holoq_spec_load(const char* path, holoq_spec** out);
HOLOQ_API holoq_status holoq_spec_builtin(const char* name, holoq_spec** out);
HOLOQ_API holoq_status holoq_spec_dims(const holoq_spec* spec, int* n_b, int* n_p);
HOLOQ_API holoq_status holoq_spec_exact_correlator(const holoq_spec* spec, size_t count,
                                                   const int* sites, const char* labels,
                                                   int length, double* value);
HOLOQ_API holoq_status holoq_spec_sample_correlator(const holoq_spec* spec, size_t count,
                                                    const int* sites, const char* labels,
                                                    int length, int64_t shots,
                                                    uint64_t seed, double* mean,
                                                    double* std_error);
/* Descending bond spectrum after j sites; `count` receives its length. */
HOLOQ_API holoq_status holoq_spec_bond_spectrum(const holoq_spec* spec, int j,
                                                double* values, size_t capacity,
                                                size_t* count);
HOLOQ_API void holoq_spec_free(holoq_spec* spec);

HOLOQ_API double holoq_heisenberg_exact_energy(void);

#ifdef __cplusplus
}
#endif

#endif /* HOLOQ_HOLOQ_H_ */
