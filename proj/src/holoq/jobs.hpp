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

// Batch jobs driven by JSON configs:
//
//   {"schema_version": 1, "command": "prep", "seed": 7, "shots": 4000,
//    "exact": false, "prep": {...}}
//
// The payload key matches the command. Every object is checked for unknown
// keys before anything runs. Results are CSV tables, a JSON record and a
// manifest holding the SHA-256 of the canonical config.

#ifndef HOLOQ_JOBS_HPP_
#define HOLOQ_JOBS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holoq/errors.hpp"
#include "holoq/holo_prep.hpp"

namespace holoq::jobs {

inline constexpr int kSchemaVersion = 1;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  bool exact = false;  // forces exact mode when set
  bool verify_dense = false;
};

struct Job {
  std::string command;
  std::string config;  // canonical JSON
  std::filesystem::path base_dir;  // relative paths in the config
};

// Throws kConfig on malformed JSON or schema violations.
Job parse_job(const std::string& text, const std::filesystem::path& base_dir = {});
Job load_job(const std::filesystem::path& path);
Job apply_overrides(const Job& job, const Overrides& overrides);

struct OutputFile {
  std::string name;
  std::string content;
};

struct JobResult {
  std::string command;
  std::vector<OutputFile> files;  // CSV tables and result.json
  std::string manifest;
  std::vector<std::string> report;  // short lines for a terminal
  bool verified = true;
  std::string failure;  // set when a self-check fails
};

JobResult run_job(const Job& job);

// Writes every output file and manifest.json into `dir`.
void write_result(const JobResult& result, const std::filesystem::path& dir);

// "ghz" (chi = 2 cat state), "product" (all |0>) or "neel" (|0101...>).
HoloSpec builtin_spec(const std::string& name);

std::string sha256_hex(std::string_view data);

// {"error": {"status": ..., "name": ..., "message": ...}}
std::string error_record(ErrorCode code, const std::string& message);
std::string status_name(ErrorCode code);
// Same shape with status 100 for failures outside the error taxonomy.
std::string internal_error_record(const std::string& message);

}  // namespace holoq::jobs

#endif  // HOLOQ_JOBS_HPP_
