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

// holoq command line: one job per invocation.
//
//   holoq prep   --config job.json --out results/
//   holoq verify --seed 3
//
// Exit codes: 0 ok, 2 config or input error, 3 numerical verification
// failure, 4 capacity exceeded, 1 anything else.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "holoq/holoq.h"

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  bool exact = false;
  int threads = 0;
  std::string out = "holoq-out";
  bool verify_dense = false;
};

int exit_code(holoq_status s) {
  switch (s) {
    case HOLOQ_OK:
      return 0;
    case HOLOQ_ERR_CAPACITY:
      return 4;
    case HOLOQ_ERR_VERIFICATION:
    case HOLOQ_ERR_NON_CONVERGENCE:
    case HOLOQ_ERR_NO_ACCEPTANCE:
    case HOLOQ_ERR_DEGENERATE:
      return 3;
    case HOLOQ_ERR_INTERNAL:
      return 1;
    default:
      return 2;
  }
}

void write_error(const Options& opt, const std::string& record) {
  std::cerr << record;
  std::error_code ec;
  std::filesystem::create_directories(opt.out, ec);
  if (ec) return;
  std::ofstream(std::filesystem::path(opt.out) / "error.json") << record;
}

int fail_with_last_error(const Options& opt, holoq_status s) {
  write_error(opt, holoq_last_error_record());
  return exit_code(s);
}

int run(const std::string& command, const Options& opt) {
  holoq_status s = holoq_set_threads(opt.threads);
  if (s != HOLOQ_OK) return fail_with_last_error(opt, s);

  holoq_job* job = nullptr;
  if (opt.config.empty()) {
    if (command != "verify") {
      const std::string record =
          "{\"error\":{\"status\":10,\"name\":\"config\",\"message\":\"--config is "
          "required for " + command + "\"}}\n";
      write_error(opt, record);
      return 2;
    }
    s = holoq_job_parse("{\"schema_version\": 1, \"command\": \"verify\"}", nullptr, &job);
  } else {
    s = holoq_job_load(opt.config.c_str(), &job);
  }
  if (s != HOLOQ_OK) return fail_with_last_error(opt, s);

  const auto cleanup = [&](int code) {
    holoq_job_free(job);
    return code;
  };
  if ((s = holoq_job_expect_command(job, command.c_str())) != HOLOQ_OK ||
      (opt.seed && (s = holoq_job_set_seed(job, *opt.seed)) != HOLOQ_OK) ||
      (opt.shots && (s = holoq_job_set_shots(job, *opt.shots)) != HOLOQ_OK) ||
      (opt.exact && (s = holoq_job_force_exact(job)) != HOLOQ_OK) ||
      (opt.verify_dense && (s = holoq_job_set_verify_dense(job)) != HOLOQ_OK)) {
    return cleanup(fail_with_last_error(opt, s));
  }

  holoq_result* result = nullptr;
  if ((s = holoq_job_run(job, &result)) != HOLOQ_OK) {
    return cleanup(fail_with_last_error(opt, s));
  }
  const int code = [&] {
    if ((s = holoq_result_write(result, opt.out.c_str())) != HOLOQ_OK) {
      return fail_with_last_error(opt, s);
    }
    for (size_t i = 0; i < holoq_result_report_count(result); ++i) {
      std::cout << holoq_result_report_line(result, i) << '\n';
    }
    if (holoq_result_verified(result) == 0) {
      std::string msg = holoq_result_failure(result);
      std::string escaped;
      for (char c : msg) {
        if (c == '"' || c == '\\') escaped.push_back('\\');
        escaped.push_back(c);
      }
      write_error(opt, "{\"error\":{\"status\":11,\"name\":\"verification\",\"message\":\"" +
                           escaped + "\"}}\n");
      return 3;
    }
    return 0;
  }();
  holoq_result_free(result);
  return cleanup(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holoq: holographic state preparation, VQE and quench jobs"};
  app.set_version_flag("--version", holoq_version());
  app.require_subcommand(1);

  Options opt;
  std::string chosen;
  const auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config, "JSON job config");
    sub->add_option("--seed", opt.seed, "override the config seed");
    sub->add_option("--shots", opt.shots, "override the config shots")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--exact", opt.exact, "exact evaluation instead of sampling");
    sub->add_option("--threads", opt.threads, "worker cap, 0 for all cores")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", opt.out, "output directory")->capture_default_str();
    sub->add_flag("--verify-dense", opt.verify_dense,
                  "check sliced results against dense evolution (quads)");
    sub->callback([&chosen, name] { chosen = name; });
    return sub;
  };
  add("prep", "prepare a holographic state and estimate correlators");
  add("vqe", "optimize a holographic ansatz");
  add("quads", "Trotterized quench on sliced circuits");
  add("oracle", "reference values");
  add("verify", "invariant self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return run(chosen, opt);
}
