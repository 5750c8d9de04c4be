// Copyright 2026 The potgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command orchestration shared by the C API and the command-line tool.
// Reports are JSON documents with a volatile "header" (tool, version,
// timestamp) and a "body" that is a pure function of spec, options and seed.

#ifndef POTGAME_CORE_RUNNER_HPP_
#define POTGAME_CORE_RUNNER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/report.hpp"
#include "core/spec.hpp"
#include "json.hpp"

namespace potgame {

inline constexpr const char* kReportSchema = "potgame.report/1";
inline constexpr const char* kToleranceEnv = "POTGAME_TOL";

struct RunOptions {
  // Empty selects def, cycles, pairwise, partials and funceq.
  std::vector<std::string> checkers;
  std::optional<std::size_t> grid;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
  unsigned threads = 1;
  // Adds abnormality and aggregative diagnostics to `check`.
  bool classify = false;
  // hp, t6, t8 or all.
  std::string route = "all";
  std::size_t nash = 0;
  std::string version = "0";
};

struct RunResult {
  Verdict verdict = Verdict::kInconclusive;
  int exit_status = 2;
  nlohmann::json report;
  // build only: delimiter-separated phi table, empty when nothing validated.
  std::string table;
};

const std::vector<std::string>& known_checkers();

// Defaults, then the environment variable, then the spec, then options.
Tolerances resolve_tolerances(const GameSpec& spec, const RunOptions& options);

RunResult run_check(const GameSpec& spec, const RunOptions& options);
RunResult run_build(const GameSpec& spec, const RunOptions& options);

// Summary of a parsed and instantiated spec.
nlohmann::json describe(const GameSpec& spec);

int exit_status(Verdict verdict);
// Exit status for a library error: 2 + numeric error code.
int exit_status(ErrorCode code);

}  // namespace potgame

#endif  // POTGAME_CORE_RUNNER_HPP_
