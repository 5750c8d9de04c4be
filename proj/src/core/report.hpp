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

#ifndef POTGAME_CORE_REPORT_HPP_
#define POTGAME_CORE_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/game.hpp"
#include "json.hpp"

namespace potgame {

enum class Verdict { kPotential, kNotPotential, kInconclusive };

const char* to_string(Verdict verdict);

struct Tolerances {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  double fd_step = 1e-4;
  double fd_tol = 1e-5;

  // A residual violates the tolerance when it exceeds abs_tol plus rel_tol
  // times the magnitude of the payoff terms it was computed from.
  bool violates(double residual, double scale) const {
    return residual > abs_tol + rel_tol * scale;
  }
};

// Evidence for a failed condition: a cycle (profiles are its vertices) or a
// sample point (profiles are the evaluated anchors).
struct Witness {
  std::string kind;
  std::vector<ActionProfile> profiles;
  std::vector<std::size_t> players;
  double value = 0.0;
  std::vector<std::pair<std::string, double>> terms;
};

struct CheckReport {
  std::string checker;
  Verdict verdict = Verdict::kInconclusive;
  double max_residual = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t skipped = 0;
  std::uint64_t population = 0;
  bool exhaustive = true;
  std::optional<Witness> witness;
  double tolerance = 0.0;
  double rel_tolerance = 0.0;
  std::uint64_t seed = 0;
  std::vector<std::string> notes;
};

// Conjunction of the conclusive reports: any refutation wins, otherwise any
// confirmation, otherwise inconclusive.
Verdict combine(std::span<const CheckReport> reports);

nlohmann::json to_json(const ActionProfile& x);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const CheckReport& report);

}  // namespace potgame

#endif  // POTGAME_CORE_REPORT_HPP_
