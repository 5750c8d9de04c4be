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

// Game-spec documents. One directive per line, '#' starts a comment:
//
//   players: 3
//   dims: 1
//   box: 0 8                 every coordinate
//   box 2: 0 4               player 2, every coordinate
//   box 2 1: 0 4             player 2, coordinate 1
//   base: lower | midpoint | v_11 ... v_Nn
//   grid: 5
//   seed: 7
//   budget: 250000
//   tol: 1e-9                absolute tolerance (alias abs_tol)
//   rel_tol: 1e-7
//   aggregator: sum | none
//   payoff 1: (10 - xbar) * x_1_1 - 2 * x_1_1
//
// or, instead of payoff lines, `generator: <name> key=value ...`.
// Without a base directive the base point is the zero profile when it lies
// in the box and the midpoint otherwise.

#ifndef POTGAME_CORE_SPEC_HPP_
#define POTGAME_CORE_SPEC_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/expression.hpp"
#include "core/game.hpp"

namespace potgame {

struct BoxDecl {
  std::optional<std::size_t> player;  // 0-based
  std::optional<std::size_t> coord;   // 0-based
  double lower;
  double upper;
  std::size_t line;
};

enum class BaseMode { kDefault, kLower, kMidpoint, kExplicit };

struct GeneratorCall {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::size_t line = 0;
};

struct GameSpec {
  std::size_t players = 0;
  std::size_t dims = 1;
  std::vector<BoxDecl> boxes;
  BaseMode base_mode = BaseMode::kDefault;
  std::vector<double> base;
  std::optional<std::size_t> grid;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
  std::optional<std::string> aggregator;
  // Indexed by 0-based player; filled for expression specs only.
  std::vector<Expression> payoffs;
  std::optional<GeneratorCall> generator;
};

// Throws ParseError for malformed lines and Error(kSemantic) for documents
// that are well formed but inconsistent.
GameSpec parse_spec(std::string_view text);
GameSpec load_spec_file(const std::string& path);

struct LoadedGame {
  Game game;
  std::optional<AggregativeGame> aggregative;
  // "expression" or "generator:<name>".
  std::string source;
};

LoadedGame instantiate(const GameSpec& spec);

// Names accepted by `generator:` and their parameters with defaults.
const std::map<std::string, std::vector<std::pair<std::string, std::string>>>&
generator_catalog();

// A complete spec document invoking a generator. Throws the same errors the
// generator would on instantiation.
std::string generator_spec_text(
    const std::string& name,
    const std::vector<std::pair<std::string, std::string>>& params);

}  // namespace potgame

#endif  // POTGAME_CORE_SPEC_HPP_
