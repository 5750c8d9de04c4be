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

// Deterministic fixture games.

#ifndef POTGAME_CORE_ZOO_HPP_
#define POTGAME_CORE_ZOO_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/game.hpp"

namespace potgame {

// Cournot oligopoly with payoffs f_i(x) = (A - B_i x_bar) x_i - C x_i.
struct CournotParams {
  std::size_t players = 3;
  double intercept = 10.0;         // A
  std::vector<double> slope{1.0};  // B: one entry, or one per player
  double cost = 2.0;               // C
  // Per-player box; defaults to [0, (A - C) / B_i].
  std::optional<std::pair<double, double>> box;
  // Defaults to the zero profile (the lower corner of the default box).
  std::optional<ActionProfile> base;
  std::size_t resolution = 5;
};

AggregativeGame make_cournot(const CournotParams& params);

// f_i(x) = prod_j x_j for every player (scalar actions).
Game make_product_game(std::size_t players, double lo, double hi);

// Player `dead` (0-based) gets sum_{j != dead} x_j^2, which ignores their
// own action; everybody else plays homogeneous Cournot (A, B, C).
Game make_abnormal_game(std::size_t players, std::size_t dead, double lo,
                        double hi, double intercept = 10.0, double slope = 1.0,
                        double cost = 2.0);

// Every payoff is zero.
Game make_zero_game(const ActionSpace& space);

// Finite game on actions {0, 1, ..., actions - 1} per player with payoff
// tables drawn uniformly from [-1, 1). Stream order (SplitMix64 seeded with
// `seed`): player 1's table, then player 2's, ...; each table in
// lexicographic profile order with player 1 slowest; entry = 2 u - 1 where
// u takes the top 53 bits of the draw. Off-grid profiles round to the
// nearest action.
Game make_random_finite(std::size_t players, std::size_t actions,
                        std::uint64_t seed);

// Identical-interest variant: every player's payoff replaced by player
// `source`'s.
Game make_identical_interest(const Game& game, std::size_t source = 0);

// Raw tables of make_random_finite, one vector per player.
std::vector<std::vector<double>> random_finite_tables(std::size_t players,
                                                      std::size_t actions,
                                                      std::uint64_t seed);

}  // namespace potgame

#endif  // POTGAME_CORE_ZOO_HPP_
