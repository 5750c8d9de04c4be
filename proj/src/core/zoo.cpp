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

#include "core/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace potgame {

AggregativeGame make_cournot(const CournotParams& p) {
  const std::size_t n = p.players;
  if (n < 2) throw Error(ErrorCode::kArgument, "Cournot needs >= 2 players");
  if (p.slope.size() != 1 && p.slope.size() != n) {
    throw Error(ErrorCode::kArgument,
                "Cournot slope B needs 1 or N entries");
  }
  std::vector<double> slope(n);
  for (std::size_t i = 0; i < n; ++i) {
    slope[i] = p.slope.size() == 1 ? p.slope[0] : p.slope[i];
    if (!(slope[i] > 0.0)) {
      throw Error(ErrorCode::kArgument, "Cournot slope B must be positive");
    }
  }
  std::vector<double> lower(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.box) {
      lower[i] = p.box->first;
      upper[i] = p.box->second;
    } else {
      lower[i] = 0.0;
      upper[i] = (p.intercept - p.cost) / slope[i];
      if (!(upper[i] > 0.0)) {
        throw Error(ErrorCode::kArgument,
                    "default Cournot box needs A > C; pass an explicit box");
      }
    }
  }
  ActionSpace space(n, 1, lower, upper);
  space = space.with_resolution(p.resolution);
  space = space.with_base(p.base ? *p.base : ActionProfile::zeros(n, 1));

  const double a = p.intercept;
  const double c = p.cost;
  std::vector<PayoffOracle> payoffs;
  std::vector<ReducedPayoff> reduced;
  for (std::size_t i = 0; i < n; ++i) {
    const double b = slope[i];
    payoffs.emplace_back(
        [a, b, c, i](const ActionProfile& x) {
          double total = 0.0;
          for (std::size_t j = 0; j < x.players(); ++j) total += x(j, 0);
          return (a - b * total) * x(i, 0) - c * x(i, 0);
        },
        OracleKind::kBuiltin, true);
    reduced.emplace_back(
        [a, b, c](std::span<const double> own, std::span<const double> agg) {
          return (a - b * agg[0]) * own[0] - c * own[0];
        });
  }
  Game game(std::move(space), std::move(payoffs),
            "cournot N=" + std::to_string(n));
  return AggregativeGame(std::move(game), identity_aggregator(),
                         std::move(reduced), "sum");
}

Game make_product_game(std::size_t players, double lo, double hi) {
  ActionSpace space = ActionSpace::uniform(players, 1, lo, hi);
  std::vector<PayoffOracle> payoffs;
  for (std::size_t i = 0; i < players; ++i) {
    payoffs.emplace_back(
        [](const ActionProfile& x) {
          double prod = 1.0;
          for (std::size_t j = 0; j < x.players(); ++j) prod *= x(j, 0);
          return prod;
        },
        OracleKind::kBuiltin, true);
  }
  return Game(std::move(space), std::move(payoffs),
              "product N=" + std::to_string(players));
}

Game make_abnormal_game(std::size_t players, std::size_t dead, double lo,
                        double hi, double intercept, double slope,
                        double cost) {
  if (dead >= players) {
    throw Error(ErrorCode::kArgument, "dead player index out of range");
  }
  ActionSpace space = ActionSpace::uniform(players, 1, lo, hi);
  if (lo <= 0.0 && 0.0 <= hi) {
    space = space.with_base(ActionProfile::zeros(players, 1));
  }
  std::vector<PayoffOracle> payoffs;
  for (std::size_t i = 0; i < players; ++i) {
    if (i == dead) {
      payoffs.emplace_back(
          [dead](const ActionProfile& x) {
            double total = 0.0;
            for (std::size_t j = 0; j < x.players(); ++j) {
              if (j != dead) total += x(j, 0) * x(j, 0);
            }
            return total;
          },
          OracleKind::kBuiltin, true);
    } else {
      payoffs.emplace_back(
          [intercept, slope, cost, i](const ActionProfile& x) {
            double total = 0.0;
            for (std::size_t j = 0; j < x.players(); ++j) total += x(j, 0);
            return (intercept - slope * total) * x(i, 0) - cost * x(i, 0);
          },
          OracleKind::kBuiltin, true);
    }
  }
  return Game(std::move(space), std::move(payoffs),
              "abnormal N=" + std::to_string(players) +
                  " dead=" + std::to_string(dead + 1));
}

Game make_zero_game(const ActionSpace& space) {
  std::vector<PayoffOracle> payoffs(
      space.players(),
      PayoffOracle([](const ActionProfile&) { return 0.0; },
                   OracleKind::kBuiltin, true));
  return Game(space, std::move(payoffs), "zero");
}

std::vector<std::vector<double>> random_finite_tables(std::size_t players,
                                                      std::size_t actions,
                                                      std::uint64_t seed) {
  if (players < 2 || actions < 2) {
    throw Error(ErrorCode::kArgument,
                "random finite games need >= 2 players and >= 2 actions");
  }
  std::size_t cells = 1;
  for (std::size_t i = 0; i < players; ++i) {
    if (cells > (std::size_t{1} << 40) / actions) {
      throw Error(ErrorCode::kArgument, "random finite game is too large");
    }
    cells *= actions;
  }
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> tables(players, std::vector<double>(cells));
  for (auto& table : tables) {
    for (double& v : table) v = 2.0 * rng.uniform01() - 1.0;
  }
  return tables;
}

Game make_random_finite(std::size_t players, std::size_t actions,
                        std::uint64_t seed) {
  auto tables = std::make_shared<const std::vector<std::vector<double>>>(
      random_finite_tables(players, actions, seed));
  ActionSpace space = ActionSpace::uniform(players, 1, 0.0,
                                           static_cast<double>(actions - 1))
                          .with_resolution(actions);
  space = space.with_base(ActionProfile::zeros(players, 1));
  std::vector<PayoffOracle> payoffs;
  for (std::size_t i = 0; i < players; ++i) {
    payoffs.emplace_back(
        [tables, actions, i](const ActionProfile& x) {
          std::size_t cell = 0;
          for (std::size_t j = 0; j < x.players(); ++j) {
            const double r = std::round(x(j, 0));
            const auto a = static_cast<std::size_t>(
                std::clamp(r, 0.0, static_cast<double>(actions - 1)));
            cell = cell * actions + a;
          }
          return (*tables)[i][cell];
        },
        OracleKind::kTable, false);
  }
  return Game(std::move(space), std::move(payoffs),
              "random N=" + std::to_string(players) +
                  " actions=" + std::to_string(actions) +
                  " seed=" + std::to_string(seed));
}

Game make_identical_interest(const Game& game, std::size_t source) {
  if (source >= game.players()) {
    throw Error(ErrorCode::kArgument, "source player out of range");
  }
  std::vector<PayoffOracle> payoffs(game.players(), game.payoff(source));
  return Game(game.space(), std::move(payoffs),
              game.name() + " identical-interest");
}

}  // namespace potgame
