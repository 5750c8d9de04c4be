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

// Potential-function construction. Three independent routes build phi from
// payoff differences alone, each normalized so that phi(base) = 0:
//
//   path sum       phi(z) = h_P(z - base, base): move players 1..N in turn
//                  from the base point to z.
//   reversed path  phi(z) = -h_P(base - z, z): walk from z back to the base
//                  point, again player by player, and negate. Needs a box
//                  symmetric about the base point.
//   pairwise       phi(z) = prefix term over the first 3 (odd N) or 2 (even
//                  N) players plus one two-player term h_{k,k+1} per
//                  subsequent pair, each anchored at the truncated profile.

#ifndef POTGAME_CORE_POTENTIAL_HPP_
#define POTGAME_CORE_POTENTIAL_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/checkers.hpp"
#include "core/game.hpp"
#include "core/report.hpp"
#include "core/sampler.hpp"

namespace potgame {

enum class Route { kPathSum, kReversedPath, kPairwise };

// Interface names used on the command line and in reports: hp, t6, t8.
const char* route_id(Route route);
std::optional<Route> parse_route(const std::string& id);

class PotentialCandidate {
 public:
  PotentialCandidate(Route route, PotentialFn evaluator);

  Route route() const { return route_; }
  double operator()(const ActionProfile& x) const { return evaluator_(x); }
  const PotentialFn& evaluator() const { return evaluator_; }

  // Definition residual attached by validate().
  const std::optional<CheckReport>& validation() const { return validation_; }
  bool validated() const;

  void set_validation(CheckReport report) { validation_ = std::move(report); }

 private:
  Route route_;
  PotentialFn evaluator_;
  std::optional<CheckReport> validation_;
};

PotentialCandidate build_via_path_sum(const Game& game);
// Throws Error(kRefused) on a box that is not symmetric about the base.
PotentialCandidate build_via_reversed_path(const Game& game);
PotentialCandidate build_via_pairs(const Game& game);
PotentialCandidate build(const Game& game, Route route);

// Runs check_definition on the candidate and attaches the report.
void validate(PotentialCandidate& candidate, const Game& game,
              const GridSampler& sampler, const Tolerances& tol = {});

struct CrossValidation {
  std::vector<Route> routes;
  // deviation[a][b] = max over samples of |phi_a - phi_b|.
  std::vector<std::vector<double>> deviation;
  double max_deviation = 0.0;
  std::vector<double> definition_residual;
  std::vector<bool> validated;
  std::uint64_t samples = 0;
};

// Validates every candidate that is not yet validated, then compares them
// pointwise on the grid.
CrossValidation cross_validate(std::vector<PotentialCandidate>& candidates,
                               const Game& game, const GridSampler& sampler,
                               const Tolerances& tol = {});

struct NashCandidate {
  ActionProfile profile;
  double potential;
};

// Grid profiles of smallest potential, ties broken lexicographically, each
// confirmed to be a grid Nash equilibrium: no player lowers their own payoff
// by a unilateral move to another grid block. Refuses unvalidated
// candidates.
std::vector<NashCandidate> nash_candidates(const PotentialCandidate& candidate,
                                           const Game& game,
                                           const GridSampler& sampler,
                                           std::size_t k,
                                           const Tolerances& tol = {});

}  // namespace potgame

#endif  // POTGAME_CORE_POTENTIAL_HPP_
