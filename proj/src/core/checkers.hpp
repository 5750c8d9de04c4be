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

// Potentiality tests. Every universally quantified condition is checked on
// the sampler's grid (thinned to its budget when the sample space is larger),
// so kPotential means "no violation at the reported coverage".

#ifndef POTGAME_CORE_CHECKERS_HPP_
#define POTGAME_CORE_CHECKERS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/game.hpp"
#include "core/report.hpp"
#include "core/sampler.hpp"

namespace potgame {

using PotentialFn = std::function<double(const ActionProfile&)>;

// Exact-potential identity f_i(x'_i, x_-i) - f_i(x) = phi(x'_i, x_-i) -
// phi(x) over every grid profile, player and grid alternative x'_i.
CheckReport check_definition(const Game& game, const PotentialFn& phi,
                             const GridSampler& sampler,
                             const Tolerances& tol = {});

// I(Q, f) = 0 over the grid's two-player rectangles. The witness is the
// violating cycle with the lowest enumeration index.
CheckReport check_four_cycles(const Game& game, const GridSampler& sampler,
                              std::uint64_t budget,
                              const Tolerances& tol = {});
CheckReport check_four_cycles(const Game& game, const GridSampler& sampler,
                              const Tolerances& tol = {});

// Pairwise functional equation
//   h_ij(y_j, y_i, z_j, z_i; z*) =
//       h_ij(y_j + z_j, y_i + z_i, 0, 0; z*) - h_ij(z_j, z_i, 0, 0; z*)
// in base-point coordinates, over ordered player pairs, grid anchors z and
// grid targets z + y.
CheckReport check_pairwise(const Game& game, const GridSampler& sampler,
                           const Tolerances& tol = {});

struct PairwiseSample {
  std::size_t i;
  std::size_t j;
  ActionProfile z;
  std::vector<double> y_i;
  std::vector<double> y_j;
};

// Same residual over explicit samples; samples whose shifted blocks leave
// the box are skipped and counted.
CheckReport check_pairwise(const Game& game,
                           std::span<const PairwiseSample> samples,
                           const Tolerances& tol = {});

// Residual of the pairwise equation at one sample (lhs - rhs).
struct PairwiseTerms {
  double lhs;
  double rhs;
};
PairwiseTerms pairwise_terms(const Game& game, const PairwiseSample& sample);

// h_P(y, z) = h_P(y + z, 0) - h_P(z, 0) in base-point coordinates. On a box
// that is not symmetric about the base point a pass is only reported as
// inconclusive; a violation still refutes.
CheckReport check_functional_equation(const Game& game,
                                      const GridSampler& sampler,
                                      const Tolerances& tol = {});

// Symmetry of mixed second partials d2 f_i / da_ip da_jq against
// d2 f_j / da_jq da_ip, by central differences with step tol.fd_step.
// Points whose stencil leaves the box are skipped.
CheckReport check_cross_partials(const Game& game, const GridSampler& sampler,
                                 const Tolerances& tol = {});

struct AbnormalReport {
  std::vector<bool> flagged;
  // Largest payoff change from the player's own deviation, per player.
  std::vector<double> spread;
  std::uint64_t samples = 0;

  bool abnormal() const;
};

// A player is flagged when no own deviation changes their payoff anywhere on
// the grid.
AbnormalReport check_abnormal(const Game& game, const GridSampler& sampler,
                              const Tolerances& tol = {});

struct NonvanishingReport {
  bool found = false;
  std::optional<ActionProfile> witness;
  double value = 0.0;
  std::uint64_t samples = 0;
  // Set when no witness was found and the payoffs of the last two players
  // along profiles (0, ..., 0, u, v) make the last player abnormal.
  bool last_player_abnormal = false;
  std::vector<std::string> notes;
};

// Searches the grid, in order, for z with |h_P(z, 0)| > threshold.
NonvanishingReport check_aggregative_nonvanishing(
    const AggregativeGame& game, const GridSampler& sampler,
    std::uint64_t max_samples = 100, double threshold = 1e-9);

// Pairwise equation for aggregative games: the other players enter only
// through their aggregate, so z_-{i,j} ranges over the distinct grid
// aggregates (carried by a proxy player) instead of every configuration, and
// each unordered pair is tested once. Needs at least three players.
CheckReport check_pairwise_aggregative(const AggregativeGame& game,
                                       const GridSampler& sampler,
                                       const Tolerances& tol = {});

struct ConsistencyReport {
  std::vector<double> max_deviation;
  std::vector<bool> consistent;
  std::uint64_t samples = 0;

  bool all_consistent() const;
};

// |f~_i(x_i, g(x_bar)) - f_i(x)| over the grid.
ConsistencyReport check_aggregative_consistency(const AggregativeGame& game,
                                                const GridSampler& sampler,
                                                const Tolerances& tol = {});

}  // namespace potgame

#endif  // POTGAME_CORE_CHECKERS_HPP_
