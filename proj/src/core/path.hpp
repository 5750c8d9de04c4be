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

// Discrete path functionals over unilateral-deviation paths.

#ifndef POTGAME_CORE_PATH_HPP_
#define POTGAME_CORE_PATH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "core/game.hpp"
#include "core/sampler.hpp"

namespace potgame {

// Ordered vertices q^0..q^L where consecutive vertices differ in exactly one
// player's block; that player is the step's deviator.
class Path {
 public:
  static Path from_vertices(std::vector<ActionProfile> vertices);

  // z -> (w_i, z_j) -> (w_i, w_j) -> (z_i, w_j) -> z, with w_i, w_j the
  // target blocks of players i and j.
  static Path rectangle(const ActionProfile& z, std::size_t i,
                        std::span<const double> target_i, std::size_t j,
                        std::span<const double> target_j);

  const std::vector<ActionProfile>& vertices() const { return vertices_; }
  const std::vector<std::size_t>& deviators() const { return deviators_; }
  std::size_t steps() const { return deviators_.size(); }

  bool closed() const;
  // Closed, four steps, four distinct vertices.
  bool simple_closed_four() const;

  Path reversed() const;
  // Throws Error(kPath) unless this path ends where `tail` begins.
  Path concatenated(const Path& tail) const;

 private:
  Path(std::vector<ActionProfile> vertices, std::vector<std::size_t> deviators)
      : vertices_(std::move(vertices)), deviators_(std::move(deviators)) {}

  std::vector<ActionProfile> vertices_;
  std::vector<std::size_t> deviators_;
};

// I(Q, f): sum over steps of the deviator's payoff change.
double path_sum(const Game& game, const Path& path);

// Telescoping sum along the player-by-player path that moves block 1, then
// block 2, ..., from `from` to `to`. Equals phi(to) - phi(from) in a
// potential game.
double h_path(const Game& game, const ActionProfile& from,
              const ActionProfile& to);

// h_P(y, z): the same sum from z to z + y.
double h_p(const Game& game, const ActionProfile& y, const ActionProfile& z);

// The player-by-player path itself; players whose block does not change are
// skipped so that every step has a deviator.
Path canonical_path(const ActionProfile& from, const ActionProfile& to);

// Two-step telescoping sum that moves player i to target_i and then player j
// to target_j, all other players held at `from`.
double h_pair(const Game& game, std::size_t i, std::size_t j,
              const ActionProfile& from, std::span<const double> target_i,
              std::span<const double> target_j);

// h_ij(y_j, y_i, z_j, z_i; z_-{i,j}) with displacements y and anchor z.
double h_ij(const Game& game, std::size_t i, std::size_t j,
            std::span<const double> y_j, std::span<const double> y_i,
            const ActionProfile& z);

// (z_1, ..., z_keep, base_{keep+1}, ..., base_N).
ActionProfile truncated(const ActionProfile& z, std::size_t keep,
                        const ActionProfile& base);

// Axis-aligned two-player rectangles over the sampler's grid. A cell is an
// unordered pair of players i < j, unordered pairs of distinct grid blocks
// for each of them, and a grid configuration of the remaining players. Cells
// are ordered by player pair, then the other players' configuration, then
// player i's block pair, then player j's.
class FourCycleEnumerator {
 public:
  FourCycleEnumerator(const GridSampler& sampler, std::uint64_t budget);

  std::uint64_t population() const { return samples_.population(); }
  std::uint64_t size() const { return samples_.size(); }
  bool exhaustive() const { return samples_.exhaustive(); }

  // k-th yielded cycle (k < size()).
  Path operator[](std::uint64_t k) const;
  // Cycle for a population index, independent of thinning.
  Path cell(std::uint64_t index) const;

  std::vector<Path> collect() const;

 private:
  struct PairBlock {
    std::size_t i;
    std::size_t j;
    std::uint64_t offset;
    std::uint64_t others;
    std::uint64_t pairs_i;
    std::uint64_t pairs_j;
  };

  const GridSampler* sampler_;
  std::vector<PairBlock> pairs_;
  SampleSet samples_;
};

}  // namespace potgame

#endif  // POTGAME_CORE_PATH_HPP_
