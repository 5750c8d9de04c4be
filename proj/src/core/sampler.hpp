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

// Deterministic sampling of box action spaces. All "for every profile"
// conditions in this library are checked on the grid (optionally thinned to
// a seeded budget), and every report carries the sampling contract used.

#ifndef POTGAME_CORE_SAMPLER_HPP_
#define POTGAME_CORE_SAMPLER_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "core/game.hpp"

namespace potgame {

struct SamplingConfig {
  std::uint64_t seed = 0;
  // Maximum number of samples a single checker evaluates. Larger sample
  // spaces are thinned to a seeded uniform subsample of this size.
  std::uint64_t budget = 250000;
  // Extra uniformly drawn in-box profiles used by the smooth checks.
  std::size_t random_points = 0;
  unsigned threads = 1;
};

// Either every index of [0, population) or a sorted seeded subsample.
class SampleSet {
 public:
  static SampleSet all(std::uint64_t population);
  static SampleSet subsample(std::uint64_t population, std::uint64_t budget,
                             std::uint64_t seed);

  std::uint64_t size() const {
    return picks_ ? picks_->size() : population_;
  }
  std::uint64_t operator[](std::uint64_t k) const {
    return picks_ ? (*picks_)[k] : k;
  }
  std::uint64_t population() const { return population_; }
  bool exhaustive() const { return !picks_; }

 private:
  std::uint64_t population_ = 0;
  std::optional<std::vector<std::uint64_t>> picks_;
};

class GridSampler {
 public:
  explicit GridSampler(const ActionSpace& space, SamplingConfig config = {});

  const ActionSpace& space() const { return space_; }
  const SamplingConfig& config() const { return config_; }

  std::span<const double> axis(std::size_t flat_coord) const {
    return axes_[flat_coord];
  }

  // Number of grid points of one player's block (product over its coords).
  std::uint64_t block_count(std::size_t player) const {
    return block_counts_[player];
  }
  std::vector<double> block(std::size_t player, std::uint64_t index) const;
  void write_block(ActionProfile& x, std::size_t player,
                   std::uint64_t index) const;

  // Grid profiles in lexicographic order (player 1 slowest).
  std::uint64_t profile_count() const { return profile_count_; }
  ActionProfile profile(std::uint64_t index) const;
  std::vector<ActionProfile> profiles() const;

  // Thinning of a checker's sample space; `stream` decorrelates checkers.
  SampleSet select(std::uint64_t population, std::string_view stream) const;

  // k-th seeded uniform profile inside the box.
  ActionProfile random_profile(std::uint64_t k) const;

 private:
  ActionSpace space_;
  SamplingConfig config_;
  std::vector<std::vector<double>> axes_;
  std::vector<std::uint64_t> block_counts_;
  std::uint64_t profile_count_ = 1;
};

}  // namespace potgame

#endif  // POTGAME_CORE_SAMPLER_HPP_
