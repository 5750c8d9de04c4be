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

// Games over box action spaces: N players, each choosing a block of n real
// coordinates. Players are 0-based in the C++ API; the spec-file language
// and reports use 1-based names (x_1_1 is player 0, coordinate 0).

#ifndef POTGAME_CORE_GAME_HPP_
#define POTGAME_CORE_GAME_HPP_

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace potgame {

// Joint decision vector a = (a_11, ..., a_1n, ..., a_N1, ..., a_Nn).
class ActionProfile {
 public:
  ActionProfile() = default;
  ActionProfile(std::size_t players, std::size_t dims,
                std::vector<double> coords);

  // One scalar action per player.
  static ActionProfile scalar(std::vector<double> actions);
  static ActionProfile zeros(std::size_t players, std::size_t dims);

  std::size_t players() const { return players_; }
  std::size_t dims() const { return dims_; }
  std::size_t size() const { return coords_.size(); }

  double operator()(std::size_t player, std::size_t coord) const {
    return coords_[player * dims_ + coord];
  }
  double& operator()(std::size_t player, std::size_t coord) {
    return coords_[player * dims_ + coord];
  }
  double operator[](std::size_t flat) const { return coords_[flat]; }
  double& operator[](std::size_t flat) { return coords_[flat]; }

  std::span<const double> block(std::size_t player) const {
    return {coords_.data() + player * dims_, dims_};
  }
  void set_block(std::size_t player, std::span<const double> values);

  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const ActionProfile&, const ActionProfile&) = default;
  friend auto operator<=>(const ActionProfile& a, const ActionProfile& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  std::size_t players_ = 0;
  std::size_t dims_ = 0;
  std::vector<double> coords_;
};

std::string to_string(const ActionProfile& x);

// Product of per-coordinate intervals with a designated base point (the
// profile that plays the role of the origin) and a grid resolution per
// coordinate. A coordinate with lower == upper is frozen: it has a single
// grid point and pads players whose true action dimension is smaller than n.
class ActionSpace {
 public:
  static constexpr std::size_t kDefaultResolution = 5;

  ActionSpace(std::size_t players, std::size_t dims, std::vector<double> lower,
              std::vector<double> upper);

  static ActionSpace uniform(std::size_t players, std::size_t dims, double lo,
                             double hi);

  ActionSpace with_base(ActionProfile base) const;
  ActionSpace with_resolution(std::size_t resolution) const;
  ActionSpace with_resolution(std::vector<std::size_t> resolution) const;

  std::size_t players() const { return players_; }
  std::size_t dims() const { return dims_; }
  std::size_t size() const { return lower_.size(); }

  double lower(std::size_t flat) const { return lower_[flat]; }
  double upper(std::size_t flat) const { return upper_[flat]; }
  double lower(std::size_t player, std::size_t coord) const {
    return lower_[player * dims_ + coord];
  }
  double upper(std::size_t player, std::size_t coord) const {
    return upper_[player * dims_ + coord];
  }
  std::size_t resolution(std::size_t flat) const { return resolution_[flat]; }
  bool frozen(std::size_t flat) const { return lower_[flat] == upper_[flat]; }

  const ActionProfile& base() const { return base_; }
  ActionProfile midpoint() const;
  ActionProfile lower_corner() const;

  bool contains(const ActionProfile& x) const;
  // Throws Error(kBounds) naming `what` when x is outside the box.
  void require_contains(const ActionProfile& x, const char* what) const;

  // True when every coordinate extends equally far on both sides of the base.
  bool symmetric_about_base() const;

 private:
  std::size_t players_;
  std::size_t dims_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::size_t> resolution_;
  ActionProfile base_;
};

enum class OracleKind { kExpression, kBuiltin, kExternal, kTable };

const char* to_string(OracleKind kind);

// A player's payoff f_i. The callable must be pure; `smooth` declares whether
// finite-difference derivatives are meaningful.
class PayoffOracle {
 public:
  using Fn = std::function<double(const ActionProfile&)>;

  explicit PayoffOracle(Fn fn, OracleKind kind = OracleKind::kBuiltin,
                        bool smooth = true);

  double operator()(const ActionProfile& x) const { return (*fn_)(x); }
  OracleKind kind() const { return kind_; }
  bool smooth() const { return smooth_; }

 private:
  std::shared_ptr<const Fn> fn_;
  OracleKind kind_;
  bool smooth_;
};

class Game {
 public:
  Game(ActionSpace space, std::vector<PayoffOracle> payoffs,
       std::string name = "game");

  const ActionSpace& space() const { return space_; }
  std::size_t players() const { return space_.players(); }
  std::size_t dims() const { return space_.dims(); }
  const PayoffOracle& payoff(std::size_t player) const {
    return payoffs_[player];
  }
  const std::string& name() const { return name_; }
  bool smooth() const;

  // f_i(x) with the bounds and finiteness contract enforced.
  double evaluate(std::size_t player, const ActionProfile& x) const;

  // Same payoffs over a different box or base point.
  Game with_space(ActionSpace space) const;

 private:
  ActionSpace space_;
  std::vector<PayoffOracle> payoffs_;
  std::string name_;
};

double evaluate(const Game& game, std::size_t player, const ActionProfile& x);

// x with player i's block shifted by y. The unchecked overload performs only
// the arithmetic; the checked one also enforces the box.
ActionProfile unilateral_deviation(const ActionProfile& x, std::size_t player,
                                   std::span<const double> shift);
ActionProfile unilateral_deviation(const ActionSpace& space,
                                   const ActionProfile& x, std::size_t player,
                                   std::span<const double> shift);

// g maps the sum of all blocks (length n) to an aggregate of length m.
using Aggregator = std::function<std::vector<double>(std::span<const double>)>;
// f~_i(own block, g(x_bar)).
using ReducedPayoff = std::function<double(std::span<const double> own,
                                           std::span<const double> aggregate)>;

Aggregator identity_aggregator();

// Componentwise sum of all player blocks.
std::vector<double> block_sum(const ActionProfile& x);
std::vector<double> aggregate(const Aggregator& g, const ActionProfile& x);

class AggregativeGame {
 public:
  AggregativeGame(Game base, Aggregator g, std::vector<ReducedPayoff> reduced,
                  std::string aggregator_name = "sum");

  const Game& base() const { return base_; }
  const Aggregator& aggregator() const { return g_; }
  const std::string& aggregator_name() const { return aggregator_name_; }
  std::size_t players() const { return base_.players(); }

  double reduced(std::size_t player, std::span<const double> own,
                 std::span<const double> aggregate) const {
    return reduced_[player](own, aggregate);
  }
  // Same payoffs and aggregator over a different box or base point.
  AggregativeGame with_space(ActionSpace space) const;

  // f~_i(x_i, g(x_bar)) at a full profile.
  double evaluate_reduced(std::size_t player, const ActionProfile& x) const;

  // Bounds of x_bar: the Minkowski sum of the players' boxes.
  std::pair<std::vector<double>, std::vector<double>> minkowski_box() const;

 private:
  Game base_;
  Aggregator g_;
  std::vector<ReducedPayoff> reduced_;
  std::string aggregator_name_;
};

}  // namespace potgame

#endif  // POTGAME_CORE_GAME_HPP_
