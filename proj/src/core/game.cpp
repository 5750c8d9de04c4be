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

#include "core/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "core/error.hpp"

namespace potgame {

namespace {

// Slack for box membership, so that z + (w - z) style arithmetic does not
// trip the bounds check one ulp outside the box.
double bound_slack(double lo, double hi) {
  return 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
}

}  // namespace

ActionProfile::ActionProfile(std::size_t players, std::size_t dims,
                             std::vector<double> coords)
    : players_(players), dims_(dims), coords_(std::move(coords)) {
  if (coords_.size() != players_ * dims_) {
    throw Error(ErrorCode::kArgument,
                "profile has " + std::to_string(coords_.size()) +
                    " coordinates, expected " +
                    std::to_string(players_ * dims_));
  }
}

ActionProfile ActionProfile::scalar(std::vector<double> actions) {
  const std::size_t n = actions.size();
  return ActionProfile(n, 1, std::move(actions));
}

ActionProfile ActionProfile::zeros(std::size_t players, std::size_t dims) {
  return ActionProfile(players, dims, std::vector<double>(players * dims, 0.0));
}

void ActionProfile::set_block(std::size_t player,
                              std::span<const double> values) {
  if (values.size() != dims_) {
    throw Error(ErrorCode::kArgument, "action block has " +
                                          std::to_string(values.size()) +
                                          " coordinates, expected " +
                                          std::to_string(dims_));
  }
  std::copy(values.begin(), values.end(), coords_.begin() + player * dims_);
}

std::string to_string(const ActionProfile& x) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k > 0) out << ", ";
    out << x[k];
  }
  out << ')';
  return out.str();
}

ActionSpace::ActionSpace(std::size_t players, std::size_t dims,
                         std::vector<double> lower, std::vector<double> upper)
    : players_(players),
      dims_(dims),
      lower_(std::move(lower)),
      upper_(std::move(upper)) {
  if (players_ < 2) {
    throw Error(ErrorCode::kArgument, "a game needs at least 2 players");
  }
  if (dims_ < 1) {
    throw Error(ErrorCode::kArgument, "action dimension must be at least 1");
  }
  if (lower_.size() != players_ * dims_ || upper_.size() != players_ * dims_) {
    throw Error(ErrorCode::kArgument, "box bounds must have N*n entries");
  }
  resolution_.resize(lower_.size());
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k])) {
      throw Error(ErrorCode::kArgument, "box bounds must be finite");
    }
    if (lower_[k] > upper_[k]) {
      throw Error(ErrorCode::kArgument,
                  "inverted bounds for coordinate " + std::to_string(k + 1));
    }
    resolution_[k] = frozen(k) ? 1 : kDefaultResolution;
  }
  base_ = midpoint();
}

ActionSpace ActionSpace::uniform(std::size_t players, std::size_t dims,
                                 double lo, double hi) {
  return ActionSpace(players, dims, std::vector<double>(players * dims, lo),
                     std::vector<double>(players * dims, hi));
}

ActionSpace ActionSpace::with_base(ActionProfile base) const {
  if (base.players() != players_ || base.dims() != dims_) {
    throw Error(ErrorCode::kArgument, "base point has the wrong shape");
  }
  if (!contains(base)) {
    throw Error(ErrorCode::kBounds,
                "base point " + to_string(base) + " lies outside the box");
  }
  ActionSpace out = *this;
  out.base_ = std::move(base);
  return out;
}

ActionSpace ActionSpace::with_resolution(std::size_t resolution) const {
  return with_resolution(std::vector<std::size_t>(size(), resolution));
}

ActionSpace ActionSpace::with_resolution(
    std::vector<std::size_t> resolution) const {
  if (resolution.size() != size()) {
    throw Error(ErrorCode::kArgument, "resolution must have N*n entries");
  }
  ActionSpace out = *this;
  for (std::size_t k = 0; k < size(); ++k) {
    if (frozen(k)) {
      out.resolution_[k] = 1;
    } else if (resolution[k] < 2) {
      throw Error(ErrorCode::kArgument,
                  "grid resolution must be at least 2 for coordinate " +
                      std::to_string(k + 1));
    } else {
      out.resolution_[k] = resolution[k];
    }
  }
  return out;
}

ActionProfile ActionSpace::midpoint() const {
  std::vector<double> mid(size());
  for (std::size_t k = 0; k < size(); ++k) {
    mid[k] = frozen(k) ? lower_[k] : 0.5 * (lower_[k] + upper_[k]);
  }
  return ActionProfile(players_, dims_, std::move(mid));
}

ActionProfile ActionSpace::lower_corner() const {
  return ActionProfile(players_, dims_, lower_);
}

bool ActionSpace::contains(const ActionProfile& x) const {
  if (x.players() != players_ || x.dims() != dims_) return false;
  for (std::size_t k = 0; k < size(); ++k) {
    const double slack = bound_slack(lower_[k], upper_[k]);
    if (!(x[k] >= lower_[k] - slack && x[k] <= upper_[k] + slack)) {
      return false;
    }
  }
  return true;
}

void ActionSpace::require_contains(const ActionProfile& x,
                                   const char* what) const {
  if (!contains(x)) {
    throw Error(ErrorCode::kBounds, std::string(what) + " " + to_string(x) +
                                        " lies outside the action box");
  }
}

bool ActionSpace::symmetric_about_base() const {
  for (std::size_t k = 0; k < size(); ++k) {
    const double below = base_[k] - lower_[k];
    const double above = upper_[k] - base_[k];
    if (std::fabs(above - below) > bound_slack(lower_[k], upper_[k])) {
      return false;
    }
  }
  return true;
}

const char* to_string(OracleKind kind) {
  switch (kind) {
    case OracleKind::kExpression: return "expression";
    case OracleKind::kBuiltin: return "builtin";
    case OracleKind::kExternal: return "external";
    case OracleKind::kTable: return "table";
  }
  return "unknown";
}

PayoffOracle::PayoffOracle(Fn fn, OracleKind kind, bool smooth)
    : fn_(std::make_shared<const Fn>(std::move(fn))),
      kind_(kind),
      smooth_(smooth) {
  if (!*fn_) throw Error(ErrorCode::kArgument, "empty payoff oracle");
}

Game::Game(ActionSpace space, std::vector<PayoffOracle> payoffs,
           std::string name)
    : space_(std::move(space)),
      payoffs_(std::move(payoffs)),
      name_(std::move(name)) {
  if (payoffs_.size() != space_.players()) {
    throw Error(ErrorCode::kArgument,
                "game has " + std::to_string(payoffs_.size()) +
                    " payoffs for " + std::to_string(space_.players()) +
                    " players");
  }
}

bool Game::smooth() const {
  return std::all_of(payoffs_.begin(), payoffs_.end(),
                     [](const PayoffOracle& f) { return f.smooth(); });
}

double Game::evaluate(std::size_t player, const ActionProfile& x) const {
  if (player >= players()) {
    throw Error(ErrorCode::kArgument,
                "player index " + std::to_string(player + 1) + " out of range");
  }
  space_.require_contains(x, "profile");
  const double value = payoffs_[player](x);
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::kOracle, "payoff of player " +
                                        std::to_string(player + 1) +
                                        " is not finite at " + to_string(x));
  }
  return value;
}

Game Game::with_space(ActionSpace space) const {
  if (space.players() != players() || space.dims() != dims()) {
    throw Error(ErrorCode::kArgument, "replacement space has the wrong shape");
  }
  return Game(std::move(space), payoffs_, name_);
}

double evaluate(const Game& game, std::size_t player, const ActionProfile& x) {
  return game.evaluate(player, x);
}

ActionProfile unilateral_deviation(const ActionProfile& x, std::size_t player,
                                   std::span<const double> shift) {
  if (player >= x.players()) {
    throw Error(ErrorCode::kArgument,
                "player index " + std::to_string(player + 1) + " out of range");
  }
  if (shift.size() != x.dims()) {
    throw Error(ErrorCode::kArgument, "deviation block has the wrong length");
  }
  ActionProfile out = x;
  for (std::size_t m = 0; m < x.dims(); ++m) out(player, m) += shift[m];
  return out;
}

ActionProfile unilateral_deviation(const ActionSpace& space,
                                   const ActionProfile& x, std::size_t player,
                                   std::span<const double> shift) {
  ActionProfile out = unilateral_deviation(x, player, shift);
  space.require_contains(out, "deviated profile");
  return out;
}

Aggregator identity_aggregator() {
  return [](std::span<const double> s) {
    return std::vector<double>(s.begin(), s.end());
  };
}

std::vector<double> block_sum(const ActionProfile& x) {
  std::vector<double> sum(x.dims(), 0.0);
  for (std::size_t i = 0; i < x.players(); ++i) {
    for (std::size_t m = 0; m < x.dims(); ++m) sum[m] += x(i, m);
  }
  return sum;
}

std::vector<double> aggregate(const Aggregator& g, const ActionProfile& x) {
  return g(block_sum(x));
}

AggregativeGame::AggregativeGame(Game base, Aggregator g,
                                 std::vector<ReducedPayoff> reduced,
                                 std::string aggregator_name)
    : base_(std::move(base)),
      g_(std::move(g)),
      reduced_(std::move(reduced)),
      aggregator_name_(std::move(aggregator_name)) {
  if (reduced_.size() != base_.players()) {
    throw Error(ErrorCode::kArgument,
                "aggregative game needs one reduced payoff per player");
  }
  if (!g_) throw Error(ErrorCode::kArgument, "empty aggregator");
}

AggregativeGame AggregativeGame::with_space(ActionSpace space) const {
  return AggregativeGame(base_.with_space(std::move(space)), g_, reduced_,
                         aggregator_name_);
}

double AggregativeGame::evaluate_reduced(std::size_t player,
                                         const ActionProfile& x) const {
  const std::vector<double> agg = aggregate(g_, x);
  return reduced_[player](x.block(player), agg);
}

std::pair<std::vector<double>, std::vector<double>>
AggregativeGame::minkowski_box() const {
  const ActionSpace& s = base_.space();
  std::vector<double> lo(s.dims(), 0.0);
  std::vector<double> hi(s.dims(), 0.0);
  for (std::size_t i = 0; i < s.players(); ++i) {
    for (std::size_t m = 0; m < s.dims(); ++m) {
      lo[m] += s.lower(i, m);
      hi[m] += s.upper(i, m);
    }
  }
  return {lo, hi};
}

}  // namespace potgame
