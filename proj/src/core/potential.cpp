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

#include "core/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "core/error.hpp"
#include "core/path.hpp"

namespace potgame {

const char* route_id(Route route) {
  switch (route) {
    case Route::kPathSum: return "hp";
    case Route::kReversedPath: return "t6";
    case Route::kPairwise: return "t8";
  }
  return "hp";
}

std::optional<Route> parse_route(const std::string& id) {
  if (id == "hp") return Route::kPathSum;
  if (id == "t6") return Route::kReversedPath;
  if (id == "t8") return Route::kPairwise;
  return std::nullopt;
}

PotentialCandidate::PotentialCandidate(Route route, PotentialFn evaluator)
    : route_(route), evaluator_(std::move(evaluator)) {}

bool PotentialCandidate::validated() const {
  return validation_ && validation_->verdict == Verdict::kPotential;
}

PotentialCandidate build_via_path_sum(const Game& game) {
  return PotentialCandidate(Route::kPathSum, [game](const ActionProfile& z) {
    return h_path(game, game.space().base(), z);
  });
}

PotentialCandidate build_via_reversed_path(const Game& game) {
  if (!game.space().symmetric_about_base()) {
    throw Error(ErrorCode::kRefused,
                "reversed-path construction needs a box symmetric about the "
                "base point; re-base the game at the box midpoint");
  }
  return PotentialCandidate(Route::kReversedPath,
                            [game](const ActionProfile& z) {
                              return -h_path(game, z, game.space().base());
                            });
}

namespace {

// Prefix term: the player-by-player sum from the base over the first
// `count` players only.
double prefix_sum(const Game& game, const ActionProfile& z, std::size_t count) {
  const ActionProfile& base = game.space().base();
  return h_path(game, base, truncated(z, count, base));
}

double pairs_potential(const Game& game, const ActionProfile& z) {
  const std::size_t players = game.players();
  const ActionProfile& base = game.space().base();
  game.space().require_contains(z, "profile");
  // Odd N = 2K + 1 starts with players 1..3, even N = 2K with players 1..2;
  // each later pair (k, k + 1) is moved from the base while players before
  // it sit at z.
  const std::size_t head = players % 2 == 1 ? 3 : 2;
  double phi = prefix_sum(game, z, head);
  for (std::size_t first = head; first + 1 < players; first += 2) {
    const ActionProfile anchor = truncated(z, first, base);
    phi += h_pair(game, first, first + 1, anchor, z.block(first),
                  z.block(first + 1));
  }
  return phi;
}

}  // namespace

PotentialCandidate build_via_pairs(const Game& game) {
  return PotentialCandidate(Route::kPairwise, [game](const ActionProfile& z) {
    return pairs_potential(game, z);
  });
}

PotentialCandidate build(const Game& game, Route route) {
  switch (route) {
    case Route::kPathSum: return build_via_path_sum(game);
    case Route::kReversedPath: return build_via_reversed_path(game);
    case Route::kPairwise: return build_via_pairs(game);
  }
  return build_via_path_sum(game);
}

void validate(PotentialCandidate& candidate, const Game& game,
              const GridSampler& sampler, const Tolerances& tol) {
  CheckReport report =
      check_definition(game, candidate.evaluator(), sampler, tol);
  report.notes.insert(report.notes.begin(),
                      std::string("route ") + route_id(candidate.route()));
  candidate.set_validation(std::move(report));
}

CrossValidation cross_validate(std::vector<PotentialCandidate>& candidates,
                               const Game& game, const GridSampler& sampler,
                               const Tolerances& tol) {
  if (candidates.size() < 2) {
    throw Error(ErrorCode::kArgument,
                "cross-validation needs at least two candidates");
  }
  CrossValidation out;
  const std::size_t c = candidates.size();
  out.deviation.assign(c, std::vector<double>(c, 0.0));
  for (auto& cand : candidates) {
    if (!cand.validation()) validate(cand, game, sampler, tol);
    out.routes.push_back(cand.route());
    out.definition_residual.push_back(cand.validation()->max_residual);
    out.validated.push_back(cand.validated());
  }
  const SampleSet set = sampler.select(sampler.profile_count(), "cross");
  std::vector<double> values(c);
  for (std::uint64_t k = 0; k < set.size(); ++k) {
    const ActionProfile z = sampler.profile(set[k]);
    for (std::size_t a = 0; a < c; ++a) values[a] = candidates[a](z);
    for (std::size_t a = 0; a < c; ++a) {
      for (std::size_t b = a + 1; b < c; ++b) {
        const double d = std::fabs(values[a] - values[b]);
        out.deviation[a][b] = std::max(out.deviation[a][b], d);
        out.deviation[b][a] = out.deviation[a][b];
        out.max_deviation = std::max(out.max_deviation, d);
      }
    }
    ++out.samples;
  }
  return out;
}

std::vector<NashCandidate> nash_candidates(const PotentialCandidate& candidate,
                                           const Game& game,
                                           const GridSampler& sampler,
                                           std::size_t k,
                                           const Tolerances& tol) {
  if (!candidate.validated()) {
    throw Error(ErrorCode::kRefused,
                std::string("potential from route ") +
                    route_id(candidate.route()) +
                    " is not validated; refusing to rank profiles by it");
  }
  const SampleSet set = sampler.select(sampler.profile_count(), "nash");
  std::vector<NashCandidate> ranked;
  ranked.reserve(set.size());
  for (std::uint64_t t = 0; t < set.size(); ++t) {
    ActionProfile x = sampler.profile(set[t]);
    const double v = candidate(x);
    ranked.push_back({std::move(x), v});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const NashCandidate& a, const NashCandidate& b) {
              if (a.potential != b.potential) return a.potential < b.potential;
              return a.profile < b.profile;
            });

  auto is_grid_equilibrium = [&](const ActionProfile& x) {
    for (std::size_t i = 0; i < game.players(); ++i) {
      const double here = game.evaluate(i, x);
      ActionProfile y = x;
      for (std::uint64_t b = 0; b < sampler.block_count(i); ++b) {
        sampler.write_block(y, i, b);
        const double there = game.evaluate(i, y);
        if (tol.violates(here - there, std::max(std::fabs(here),
                                                std::fabs(there)))) {
          return false;
        }
      }
    }
    return true;
  };

  std::vector<NashCandidate> out;
  for (auto& c : ranked) {
    if (out.size() >= k) break;
    if (is_grid_equilibrium(c.profile)) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace potgame
