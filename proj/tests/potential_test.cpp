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

#include <gtest/gtest.h>

#include <cmath>

#include "core/error.hpp"
#include "core/potential.hpp"
#include "core/zoo.hpp"
#include "oracles.hpp"

namespace potgame {
namespace {

ActionProfile P(std::vector<double> v) { return ActionProfile::scalar(std::move(v)); }

Game cournot(std::size_t n, std::vector<double> slope = {1}) {
  CournotParams p;
  p.players = n;
  p.slope = std::move(slope);
  return make_cournot(p).base();
}

Game recentred(const Game& g) {
  return g.with_space(g.space().with_base(g.space().midpoint()));
}

TEST(Routes, Ids) {
  EXPECT_STREQ(route_id(Route::kPathSum), "hp");
  EXPECT_STREQ(route_id(Route::kReversedPath), "t6");
  EXPECT_STREQ(route_id(Route::kPairwise), "t8");
  EXPECT_EQ(parse_route("t8"), Route::kPairwise);
  EXPECT_FALSE(parse_route("all"));
}

TEST(PathSum, FourFirmValues) {
  const Game g = cournot(4);
  const PotentialCandidate c = build_via_path_sum(g);
  EXPECT_EQ(c(P({0, 0, 0, 0})), 0.0);
  EXPECT_EQ(c(P({1, 1, 1, 1})), 22.0);
  EXPECT_EQ(c(P({2, 1, 1, 1})) - c(P({1, 1, 1, 1})), 2.0);
  EXPECT_EQ(g.evaluate(0, P({2, 1, 1, 1})) - g.evaluate(0, P({1, 1, 1, 1})), 2.0);
}

TEST(PathSum, ZeroGame) {
  const Game g = make_zero_game(ActionSpace::uniform(3, 1, -1, 1));
  const PotentialCandidate c = build_via_path_sum(g);
  for (const auto& x : GridSampler(g.space()).profiles()) EXPECT_EQ(c(x), 0.0);
}

TEST(ReversedPath, RefusedOnAsymmetricBox) {
  try {
    build_via_reversed_path(cournot(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRefused);
  }
}

TEST(ReversedPath, AgreesWithPathSumOnSymmetricBox) {
  const Game g = recentred(cournot(4));
  const PotentialCandidate hp = build_via_path_sum(g);
  const PotentialCandidate t6 = build_via_reversed_path(g);
  EXPECT_EQ(t6(g.space().base()), 0.0);
  for (const auto& x : GridSampler(g.space().with_resolution(4)).profiles()) {
    EXPECT_NEAR(hp(x), t6(x), 1e-9);
  }
}

TEST(ReversedPath, ThreeFirmValueAtOnes) {
  // Zero base on a box symmetric about it.
  CournotParams p;
  p.box = std::make_pair(-4.0, 4.0);
  p.base = P({0, 0, 0});
  const Game g = make_cournot(p).base();
  EXPECT_EQ(build_via_reversed_path(g)(P({1, 1, 1})), 18.0);
  EXPECT_EQ(build_via_path_sum(g)(P({1, 1, 1})), 18.0);
}

TEST(ReversedPath, ZeroGame) {
  const Game g = make_zero_game(ActionSpace::uniform(2, 1, -1, 1));
  const PotentialCandidate c = build_via_reversed_path(g);
  for (const auto& x : GridSampler(g.space()).profiles()) EXPECT_EQ(c(x), 0.0);
}

TEST(Pairs, MatchesFourFirmClosedForm) {
  const Game g = cournot(4);
  const PotentialCandidate c = build_via_pairs(g);
  for (const auto& x : GridSampler(g.space().with_resolution(4)).profiles()) {
    const std::vector<double> v(x.coords().begin(), x.coords().end());
    EXPECT_NEAR(c(x), oracle::cournot_prefix_potential(10, 1, 2, v), 1e-9);
    EXPECT_NEAR(c(x), oracle::cournot_quadratic_potential(10, 1, 2, v), 1e-9);
  }
  EXPECT_EQ(c(P({1, 1, 1, 1})), 22.0);
}

TEST(Pairs, ZeroGameThreePlayers) {
  const Game g = make_zero_game(ActionSpace::uniform(3, 1, 0, 1));
  const PotentialCandidate c = build_via_pairs(g);
  for (const auto& x : GridSampler(g.space()).profiles()) EXPECT_EQ(c(x), 0.0);
}

TEST(Pairs, OddAndEvenPlayerCountsMatchPathSum) {
  for (std::size_t n = 2; n <= 7; ++n) {
    const Game g = cournot(n);
    const PotentialCandidate t8 = build_via_pairs(g);
    const PotentialCandidate hp = build_via_path_sum(g);
    const GridSampler s(g.space().with_resolution(3));
    for (std::uint64_t k = 0; k < s.profile_count(); k += 7) {
      const ActionProfile x = s.profile(k);
      EXPECT_NEAR(t8(x), hp(x), 1e-9) << "N=" << n;
    }
  }
}

TEST(Validate, AttachesDefinitionResidual) {
  const Game g = cournot(3);
  PotentialCandidate c = build_via_pairs(g);
  EXPECT_FALSE(c.validated());
  validate(c, g, GridSampler(g.space()));
  ASSERT_TRUE(c.validation());
  EXPECT_TRUE(c.validated());
  EXPECT_LE(c.validation()->max_residual, 1e-9);
}

TEST(CrossValidate, FourFirmRoutesAgree) {
  const Game g = cournot(4);
  std::vector<PotentialCandidate> cands = {build_via_path_sum(g),
                                           build_via_pairs(g)};
  const CrossValidation cv =
      cross_validate(cands, g, GridSampler(g.space().with_resolution(4)));
  EXPECT_LE(cv.max_deviation, 1e-9);
  EXPECT_EQ(cv.validated, (std::vector<bool>{true, true}));
  EXPECT_EQ(cv.samples, 256u);
}

TEST(CrossValidate, ZeroGame) {
  const Game g = make_zero_game(ActionSpace::uniform(2, 1, -1, 1));
  std::vector<PotentialCandidate> cands = {build_via_path_sum(g),
                                           build_via_reversed_path(g),
                                           build_via_pairs(g)};
  const CrossValidation cv = cross_validate(cands, g, GridSampler(g.space()));
  EXPECT_EQ(cv.max_deviation, 0.0);
}

TEST(CrossValidate, HeterogeneousEveryRouteUnvalidated) {
  const Game g = recentred(cournot(2, {2, 1}));
  std::vector<PotentialCandidate> cands = {build_via_path_sum(g),
                                           build_via_reversed_path(g),
                                           build_via_pairs(g)};
  const CrossValidation cv = cross_validate(cands, g, GridSampler(g.space()));
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_FALSE(cv.validated[k]);
    EXPECT_GT(cv.definition_residual[k], 1e-3);
  }
}

TEST(CrossValidate, NeedsTwoCandidates) {
  const Game g = cournot(2);
  std::vector<PotentialCandidate> one = {build_via_path_sum(g)};
  EXPECT_THROW(cross_validate(one, g, GridSampler(g.space())), Error);
}

TEST(Nash, RefusesUnvalidatedCandidate) {
  const Game g = cournot(2, {2, 1});
  const PotentialCandidate c = build_via_path_sum(g);
  try {
    nash_candidates(c, g, GridSampler(g.space()), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRefused);
  }
}

TEST(Nash, ZeroGameReturnsLexicographicallyFirst) {
  const Game g = make_zero_game(ActionSpace::uniform(2, 1, 0, 1).with_resolution(3));
  PotentialCandidate c = build_via_path_sum(g);
  const GridSampler s(g.space());
  validate(c, g, s);
  const auto top = nash_candidates(c, g, s, 3);
  ASSERT_EQ(top.size(), 3u);
  EXPECT_EQ(top[0].profile, P({0, 0}));
  EXPECT_EQ(top[1].profile, P({0, 0.5}));
  EXPECT_EQ(top[2].profile, P({0, 1}));
}

TEST(Nash, SinglePlayerQuadratic) {
  // The second player is frozen and has a constant payoff.
  const ActionSpace space =
      ActionSpace(2, 1, {0, 0}, {2, 0}).with_resolution({5, 1});
  const Game g(space.with_base(P({0, 0})),
               {PayoffOracle([](const ActionProfile& x) {
                  return (x[0] - 1) * (x[0] - 1);
                }),
                PayoffOracle([](const ActionProfile&) { return 0.0; })});
  PotentialCandidate c = build_via_path_sum(g);
  const GridSampler s(g.space());
  validate(c, g, s);
  const auto top = nash_candidates(c, g, s, 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].profile, P({1.0, 0}));
}

TEST(Nash, TwoPlayerQuadraticNearStationaryPoint) {
  // f_i = x_i^2 + x_i x_j - 8 x_i; phi = x1^2 + x2^2 + x1 x2 - 8 x1 - 8 x2,
  // grad phi = 0 at (8/3, 8/3).
  const ActionSpace space = ActionSpace::uniform(2, 1, 0, 8).with_resolution(49);
  const auto f = [](std::size_t i) {
    return PayoffOracle([i](const ActionProfile& x) {
      return x[i] * x[i] + x[0] * x[1] - 8 * x[i];
    });
  };
  const Game g(space.with_base(P({0, 0})), {f(0), f(1)});
  PotentialCandidate c = build_via_pairs(g);
  const GridSampler s(g.space());
  validate(c, g, s);
  ASSERT_TRUE(c.validated());
  const auto top = nash_candidates(c, g, s, 1);
  ASSERT_EQ(top.size(), 1u);
  const double star = 8.0 / 3.0;
  const double step = 8.0 / 48.0;
  EXPECT_LE(std::fabs(top[0].profile[0] - star), step / 2);
  EXPECT_LE(std::fabs(top[0].profile[1] - star), step / 2);
}

}  // namespace
}  // namespace potgame
