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

// Randomized invariants. Each generator is seeded, so failures reproduce.

#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include "core/checkers.hpp"
#include "core/error.hpp"
#include "core/expression.hpp"
#include "core/path.hpp"
#include "core/potential.hpp"
#include "core/rng.hpp"
#include "core/zoo.hpp"
#include "oracles.hpp"

namespace potgame {
namespace {

constexpr int kCases = 40;

// Random polynomial phi of degree <= 3 in N scalar actions plus, for every
// player, a term that ignores their own action. f_i = phi + d_i(x_-i) is an
// exact potential game with potential phi.
struct PolyTerm {
  double coef;
  std::vector<int> power;  // per player
};

struct RandomPotentialGame {
  std::vector<PolyTerm> phi;
  std::vector<std::vector<PolyTerm>> dummy;
  Game game;
};

double eval_terms(const std::vector<PolyTerm>& terms, const ActionProfile& x) {
  double s = 0.0;
  for (const PolyTerm& t : terms) {
    double v = t.coef;
    for (std::size_t p = 0; p < t.power.size(); ++p) {
      v *= integer_power(x[p], t.power[p]);
    }
    s += v;
  }
  return s;
}

std::vector<PolyTerm> random_terms(SplitMix64& rng, std::size_t players,
                                   std::size_t count, std::size_t skip) {
  std::vector<PolyTerm> out;
  for (std::size_t k = 0; k < count; ++k) {
    PolyTerm t{rng.uniform(-2, 2), std::vector<int>(players, 0)};
    for (std::size_t p = 0; p < players; ++p) {
      if (p != skip) t.power[p] = static_cast<int>(rng.below(3));
    }
    out.push_back(t);
  }
  return out;
}

RandomPotentialGame random_potential_game(std::uint64_t seed,
                                          std::size_t players,
                                          std::size_t resolution) {
  SplitMix64 rng(seed);
  auto phi = random_terms(rng, players, 4, players);
  std::vector<std::vector<PolyTerm>> dummy;
  std::vector<PayoffOracle> payoffs;
  for (std::size_t i = 0; i < players; ++i) {
    dummy.push_back(random_terms(rng, players, 2, i));
    payoffs.emplace_back([phi, d = dummy.back()](const ActionProfile& x) {
      return eval_terms(phi, x) + eval_terms(d, x);
    });
  }
  Game g(ActionSpace::uniform(players, 1, -1, 1).with_resolution(resolution),
         std::move(payoffs), "poly");
  return {phi, dummy, std::move(g)};
}

// f_i = x_i * (sum_j a_ij x_j) with a random, generally asymmetric a.
Game random_bilinear_game(std::uint64_t seed, std::size_t players,
                          std::size_t resolution, bool symmetric) {
  SplitMix64 rng(seed);
  std::vector<std::vector<double>> a(players, std::vector<double>(players));
  for (auto& row : a) {
    for (double& v : row) v = std::round(rng.uniform(-4, 4));
  }
  if (symmetric) {
    for (std::size_t i = 0; i < players; ++i) {
      for (std::size_t j = 0; j < i; ++j) a[i][j] = a[j][i];
    }
  } else {
    a[0][1] = a[1][0] + 1;
  }
  std::vector<PayoffOracle> payoffs;
  for (std::size_t i = 0; i < players; ++i) {
    payoffs.emplace_back([a, i](const ActionProfile& x) {
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += a[i][j] * x[j];
      return x[i] * s;
    });
  }
  return Game(ActionSpace::uniform(players, 1, 0, 2).with_resolution(resolution),
              std::move(payoffs), "bilinear");
}

ActionProfile random_grid_profile(SplitMix64& rng, const GridSampler& s) {
  return s.profile(rng.below(s.profile_count()));
}

// Random unilateral-deviation path of `steps` steps over the grid.
std::vector<ActionProfile> random_walk(SplitMix64& rng, const GridSampler& s,
                                       std::size_t steps) {
  std::vector<ActionProfile> v{random_grid_profile(rng, s)};
  while (v.size() <= steps) {
    ActionProfile next = v.back();
    const std::size_t i = rng.below(next.players());
    s.write_block(next, i, rng.below(s.block_count(i)));
    if (next != v.back()) v.push_back(next);
  }
  return v;
}

TEST(Property, ReversalNegatesPathSum) {
  for (int c = 0; c < kCases; ++c) {
    const Game g = random_bilinear_game(c, 3, 5, false);
    const GridSampler s(g.space());
    SplitMix64 rng(1000 + c);
    const Path p = Path::from_vertices(random_walk(rng, s, 1 + rng.below(6)));
    EXPECT_NEAR(path_sum(g, p.reversed()), -path_sum(g, p), 1e-12) << c;
    EXPECT_NEAR(path_sum(g, p), oracle::path_integral(g, p.vertices()), 1e-12);
  }
}

TEST(Property, ConcatenationIsAdditive) {
  for (int c = 0; c < kCases; ++c) {
    const Game g = random_bilinear_game(c, 3, 5, false);
    const GridSampler s(g.space());
    SplitMix64 rng(2000 + c);
    const auto a = random_walk(rng, s, 1 + rng.below(5));
    std::vector<ActionProfile> b{a.back()};
    while (b.size() < 4) {
      ActionProfile next = b.back();
      const std::size_t i = rng.below(3);
      s.write_block(next, i, rng.below(s.block_count(i)));
      if (next != b.back()) b.push_back(next);
    }
    const Path pa = Path::from_vertices(a), pb = Path::from_vertices(b);
    EXPECT_NEAR(path_sum(g, pa.concatenated(pb)),
                path_sum(g, pa) + path_sum(g, pb), 1e-12);
  }
}

TEST(Property, ZeroDisplacementHasZeroPathSum) {
  for (int c = 0; c < kCases; ++c) {
    const Game g = random_bilinear_game(c, 4, 3, false);
    const GridSampler s(g.space());
    SplitMix64 rng(3000 + c);
    const ActionProfile z = random_grid_profile(rng, s);
    EXPECT_EQ(h_p(g, ActionProfile::zeros(4, 1), z), 0.0);
    EXPECT_EQ(h_path(g, z, z), 0.0);
  }
}

TEST(Property, CycleCheckerAgreesWithBruteForce) {
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = 2 + c % 2;
    const std::size_t actions = 2 + (c / 2) % 2;
    const Game random = make_random_finite(n, actions, 500 + c);
    const Game ident = make_identical_interest(random, c % n);
    for (const Game* g : {&random, &ident}) {
      const GridSampler s(g->space());
      const CheckReport r = check_four_cycles(*g, s);
      const oracle::BruteForce bf = oracle::brute_force_potential(*g);
      EXPECT_EQ(r.verdict == Verdict::kPotential, bf.potential) << c;
      EXPECT_NE(r.verdict, Verdict::kInconclusive);
    }
  }
}

TEST(Property, CheckersAgreeOnPolynomialGames) {
  for (int c = 0; c < kCases / 2; ++c) {
    const std::size_t n = 2 + c % 3;
    const std::size_t res = n == 4 ? 3 : 4;
    const RandomPotentialGame pot = random_potential_game(c, n, res);
    const Game bad = random_bilinear_game(c, n, res, false);
    const Game good = random_bilinear_game(c, n, res, true);
    const Tolerances tol;
    for (const Game* g : {&pot.game, &bad, &good}) {
      const GridSampler s(g->space());
      const bool expected = oracle::brute_force_potential(*g).potential;
      EXPECT_EQ(expected, g != &bad) << c;
      const Verdict want = expected ? Verdict::kPotential : Verdict::kNotPotential;
      EXPECT_EQ(check_four_cycles(*g, s, tol).verdict, want) << c;
      EXPECT_EQ(check_pairwise(*g, s, tol).verdict, want) << c;
      EXPECT_EQ(check_definition(*g, build_via_path_sum(*g).evaluator(), s, tol)
                    .verdict,
                want)
          << c;
      EXPECT_EQ(check_cross_partials(*g, s, tol).verdict, want) << c;
    }
  }
}

TEST(Property, PathSumMatchesBruteForcePotential) {
  for (int c = 0; c < kCases / 2; ++c) {
    const RandomPotentialGame pot = random_potential_game(100 + c, 3, 4);
    const oracle::BruteForce bf = oracle::brute_force_potential(pot.game);
    ASSERT_TRUE(bf.potential);
    const auto axes = oracle::grid_axes(pot.game.space());
    const PotentialCandidate hp = build_via_path_sum(pot.game);
    const std::vector<std::size_t> origin(3, 0);
    const ActionProfile corner = oracle::at(pot.game.space(), axes, origin);
    for (const auto& [idx, value] : bf.phi) {
      const ActionProfile z = oracle::at(pot.game.space(), axes, idx);
      EXPECT_NEAR(hp(z) - hp(corner), value, 1e-9);
      EXPECT_NEAR(hp(z) - hp(corner),
                  eval_terms(pot.phi, z) - eval_terms(pot.phi, corner), 1e-9);
    }
  }
}

TEST(Property, RefinementKeepsRefutation) {
  for (int c = 0; c < kCases / 2; ++c) {
    const Game coarse = random_bilinear_game(c, 3, 3, false);
    const Game fine = coarse.with_space(coarse.space().with_resolution(5));
    const CheckReport a = check_four_cycles(coarse, GridSampler(coarse.space()));
    const CheckReport b = check_four_cycles(fine, GridSampler(fine.space()));
    ASSERT_EQ(a.verdict, Verdict::kNotPotential);
    EXPECT_EQ(b.verdict, Verdict::kNotPotential);
    EXPECT_GE(b.max_residual, a.max_residual - 1e-12);
    const RandomPotentialGame pot = random_potential_game(c, 3, 3);
    const Game pfine = pot.game.with_space(pot.game.space().with_resolution(5));
    EXPECT_EQ(check_four_cycles(pfine, GridSampler(pfine.space())).verdict,
              Verdict::kPotential);
  }
}

TEST(Property, OthersOnlyShiftLeavesResidualsUnchanged) {
  for (int c = 0; c < kCases / 2; ++c) {
    const Game g = random_bilinear_game(c, 3, 4, c % 2 == 0);
    std::vector<PayoffOracle> shifted;
    for (std::size_t i = 0; i < 3; ++i) {
      shifted.emplace_back([g, i](const ActionProfile& x) {
        double others = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
          if (j != i) others += 3.0 * x[j] * x[j] - x[j];
        }
        return g.evaluate(i, x) + others;
      });
    }
    const Game h(g.space(), std::move(shifted));
    const GridSampler s(g.space());
    const CheckReport a = check_four_cycles(g, s), b = check_four_cycles(h, s);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_NEAR(a.max_residual, b.max_residual, 1e-9);
    const CheckReport pa = check_pairwise(g, s), pb = check_pairwise(h, s);
    EXPECT_EQ(pa.verdict, pb.verdict);
    EXPECT_NEAR(pa.max_residual, pb.max_residual, 1e-9);
  }
}

TEST(Property, ThreadCountDoesNotChangeReports) {
  for (int c = 0; c < 8; ++c) {
    const Game g = random_bilinear_game(c, 3, 4, c % 2 == 0);
    SamplingConfig one, many;
    one.seed = many.seed = c;
    one.budget = many.budget = 500;
    many.threads = 4;
    const GridSampler s1(g.space(), one), s4(g.space(), many);
    EXPECT_EQ(to_json(check_four_cycles(g, s1)).dump(),
              to_json(check_four_cycles(g, s4)).dump());
    EXPECT_EQ(to_json(check_pairwise(g, s1)).dump(),
              to_json(check_pairwise(g, s4)).dump());
    EXPECT_EQ(to_json(check_cross_partials(g, s1)).dump(),
              to_json(check_cross_partials(g, s4)).dump());
    EXPECT_EQ(to_json(check_functional_equation(g, s1)).dump(),
              to_json(check_functional_equation(g, s4)).dump());
    const PotentialFn hp = build_via_path_sum(g).evaluator();
    EXPECT_EQ(to_json(check_definition(g, hp, s1)).dump(),
              to_json(check_definition(g, hp, s4)).dump());
  }
}

ExprPtr random_tree(SplitMix64& rng, int depth, std::size_t players) {
  const std::uint64_t pick = depth <= 0 ? rng.below(3) : rng.below(9);
  switch (pick) {
    case 0: return expr::number(static_cast<double>(rng.below(40)) / 4.0);
    case 1: return expr::variable(rng.below(players), 0);
    case 2: return expr::aggregate();
    case 3: return expr::neg(random_tree(rng, depth - 1, players));
    case 4:
      return expr::power(random_tree(rng, depth - 1, players),
                         static_cast<int>(rng.below(5)) - 1);
    default: {
      static constexpr NodeKind ops[] = {NodeKind::kAdd, NodeKind::kSub,
                                         NodeKind::kMul, NodeKind::kDiv};
      return expr::binary(ops[pick - 5], random_tree(rng, depth - 1, players),
                          random_tree(rng, depth - 1, players));
    }
  }
}

TEST(Property, PrintThenParseIsIdentity) {
  SplitMix64 rng(42);
  for (int c = 0; c < 500; ++c) {
    const Expression e(random_tree(rng, 5, 3));
    const std::string text = e.to_string();
    const Expression back = Expression::parse(text);
    EXPECT_TRUE(back == e) << text;
    EXPECT_EQ(back.to_string(), text);
  }
}

TEST(Property, CompiledAgreesWithTreeWalk) {
  SplitMix64 rng(7);
  int compared = 0;
  for (int c = 0; c < 1000; ++c) {
    const Expression e(random_tree(rng, 6, 3));
    const CompiledExpression code = e.compile();
    const ActionProfile x = ActionProfile::scalar(
        {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)});
    double tree = 0.0, compiled = 0.0;
    bool tree_threw = false, compiled_threw = false;
    try {
      tree = e.evaluate_tree(x);
    } catch (const Error&) {
      tree_threw = true;
    }
    try {
      compiled = code.evaluate(x);
    } catch (const Error&) {
      compiled_threw = true;
    }
    ASSERT_EQ(tree_threw, compiled_threw) << e.to_string();
    if (tree_threw) continue;
    if (std::isnan(tree)) {
      EXPECT_TRUE(std::isnan(compiled));
    } else {
      EXPECT_EQ(tree, compiled) << e.to_string();
    }
    ++compared;
  }
  EXPECT_GT(compared, 500);
}

TEST(Property, PairRouteIgnoresAnIdlePlayer) {
  for (int c = 0; c < kCases / 2; ++c) {
    const std::size_t n = 2 + c % 3;
    const RandomPotentialGame pot = random_potential_game(300 + c, n, 3);
    std::vector<PayoffOracle> payoffs;
    for (std::size_t i = 0; i < n; ++i) {
      payoffs.emplace_back([g = pot.game, i, n](const ActionProfile& x) {
        std::vector<double> head(x.coords().begin(), x.coords().begin() + n);
        return g.evaluate(i, ActionProfile::scalar(head));
      });
    }
    payoffs.emplace_back([](const ActionProfile&) { return 1.5; });
    const Game wide(ActionSpace::uniform(n + 1, 1, -1, 1).with_resolution(3),
                    std::move(payoffs));
    const PotentialCandidate narrow_t8 = build_via_pairs(pot.game);
    const PotentialCandidate wide_t8 = build_via_pairs(wide);
    const GridSampler s(wide.space());
    for (std::uint64_t k = 0; k < s.profile_count(); ++k) {
      const ActionProfile z = s.profile(k);
      std::vector<double> head(z.coords().begin(), z.coords().begin() + n);
      EXPECT_NEAR(wide_t8(z), narrow_t8(ActionProfile::scalar(head)), 1e-9);
    }
  }
}

TEST(Property, PotentialGradientMatchesOwnPayoffGradient) {
  const double h = 1e-5;
  for (int c = 0; c < kCases / 2; ++c) {
    const RandomPotentialGame pot = random_potential_game(400 + c, 3, 5);
    const PotentialCandidate hp = build_via_path_sum(pot.game);
    SplitMix64 rng(c);
    for (int t = 0; t < 10; ++t) {
      ActionProfile x = ActionProfile::scalar(
          {rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9), rng.uniform(-0.9, 0.9)});
      for (std::size_t i = 0; i < 3; ++i) {
        ActionProfile up = x, down = x;
        up[i] += h;
        down[i] -= h;
        const double dphi = (hp(up) - hp(down)) / (2 * h);
        const double df =
            (pot.game.evaluate(i, up) - pot.game.evaluate(i, down)) / (2 * h);
        EXPECT_NEAR(dphi, df, 1e-6);
      }
    }
  }
}

TEST(Property, DeviationRoundTripIsExactOnDyadicGrid) {
  const ActionSpace space = ActionSpace::uniform(3, 2, -2, 2).with_resolution(9);
  const GridSampler s(space);
  SplitMix64 rng(11);
  for (int c = 0; c < 200; ++c) {
    const ActionProfile x = random_grid_profile(rng, s);
    const ActionProfile t = random_grid_profile(rng, s);
    const std::size_t i = rng.below(3);
    std::vector<double> y(2), back(2);
    for (std::size_t m = 0; m < 2; ++m) {
      y[m] = t(i, m) - x(i, m);
      back[m] = -y[m];
    }
    const ActionProfile moved = unilateral_deviation(space, x, i, y);
    EXPECT_EQ(unilateral_deviation(space, moved, i, back), x);
  }
}

TEST(Property, CournotReducedFormIsConsistent) {
  SplitMix64 rng(99);
  for (int c = 0; c < 10; ++c) {
    CournotParams p;
    p.players = 2 + rng.below(3);
    p.intercept = rng.uniform(5, 20);
    p.slope.clear();
    for (std::size_t i = 0; i < p.players; ++i) p.slope.push_back(rng.uniform(0.5, 2));
    p.cost = rng.uniform(0, 3);
    p.resolution = 3;
    const AggregativeGame g = make_cournot(p);
    const GridSampler s(g.base().space());
    EXPECT_TRUE(check_aggregative_consistency(g, s).all_consistent());
    for (std::uint64_t k = 0; k < s.profile_count(); ++k) {
      const ActionProfile x = s.profile(k);
      for (std::size_t i = 0; i < p.players; ++i) {
        EXPECT_NEAR(g.base().evaluate(i, x),
                    oracle::cournot_payoff(p.intercept, p.slope, p.cost,
                                           std::vector<double>(x.coords().begin(),
                                                               x.coords().end()),
                                           i),
                    1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace potgame
