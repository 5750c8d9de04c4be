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

#include <string>

#include "core/error.hpp"
#include "core/spec.hpp"
#include "oracles.hpp"

namespace potgame {
namespace {

ActionProfile P(std::vector<double> v) { return ActionProfile::scalar(std::move(v)); }

std::string fixture(const char* name) {
  return std::string(POTGAME_FIXTURE_DIR) + "/" + name;
}

std::string semantic_message(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    ADD_FAILURE() << "parse error instead of semantic error: " << e.what();
    return "";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSemantic) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return "";
}

ParseError parse_failure(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e;
  } catch (const Error& e) {
    ADD_FAILURE() << "not a parse error: " << e.what();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return ParseError(0, 0, "");
}

TEST(Spec, ThreeFirmExpressionSpec) {
  const GameSpec spec = load_spec_file(fixture("cournot3.spec"));
  EXPECT_EQ(spec.players, 3u);
  EXPECT_EQ(spec.grid, 5u);
  EXPECT_EQ(spec.seed, 1u);
  const LoadedGame g = instantiate(spec);
  EXPECT_EQ(g.source, "expression");
  EXPECT_EQ(g.game.evaluate(0, P({1, 1, 1})), 5.0);
  EXPECT_EQ(g.game.evaluate(0, P({1, 1, 1})),
            oracle::cournot_payoff(10, {1}, 2, {1, 1, 1}, 0));
  ASSERT_TRUE(g.aggregative);
  EXPECT_EQ(g.aggregative->evaluate_reduced(2, P({1, 2, 3})),
            g.game.evaluate(2, P({1, 2, 3})));
  EXPECT_EQ(g.game.space().base(), P({0, 0, 0}));
  EXPECT_EQ(g.game.space().resolution(0), 5u);
}

TEST(Spec, GeneratorCournot) {
  const LoadedGame g =
      instantiate(parse_spec("generator: cournot N=4 A=10 B=1 C=2\n"));
  EXPECT_EQ(g.game.players(), 4u);
  EXPECT_EQ(g.source, "generator:cournot");
  EXPECT_EQ(g.game.evaluate(0, P({2, 1, 1, 1})), 6.0);
  EXPECT_TRUE(g.aggregative);
}

TEST(Spec, EmptyPayoffSection) {
  EXPECT_NE(semantic_message("players: 2\nbox: 0 1\n")
                .find("missing payoff for player 1"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\nbox: 0 1\npayoff 1: 1\n")
                .find("missing payoff for player 2"),
            std::string::npos);
}

TEST(Spec, SemanticErrors) {
  EXPECT_NE(semantic_message("players: 2\nbox: 0 1\npayoff 1: x_3_1\npayoff 2: 0\n")
                .find("unknown variable x_3_1"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\nbox: 0 1\npayoff 1: x_1_2\npayoff 2: 0\n")
                .find("unknown variable x_1_2"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\nbox: 1 0\npayoff 1: 0\npayoff 2: 0\n")
                .find("inverted"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\npayoff 1: 0\npayoff 2: 0\n")
                .find("no box"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\nbox: 0 1\npayoff 1: 0\npayoff 1: 1\n"
                             "payoff 2: 0\n")
                .find("second payoff"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\nbox: 0 1\npayoff 1: 0\npayoff 3: 0\n")
                .find("payoff for player 3"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\ndims: 2\nbox: 0 1\npayoff 1: xbar\n"
                             "payoff 2: 0\n")
                .find("xbar"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\nbox: 0 1\naggregator: sum\n"
                             "payoff 1: x_2_1\npayoff 2: 0\n")
                .find("own variables"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 2\nplayers: 3\n").find("already set"),
            std::string::npos);
  EXPECT_NE(semantic_message("payoff 1: 0\n").find("players"), std::string::npos);
  EXPECT_NE(semantic_message("players: 2\nbox: 0 1\nbase: 1\npayoff 1: 0\n"
                             "payoff 2: 0\n")
                .find("base has 1 values"),
            std::string::npos);
  EXPECT_NE(semantic_message("generator: cournot N=2\npayoff 1: 0\n")
                .find("generator"),
            std::string::npos);
  EXPECT_NE(semantic_message("generator: nope\n").find("unknown generator"),
            std::string::npos);
  EXPECT_NE(semantic_message("generator: cournot M=2\n").find("no parameter"),
            std::string::npos);
  EXPECT_NE(semantic_message("players: 3\ngenerator: cournot N=2\n")
                .find("disagrees"),
            std::string::npos);
}

TEST(Spec, SyntaxErrorsCarryPosition) {
  {
    const ParseError e = parse_failure("players: 2\nbox: 0 1\npayoff 1: (x_1_1 +\n");
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 19u);
    EXPECT_FALSE(e.expected().empty());
  }
  {
    const ParseError e = parse_failure("players 2\n");
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 10u);
    EXPECT_EQ(e.expected(), std::vector<std::string>{"':'"});
  }
  {
    const ParseError e = parse_failure("# comment\n  colour: red\n");
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_GT(e.expected().size(), 5u);
  }
  {
    const ParseError e = parse_failure("players: two\n");
    EXPECT_EQ(e.column(), 10u);
  }
  {
    const ParseError e = parse_failure("players: 2\nbox: 0\n");
    EXPECT_EQ(e.line(), 2u);
  }
  {
    const ParseError e = parse_failure("aggregator: max\n");
    EXPECT_EQ(e.expected(), (std::vector<std::string>{"sum", "none"}));
  }
  {
    const ParseError e = parse_failure("generator: cournot N4\n");
    EXPECT_EQ(e.column(), 20u);
  }
  const std::string message = parse_failure("players: 2\nbox: 0 1\npayoff 1: 1 +\n").what();
  EXPECT_EQ(message.rfind("3:", 0), 0u) << message;
}

TEST(Spec, BoxOverridesAndBaseModes) {
  const GameSpec spec = parse_spec(
      "players: 2\ndims: 2\nbox: 0 4\nbox 2: -1 1\nbox 2 1: 5 5\n"
      "base: midpoint\npayoff 1: 0\npayoff 2: 0\n");
  const LoadedGame g = instantiate(spec);
  const ActionSpace& s = g.game.space();
  EXPECT_EQ(s.upper(0, 0), 4.0);
  EXPECT_EQ(s.lower(1, 1), -1.0);
  EXPECT_TRUE(s.frozen(2));
  EXPECT_EQ(s.base(), ActionProfile(2, 2, {2, 2, 5, 0}));

  const LoadedGame lower = instantiate(parse_spec(
      "players: 2\nbox: 1 3\nbase: lower\npayoff 1: 0\npayoff 2: 0\n"));
  EXPECT_EQ(lower.game.space().base(), P({1, 1}));
  const LoadedGame deflt = instantiate(parse_spec(
      "players: 2\nbox: 1 3\npayoff 1: 0\npayoff 2: 0\n"));
  EXPECT_EQ(deflt.game.space().base(), P({2, 2}));
  const LoadedGame expl = instantiate(parse_spec(
      "players: 2\nbox: 1 3\nbase: 1.5 3\npayoff 1: 0\npayoff 2: 0\n"));
  EXPECT_EQ(expl.game.space().base(), P({1.5, 3}));
  try {
    instantiate(parse_spec("players: 2\nbox: 1 3\nbase: 0 0\npayoff 1: 0\npayoff 2: 0\n"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBounds);
  }
}

TEST(Spec, SettingsAndComments) {
  const GameSpec spec = parse_spec(
      "players: 2 # two\r\nbox: 0 1\n\n   \ntol: 1e-8\nrel_tol: 0\nbudget: 77\n"
      "payoff 1: x_1_1 # own\npayoff 2: x_2_1\n");
  EXPECT_EQ(spec.abs_tol, 1e-8);
  EXPECT_EQ(spec.rel_tol, 0.0);
  EXPECT_EQ(spec.budget, 77u);
  EXPECT_EQ(spec.payoffs.size(), 2u);
  EXPECT_EQ(spec.payoffs[0].to_string(), "x_1_1");
}

TEST(Spec, PayoffsMayPrecedePlayers) {
  const GameSpec spec =
      parse_spec("payoff 2: x_2_1\npayoff 1: x_1_1\nplayers: 2\nbox: 0 1\n");
  EXPECT_EQ(spec.payoffs[0].to_string(), "x_1_1");
  EXPECT_EQ(spec.payoffs[1].to_string(), "x_2_1");
}

TEST(Spec, EveryGeneratorRoundTripsThroughSpecText) {
  for (const auto& [name, params] : generator_catalog()) {
    const std::string text = generator_spec_text(name, {});
    const LoadedGame g = instantiate(parse_spec(text));
    EXPECT_EQ(g.source, "generator:" + name);
    EXPECT_EQ(generator_spec_text(name, {}), text);
  }
  const std::string text =
      generator_spec_text("abnormal", {{"N", "4"}, {"dead", "2"}});
  EXPECT_NE(text.find("dead=2"), std::string::npos);
  const LoadedGame g = instantiate(parse_spec(text));
  EXPECT_EQ(g.game.players(), 4u);
  EXPECT_EQ(g.game.evaluate(1, P({1, 0, 2, 3})), 14.0);
}

TEST(Spec, GeneratorParameterErrors) {
  EXPECT_THROW(generator_spec_text("cournot", {{"B", "x"}}), Error);
  EXPECT_THROW(generator_spec_text("cournot", {{"lo", "0"}}), Error);
  EXPECT_THROW(generator_spec_text("abnormal", {{"dead", "4"}}), Error);
  EXPECT_THROW(generator_spec_text("random", {{"symmetric", "2"}}), Error);
  EXPECT_THROW(generator_spec_text("zero", {{"lo", "2"}}), Error);
  try {
    generator_spec_text("cournot", {{"N", "1"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSemantic);
  }
}

TEST(Spec, GeneratorGridAndBaseOverrides) {
  const LoadedGame g = instantiate(parse_spec(
      "generator: cournot N=2 B=2,1 C=0 lo=0 hi=4\ngrid: 5\nbase: midpoint\n"));
  EXPECT_EQ(g.game.space().resolution(1), 5u);
  EXPECT_EQ(g.game.space().base(), P({2, 2}));
  EXPECT_EQ(g.aggregative->base().space().base(), P({2, 2}));
  const LoadedGame off = instantiate(parse_spec("generator: cournot N=2 lo=1 hi=3\n"));
  EXPECT_EQ(off.game.space().base(), P({2, 2}));
  const LoadedGame plain =
      instantiate(parse_spec("generator: cournot\naggregator: none\n"));
  EXPECT_FALSE(plain.aggregative);
  EXPECT_EQ(semantic_message("generator: product\naggregator: sum\n").empty(), false);
}

TEST(Spec, VectorActionFixture) {
  const LoadedGame g = instantiate(load_spec_file(fixture("vector_actions.spec")));
  EXPECT_EQ(g.game.dims(), 2u);
  EXPECT_EQ(g.game.evaluate(1, ActionProfile(2, 2, {1, 0, 1, 2})), 2.0 - 0.25);
}

TEST(Spec, MissingFileIsIoError) {
  try {
    load_spec_file("/nonexistent/game.spec");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace potgame
