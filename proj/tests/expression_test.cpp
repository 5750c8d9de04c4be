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
#include "core/expression.hpp"

namespace potgame {
namespace {

ActionProfile P(std::vector<double> v) { return ActionProfile::scalar(std::move(v)); }

TEST(Expression, CournotPayoffEvaluates) {
  const Expression e = Expression::parse("(10 - 1*xbar)*x_1_1 - 2*x_1_1");
  EXPECT_EQ(e.evaluate_tree(P({1, 1, 1})), 5.0);
  EXPECT_EQ(e.compile().evaluate(P({1, 1, 1})), 5.0);
  EXPECT_TRUE(e.uses_aggregate());
  EXPECT_EQ(e.variables(),
            (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}}));
}

TEST(Expression, Precedence) {
  const ActionProfile x = P({2, 3});
  EXPECT_EQ(Expression::parse("1 + 2 * 3").evaluate_tree(x), 7.0);
  EXPECT_EQ(Expression::parse("(1 + 2) * 3").evaluate_tree(x), 9.0);
  EXPECT_EQ(Expression::parse("-x_1_1^2").evaluate_tree(x), -4.0);
  EXPECT_EQ(Expression::parse("2^-2").evaluate_tree(x), 0.25);
  EXPECT_EQ(Expression::parse("8 / 2 / 2").evaluate_tree(x), 2.0);
  EXPECT_EQ(Expression::parse("8 - 2 - 2").evaluate_tree(x), 4.0);
  EXPECT_EQ(Expression::parse("x_1_1 * x_2_1 ^ 2").evaluate_tree(x), 18.0);
  EXPECT_EQ(Expression::parse("--3").evaluate_tree(x), 3.0);
  EXPECT_EQ(Expression::parse("1.5e1").evaluate_tree(x), 15.0);
}

TEST(Expression, VectorVariables) {
  const Expression e = Expression::parse("x_2_2 - x_1_2");
  const ActionProfile x(2, 2, {1, 2, 3, 7});
  EXPECT_EQ(e.evaluate_tree(x), 5.0);
}

TEST(Expression, DivisionGuard) {
  const Expression e = Expression::parse("1 / (x_1_1 - 1)");
  try {
    e.compile().evaluate(P({1, 0}));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kOracle);
  }
  EXPECT_THROW(e.evaluate_tree(P({1 + 1e-13, 0})), Error);
  const double near_one = 1 + 1e-11;
  EXPECT_EQ(e.evaluate_tree(P({near_one, 0})), 1.0 / (near_one - 1.0));
  EXPECT_THROW(Expression::parse("x_1_1^-1").evaluate_tree(P({0, 0})), Error);
}

TEST(Expression, AggregateNeedsScalarActions) {
  const Expression e = Expression::parse("xbar");
  EXPECT_THROW(e.evaluate_tree(ActionProfile(2, 2, {1, 2, 3, 4})), Error);
}

TEST(Expression, ReducedEvaluation) {
  const CompiledExpression c =
      Expression::parse("(10 - xbar) * x_2_1").compile();
  const double own = 2;
  EXPECT_EQ(c.evaluate_reduced(1, {&own, 1}, 6), 8.0);
  EXPECT_THROW(c.evaluate_reduced(0, {&own, 1}, 6), Error);
}

struct BadInput {
  const char* text;
  std::size_t column;
};

class ParseErrors : public ::testing::TestWithParam<BadInput> {};

TEST_P(ParseErrors, ReportPositionAndExpectations) {
  try {
    Expression::parse(GetParam().text, 3, 10);
    FAIL() << GetParam().text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), GetParam().column) << GetParam().text;
    EXPECT_FALSE(e.expected().empty());
  }
}

INSTANTIATE_TEST_SUITE_P(
    Expression, ParseErrors,
    ::testing::Values(BadInput{"", 10}, BadInput{"1 +", 13},
                      BadInput{"(1 + 2", 16}, BadInput{"x_0_1", 10},
                      BadInput{"y + 1", 10}, BadInput{"2 ^ 1.5", 15},
                      BadInput{"2 ^ x_1_1", 14}, BadInput{"1 2", 12},
                      BadInput{"3 $ 4", 12}, BadInput{"x_1", 10}));

TEST(Expression, PrintIsCanonicalAndReparses) {
  const Expression e = Expression::parse("-(x_1_1 + 2)^3 / xbar - 0.1");
  const std::string text = e.to_string();
  EXPECT_EQ(text,
            "(((-((x_1_1 + 2)^3)) / xbar) - 0.10000000000000001)");
  EXPECT_TRUE(Expression::parse(text) == e);
  EXPECT_EQ(Expression::parse(text).to_string(), text);
}

TEST(Expression, IntegerPower) {
  EXPECT_EQ(integer_power(3, 0), 1.0);
  EXPECT_EQ(integer_power(-2, 5), -32.0);
  EXPECT_EQ(integer_power(2, -3), 0.125);
  EXPECT_THROW(integer_power(0, -1), Error);
}

TEST(Expression, FactoriesRejectBadLiterals) {
  EXPECT_THROW(expr::number(-1), Error);
  EXPECT_THROW(expr::number(std::nan("")), Error);
  EXPECT_THROW(expr::binary(NodeKind::kNeg, expr::number(1), expr::number(1)),
               Error);
}

}  // namespace
}  // namespace potgame
