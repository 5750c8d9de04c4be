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

// Arithmetic payoff expressions:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' ['-'] INTEGER)?
//   primary := NUMBER | 'x_<player>_<coord>' | 'xbar' | '(' expr ')'
//
// Players and coordinates are 1-based in the text. 'xbar' is the sum of all
// players' scalar actions. Trees are immutable and share structure.

#ifndef POTGAME_CORE_EXPRESSION_HPP_
#define POTGAME_CORE_EXPRESSION_HPP_

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/game.hpp"

namespace potgame {

enum class NodeKind { kNumber, kVariable, kAggregate, kNeg, kAdd, kSub, kMul, kDiv, kPow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  double number = 0.0;      // kNumber (non-negative, finite)
  std::size_t player = 0;   // kVariable, 0-based
  std::size_t coord = 0;    // kVariable, 0-based
  int exponent = 0;         // kPow
  ExprPtr lhs{};            // operand of unary nodes, left of binary nodes
  ExprPtr rhs{};
};

namespace expr {
ExprPtr number(double v);
ExprPtr variable(std::size_t player, std::size_t coord);
ExprPtr aggregate();
ExprPtr neg(ExprPtr operand);
ExprPtr binary(NodeKind kind, ExprPtr lhs, ExprPtr rhs);
ExprPtr power(ExprPtr base, int exponent);
}  // namespace expr

// Divisors smaller than this in magnitude are an evaluation error.
inline constexpr double kMinDivisor = 1e-12;

class CompiledExpression;

class Expression {
 public:
  explicit Expression(ExprPtr root);

  // `line` and `column` locate the first character for diagnostics.
  static Expression parse(std::string_view text, std::size_t line = 1,
                          std::size_t column = 1);

  const ExprNode& root() const { return *root_; }
  ExprPtr root_ptr() const { return root_; }

  // Canonical, fully parenthesized text that parses back to the same tree.
  std::string to_string() const;

  // Reference evaluation by recursive tree walk.
  double evaluate_tree(const ActionProfile& x) const;

  // Distinct (player, coord) pairs referenced, 0-based, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> variables() const;
  bool uses_aggregate() const;

  CompiledExpression compile() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  ExprPtr root_;
};

// Flat postfix program; the evaluator used by payoff oracles.
class CompiledExpression {
 public:
  double evaluate(const ActionProfile& x) const;
  // Reduced form: variables of `player` read from `own`, xbar reads
  // aggregate[0]. Other players' variables are an error.
  double evaluate_reduced(std::size_t player, std::span<const double> own,
                          double aggregate) const;

  std::size_t size() const { return code_.size(); }

 private:
  friend class Expression;

  enum class Op { kPush, kVar, kAgg, kNeg, kAdd, kSub, kMul, kDiv, kPow };
  struct Instr {
    Op op;
    double value = 0.0;
    std::size_t player = 0;
    std::size_t coord = 0;
    int exponent = 0;
  };

  template <class VarFn, class AggFn>
  double run(const VarFn& var, const AggFn& agg) const;

  std::vector<Instr> code_;
  std::size_t max_depth_ = 0;
};

// x^e for integer e by binary powering, shared by both evaluators.
double integer_power(double base, int exponent);

}  // namespace potgame

#endif  // POTGAME_CORE_EXPRESSION_HPP_
