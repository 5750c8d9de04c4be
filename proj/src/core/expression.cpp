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

#include "core/expression.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "core/error.hpp"

namespace potgame {

namespace expr {

ExprPtr number(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::kArgument,
                "expression literals are finite and non-negative");
  }
  return std::make_shared<const ExprNode>(ExprNode{NodeKind::kNumber, v});
}

ExprPtr variable(std::size_t player, std::size_t coord) {
  ExprNode n{NodeKind::kVariable};
  n.player = player;
  n.coord = coord;
  return std::make_shared<const ExprNode>(std::move(n));
}

ExprPtr aggregate() {
  return std::make_shared<const ExprNode>(ExprNode{NodeKind::kAggregate});
}

ExprPtr neg(ExprPtr operand) {
  ExprNode n{NodeKind::kNeg};
  n.lhs = std::move(operand);
  return std::make_shared<const ExprNode>(std::move(n));
}

ExprPtr binary(NodeKind kind, ExprPtr lhs, ExprPtr rhs) {
  if (kind != NodeKind::kAdd && kind != NodeKind::kSub &&
      kind != NodeKind::kMul && kind != NodeKind::kDiv) {
    throw Error(ErrorCode::kArgument, "not a binary operator");
  }
  ExprNode n{kind};
  n.lhs = std::move(lhs);
  n.rhs = std::move(rhs);
  return std::make_shared<const ExprNode>(std::move(n));
}

ExprPtr power(ExprPtr base, int exponent) {
  ExprNode n{NodeKind::kPow};
  n.lhs = std::move(base);
  n.exponent = exponent;
  return std::make_shared<const ExprNode>(std::move(n));
}

}  // namespace expr

double integer_power(double base, int exponent) {
  if (exponent < 0) {
    const double d = integer_power(base, -exponent);
    if (std::fabs(d) < kMinDivisor) {
      throw Error(ErrorCode::kOracle, "negative power of a near-zero value");
    }
    return 1.0 / d;
  }
  double result = 1.0;
  double b = base;
  for (unsigned e = static_cast<unsigned>(exponent); e != 0; e >>= 1) {
    if (e & 1u) result *= b;
    b *= b;
  }
  return result;
}

namespace {

double checked_divide(double num, double den) {
  if (std::fabs(den) < kMinDivisor) {
    throw Error(ErrorCode::kOracle, "division by a near-zero value");
  }
  return num / den;
}

double scalar_sum(const ActionProfile& x) {
  if (x.dims() != 1) {
    throw Error(ErrorCode::kOracle,
                "xbar is only defined for scalar actions");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < x.players(); ++j) s += x(j, 0);
  return s;
}

double read_variable(const ActionProfile& x, std::size_t player,
                     std::size_t coord) {
  if (player >= x.players() || coord >= x.dims()) {
    throw Error(ErrorCode::kOracle, "variable x_" + std::to_string(player + 1) +
                                        "_" + std::to_string(coord + 1) +
                                        " is outside the profile");
  }
  return x(player, coord);
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), column_(column) {}

  ExprPtr parse_all() {
    skip_space();
    if (pos_ >= text_.size()) fail("empty expression", {"an operand"});
    ExprPtr e = parse_expr();
    skip_space();
    if (pos_ < text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'",
           {"an operator", "end of expression"});
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message,
                         std::vector<std::string> expected) const {
    throw ParseError(line_, column_ + pos_, message, std::move(expected));
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_expr() {
    ExprPtr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = expr::binary(NodeKind::kAdd, lhs, parse_term());
      } else if (accept('-')) {
        lhs = expr::binary(NodeKind::kSub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_term() {
    ExprPtr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = expr::binary(NodeKind::kMul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = expr::binary(NodeKind::kDiv, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr parse_unary() {
    if (accept('-')) return expr::neg(parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (!accept('^')) return base;
    skip_space();
    const bool negative = accept('-');
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(
                                      text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("exponent must be an integer literal", {"integer"});
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_ || value > 1024) {
      pos_ = start;
      fail("exponent out of range", {"integer up to 1024"});
    }
    return expr::power(base, negative ? -value : value);
  }

  ExprPtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) {
      fail("unexpected end of expression",
           {"number", "variable x_<player>_<coord>", "xbar", "'('"});
    }
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr inner = parse_expr();
      if (!accept(')')) {
        skip_space();
        fail("unbalanced parenthesis", {"')'"});
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_identifier();
    }
    fail("unexpected '" + std::string(1, c) + "'",
         {"number", "variable x_<player>_<coord>", "xbar", "'('"});
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_ ||
        !std::isfinite(value)) {
      pos_ = start;
      fail("malformed number", {"number"});
    }
    return expr::number(value);
  }

  ExprPtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view word = text_.substr(start, pos_ - start);
    if (word == "xbar") return expr::aggregate();
    // x_<player>_<coord>
    std::size_t player = 0, coord = 0;
    if (word.size() > 2 && word.substr(0, 2) == "x_") {
      const std::string_view rest = word.substr(2);
      const std::size_t sep = rest.find('_');
      if (sep != std::string_view::npos) {
        const std::string_view a = rest.substr(0, sep);
        const std::string_view b = rest.substr(sep + 1);
        const auto r1 = std::from_chars(a.data(), a.data() + a.size(), player);
        const auto r2 = std::from_chars(b.data(), b.data() + b.size(), coord);
        if (!a.empty() && !b.empty() && r1.ec == std::errc() &&
            r1.ptr == a.data() + a.size() && r2.ec == std::errc() &&
            r2.ptr == b.data() + b.size() && player >= 1 && coord >= 1) {
          return expr::variable(player - 1, coord - 1);
        }
      }
    }
    pos_ = start;
    fail("unknown identifier '" + std::string(word) + "'",
         {"variable x_<player>_<coord>", "xbar"});
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t column_;
  std::size_t pos_ = 0;
};

void print(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::kNumber: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.number);
      out += buf;
      return;
    }
    case NodeKind::kVariable:
      out += "x_" + std::to_string(n.player + 1) + "_" +
             std::to_string(n.coord + 1);
      return;
    case NodeKind::kAggregate:
      out += "xbar";
      return;
    case NodeKind::kNeg:
      out += "(-";
      print(*n.lhs, out);
      out += ")";
      return;
    case NodeKind::kPow:
      out += "(";
      print(*n.lhs, out);
      out += "^" + std::to_string(n.exponent) + ")";
      return;
    default: {
      const char* op = n.kind == NodeKind::kAdd   ? " + "
                       : n.kind == NodeKind::kSub ? " - "
                       : n.kind == NodeKind::kMul ? " * "
                                                  : " / ";
      out += "(";
      print(*n.lhs, out);
      out += op;
      print(*n.rhs, out);
      out += ")";
    }
  }
}

double walk(const ExprNode& n, const ActionProfile& x) {
  switch (n.kind) {
    case NodeKind::kNumber: return n.number;
    case NodeKind::kVariable: return read_variable(x, n.player, n.coord);
    case NodeKind::kAggregate: return scalar_sum(x);
    case NodeKind::kNeg: return -walk(*n.lhs, x);
    case NodeKind::kAdd: return walk(*n.lhs, x) + walk(*n.rhs, x);
    case NodeKind::kSub: return walk(*n.lhs, x) - walk(*n.rhs, x);
    case NodeKind::kMul: return walk(*n.lhs, x) * walk(*n.rhs, x);
    case NodeKind::kDiv: {
      const double num = walk(*n.lhs, x);
      return checked_divide(num, walk(*n.rhs, x));
    }
    case NodeKind::kPow: return integer_power(walk(*n.lhs, x), n.exponent);
  }
  return 0.0;
}

bool same_tree(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::kNumber: return a.number == b.number;
    case NodeKind::kVariable:
      return a.player == b.player && a.coord == b.coord;
    case NodeKind::kAggregate: return true;
    case NodeKind::kNeg: return same_tree(*a.lhs, *b.lhs);
    case NodeKind::kPow:
      return a.exponent == b.exponent && same_tree(*a.lhs, *b.lhs);
    default: return same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
}

void collect(const ExprNode& n,
             std::set<std::pair<std::size_t, std::size_t>>& vars,
             bool& agg) {
  if (n.kind == NodeKind::kVariable) vars.emplace(n.player, n.coord);
  if (n.kind == NodeKind::kAggregate) agg = true;
  if (n.lhs) collect(*n.lhs, vars, agg);
  if (n.rhs) collect(*n.rhs, vars, agg);
}

}  // namespace

Expression::Expression(ExprPtr root) : root_(std::move(root)) {
  if (!root_) throw Error(ErrorCode::kArgument, "empty expression tree");
}

Expression Expression::parse(std::string_view text, std::size_t line,
                             std::size_t column) {
  return Expression(Parser(text, line, column).parse_all());
}

std::string Expression::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

double Expression::evaluate_tree(const ActionProfile& x) const {
  return walk(*root_, x);
}

std::vector<std::pair<std::size_t, std::size_t>> Expression::variables() const {
  std::set<std::pair<std::size_t, std::size_t>> vars;
  bool agg = false;
  collect(*root_, vars, agg);
  return {vars.begin(), vars.end()};
}

bool Expression::uses_aggregate() const {
  std::set<std::pair<std::size_t, std::size_t>> vars;
  bool agg = false;
  collect(*root_, vars, agg);
  return agg;
}

bool operator==(const Expression& a, const Expression& b) {
  return same_tree(*a.root_, *b.root_);
}

CompiledExpression Expression::compile() const {
  CompiledExpression out;
  std::size_t depth = 0;
  auto emit = [&](auto&& self, const ExprNode& n) -> void {
    using Op = CompiledExpression::Op;
    CompiledExpression::Instr ins{Op::kPush};
    switch (n.kind) {
      case NodeKind::kNumber:
        ins = {Op::kPush, n.number};
        break;
      case NodeKind::kVariable:
        ins = {Op::kVar, 0.0, n.player, n.coord};
        break;
      case NodeKind::kAggregate:
        ins = {Op::kAgg};
        break;
      case NodeKind::kNeg:
        self(self, *n.lhs);
        out.code_.push_back({Op::kNeg});
        return;
      case NodeKind::kPow:
        self(self, *n.lhs);
        out.code_.push_back({Op::kPow, 0.0, 0, 0, n.exponent});
        return;
      default: {
        self(self, *n.lhs);
        self(self, *n.rhs);
        const Op op = n.kind == NodeKind::kAdd   ? Op::kAdd
                      : n.kind == NodeKind::kSub ? Op::kSub
                      : n.kind == NodeKind::kMul ? Op::kMul
                                                 : Op::kDiv;
        out.code_.push_back({op});
        --depth;
        return;
      }
    }
    out.code_.push_back(ins);
    out.max_depth_ = std::max(out.max_depth_, ++depth);
  };
  emit(emit, *root_);
  return out;
}

template <class VarFn, class AggFn>
double CompiledExpression::run(const VarFn& var, const AggFn& agg) const {
  constexpr std::size_t kInline = 32;
  double inline_stack[kInline] = {};
  std::vector<double> heap;
  double* stack = inline_stack;
  if (max_depth_ > kInline) {
    heap.resize(max_depth_);
    stack = heap.data();
  }
  std::size_t top = 0;
  for (const Instr& ins : code_) {
    switch (ins.op) {
      case Op::kPush: stack[top++] = ins.value; break;
      case Op::kVar: stack[top++] = var(ins.player, ins.coord); break;
      case Op::kAgg: stack[top++] = agg(); break;
      case Op::kNeg: stack[top - 1] = -stack[top - 1]; break;
      case Op::kAdd: --top; stack[top - 1] += stack[top]; break;
      case Op::kSub: --top; stack[top - 1] -= stack[top]; break;
      case Op::kMul: --top; stack[top - 1] *= stack[top]; break;
      case Op::kDiv:
        --top;
        stack[top - 1] = checked_divide(stack[top - 1], stack[top]);
        break;
      case Op::kPow:
        stack[top - 1] = integer_power(stack[top - 1], ins.exponent);
        break;
    }
  }
  return stack[0];
}

double CompiledExpression::evaluate(const ActionProfile& x) const {
  return run(
      [&](std::size_t p, std::size_t c) { return read_variable(x, p, c); },
      [&] { return scalar_sum(x); });
}

double CompiledExpression::evaluate_reduced(std::size_t player,
                                            std::span<const double> own,
                                            double aggregate) const {
  return run(
      [&](std::size_t p, std::size_t c) {
        if (p != player || c >= own.size()) {
          throw Error(ErrorCode::kOracle,
                      "reduced payoff of player " + std::to_string(player + 1) +
                          " reads another player's action");
        }
        return own[c];
      },
      [&] { return aggregate; });
}

}  // namespace potgame
