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

#include "core/spec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/zoo.hpp"

namespace potgame {

namespace {

const std::vector<std::string> kKeys = {
    "players", "dims",    "box",     "base",       "grid",   "seed",
    "budget",  "tol",     "abs_tol", "rel_tol",    "aggregator",
    "payoff",  "generator"};

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split_words(std::string_view s, std::size_t column) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && (s[k] == ' ' || s[k] == '\t')) ++k;
    const std::size_t start = k;
    while (k < s.size() && s[k] != ' ' && s[k] != '\t') ++k;
    if (k > start) out.push_back({s.substr(start, k - start), column + start});
  }
  return out;
}

double to_double(const Token& t, std::size_t line) {
  std::string_view s = t.text;
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(v)) {
    throw ParseError(line, t.column,
                     "malformed number '" + std::string(t.text) + "'",
                     {"number"});
  }
  return v;
}

std::uint64_t to_count(const Token& t, std::size_t line) {
  std::uint64_t v = 0;
  const auto [ptr, ec] =
      std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (t.text.empty() || ec != std::errc() ||
      ptr != t.text.data() + t.text.size()) {
    throw ParseError(line, t.column,
                     "malformed integer '" + std::string(t.text) + "'",
                     {"non-negative integer"});
  }
  return v;
}

std::size_t to_index(const Token& t, std::size_t line) {
  const std::uint64_t v = to_count(t, line);
  if (v == 0) {
    throw ParseError(line, t.column, "indices start at 1",
                     {"positive integer"});
  }
  return static_cast<std::size_t>(v - 1);
}

[[noreturn]] void semantic(const std::string& message) {
  throw Error(ErrorCode::kSemantic, message);
}

[[noreturn]] void semantic(std::size_t line, const std::string& message) {
  throw Error(ErrorCode::kSemantic,
              "line " + std::to_string(line) + ": " + message);
}

void expect_count(const std::vector<Token>& words, std::size_t n,
                  std::size_t line, std::size_t column, const char* what) {
  if (words.size() == n) return;
  const std::size_t col =
      words.size() > n ? words[n].column : (words.empty() ? column
                                                          : words.back().column +
                                                                words.back().text.size());
  throw ParseError(line, col,
                   std::string(words.size() > n ? "unexpected token"
                                                : "missing value") +
                       " for " + what,
                   {what});
}

const std::map<std::string, std::vector<std::pair<std::string, std::string>>>
    kCatalog = {
        {"cournot",
         {{"N", "3"}, {"A", "10"}, {"B", "1"}, {"C", "2"}, {"lo", ""}, {"hi", ""}}},
        {"product", {{"N", "3"}, {"lo", "0"}, {"hi", "4"}}},
        {"abnormal",
         {{"N", "3"},
          {"dead", "1"},
          {"lo", "0"},
          {"hi", "8"},
          {"A", "10"},
          {"B", "1"},
          {"C", "2"}}},
        {"random",
         {{"N", "2"}, {"actions", "2"}, {"seed", "0"}, {"symmetric", "0"}}},
        {"zero", {{"N", "2"}, {"dims", "1"}, {"lo", "0"}, {"hi", "1"}}},
};

// Generator parameters with catalog defaults filled in.
class GeneratorArgs {
 public:
  explicit GeneratorArgs(const GeneratorCall& call) : call_(call) {
    const auto it = kCatalog.find(call.name);
    if (it == kCatalog.end()) {
      std::string names;
      for (const auto& [name, _] : kCatalog) {
        names += names.empty() ? name : ", " + name;
      }
      semantic(call.line, "unknown generator '" + call.name + "' (known: " +
                              names + ")");
    }
    for (const auto& [k, v] : it->second) values_[k] = v;
    for (const auto& [k, v] : call.params) {
      if (!values_.count(k)) {
        std::string keys;
        for (const auto& [name, _] : it->second) {
          keys += keys.empty() ? name : ", " + name;
        }
        semantic(call.line, "generator " + call.name +
                                " has no parameter '" + k + "' (accepts " +
                                keys + ")");
      }
      values_[k] = v;
    }
  }

  bool has(const std::string& key) const { return !values_.at(key).empty(); }

  double real(const std::string& key) const {
    const std::string& s = values_.at(key);
    std::istringstream in(s);
    in.imbue(std::locale::classic());
    double v = 0.0;
    if (!(in >> v) || !in.eof() || !std::isfinite(v)) bad(key);
    return v;
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    std::string s = values_.at(key);
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      std::istringstream in(s.substr(start, comma - start));
      in.imbue(std::locale::classic());
      double v = 0.0;
      if (!(in >> v) || !in.eof() || !std::isfinite(v)) bad(key);
      out.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }

  std::uint64_t count(const std::string& key) const {
    const std::string& s = values_.at(key);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) bad(key);
    return v;
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  [[noreturn]] void bad(const std::string& key) const {
    semantic(call_.line, "generator " + call_.name + ": bad value '" +
                             values_.at(key) + "' for " + key);
  }

  const GeneratorCall& call_;
  std::map<std::string, std::string> values_;
};

std::size_t generator_players(const GeneratorCall& call) {
  return static_cast<std::size_t>(GeneratorArgs(call).count("N"));
}

void check_payoff_variables(const GameSpec& spec, std::size_t player,
                            const Expression& e) {
  const std::string who = "payoff " + std::to_string(player + 1);
  for (const auto& [p, c] : e.variables()) {
    if (p >= spec.players || c >= spec.dims) {
      semantic("unknown variable x_" + std::to_string(p + 1) + "_" +
               std::to_string(c + 1) + " in " + who + " (players " +
               std::to_string(spec.players) + ", dims " +
               std::to_string(spec.dims) + ")");
    }
  }
  if (e.uses_aggregate() && spec.dims != 1) {
    semantic(who + " uses xbar, which needs dims 1");
  }
  if (spec.aggregator && *spec.aggregator == "sum") {
    for (const auto& [p, c] : e.variables()) {
      if (p != player) {
        semantic(who + " reads x_" + std::to_string(p + 1) + "_" +
                 std::to_string(c + 1) +
                 "; with aggregator sum a payoff may use only its own "
                 "variables and xbar");
      }
    }
  }
}

void validate(GameSpec& spec, std::vector<std::pair<std::size_t, std::size_t>>&
                                  payoff_lines,
              std::size_t players_line) {
  if (spec.generator) {
    if (!payoff_lines.empty()) {
      semantic(payoff_lines.front().second,
               "payoff lines cannot be combined with a generator");
    }
    if (!spec.boxes.empty()) {
      semantic(spec.boxes.front().line,
               "box lines cannot be combined with a generator; pass lo= and "
               "hi= instead");
    }
    const std::size_t n = generator_players(*spec.generator);
    if (players_line && spec.players != n) {
      semantic(players_line, "players " + std::to_string(spec.players) +
                                 " disagrees with generator N=" +
                                 std::to_string(n));
    }
    spec.players = n;
    const GeneratorArgs args(*spec.generator);
    spec.dims = spec.generator->name == "zero"
                    ? static_cast<std::size_t>(args.count("dims"))
                    : 1;
    if (spec.aggregator && *spec.aggregator == "sum" &&
        spec.generator->name != "cournot") {
      semantic("generator " + spec.generator->name +
               " has no aggregative form");
    }
  } else {
    if (!players_line) semantic("players is not declared");
    if (spec.players < 2) semantic("players must be at least 2");
    if (spec.dims < 1) semantic("dims must be at least 1");
    std::vector<std::optional<Expression>> slots(spec.players);
    // payoff_lines[k] is the (player, line) of spec.payoffs[k].
    for (std::size_t k = 0; k < payoff_lines.size(); ++k) {
      const auto [player, line] = payoff_lines[k];
      if (player >= spec.players) {
        semantic(line, "payoff for player " + std::to_string(player + 1) +
                           " but players is " + std::to_string(spec.players));
      }
      if (slots[player]) {
        semantic(line,
                 "second payoff for player " + std::to_string(player + 1));
      }
      slots[player] = spec.payoffs[k];
    }
    for (std::size_t i = 0; i < spec.players; ++i) {
      if (!slots[i]) semantic("missing payoff for player " + std::to_string(i + 1));
    }
    spec.payoffs.clear();
    for (auto& s : slots) spec.payoffs.push_back(*s);
    if (spec.aggregator && *spec.aggregator == "sum" && spec.dims != 1) {
      semantic("aggregator sum needs dims 1");
    }
    for (std::size_t i = 0; i < spec.players; ++i) {
      check_payoff_variables(spec, i, spec.payoffs[i]);
    }
    std::vector<bool> covered(spec.players * spec.dims, false);
    for (const BoxDecl& b : spec.boxes) {
      if (b.player && *b.player >= spec.players) {
        semantic(b.line, "box for player " + std::to_string(*b.player + 1) +
                             " but players is " + std::to_string(spec.players));
      }
      if (b.coord && *b.coord >= spec.dims) {
        semantic(b.line, "box for coordinate " + std::to_string(*b.coord + 1) +
                             " but dims is " + std::to_string(spec.dims));
      }
      for (std::size_t i = 0; i < spec.players; ++i) {
        for (std::size_t m = 0; m < spec.dims; ++m) {
          if ((!b.player || *b.player == i) && (!b.coord || *b.coord == m)) {
            covered[i * spec.dims + m] = true;
          }
        }
      }
    }
    for (std::size_t k = 0; k < covered.size(); ++k) {
      if (!covered[k]) {
        semantic("no box for player " + std::to_string(k / spec.dims + 1) +
                 " coordinate " + std::to_string(k % spec.dims + 1));
      }
    }
  }
  if (spec.base_mode == BaseMode::kExplicit &&
      spec.base.size() != spec.players * spec.dims) {
    semantic("base has " + std::to_string(spec.base.size()) +
             " values; expected players * dims = " +
             std::to_string(spec.players * spec.dims));
  }
}

}  // namespace

GameSpec parse_spec(std::string_view text) {
  GameSpec spec;
  std::vector<std::pair<std::size_t, std::size_t>> payoff_lines;
  std::map<std::string, std::size_t> seen;
  std::size_t players_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }

    const std::size_t colon = line.find(':');
    const std::vector<Token> head =
        split_words(line.substr(0, colon == std::string_view::npos
                                       ? line.size()
                                       : colon),
                    1);
    const std::string key(head.front().text);
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      throw ParseError(line_no, head.front().column,
                       "unknown directive '" + key + "'", kKeys);
    }
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, line.find_last_not_of(" \t") + 2,
                       "missing ':' after " + key, {"':'"});
    }
    const std::size_t value_column = colon + 2;
    const std::string_view value = line.substr(colon + 1);
    const std::vector<Token> words = split_words(value, value_column);

    if (key != "payoff" && key != "box") {
      if (head.size() != 1) {
        throw ParseError(line_no, head[1].column,
                         key + " takes no index", {"':'"});
      }
      if (seen.count(key)) {
        semantic(line_no, key + " already set on line " +
                              std::to_string(seen[key]));
      }
      seen[key] = line_no;
    }

    if (key == "players") {
      expect_count(words, 1, line_no, value_column, "player count");
      spec.players = static_cast<std::size_t>(to_count(words[0], line_no));
      players_line = line_no;
    } else if (key == "dims") {
      expect_count(words, 1, line_no, value_column, "dimension");
      spec.dims = static_cast<std::size_t>(to_count(words[0], line_no));
    } else if (key == "box") {
      if (head.size() > 3) {
        throw ParseError(line_no, head[3].column, "too many box indices",
                         {"':'"});
      }
      expect_count(words, 2, line_no, value_column, "lower and upper bound");
      BoxDecl b{std::nullopt, std::nullopt, to_double(words[0], line_no),
                to_double(words[1], line_no), line_no};
      if (head.size() >= 2) b.player = to_index(head[1], line_no);
      if (head.size() == 3) b.coord = to_index(head[2], line_no);
      if (b.lower > b.upper) {
        semantic(line_no, "box bounds inverted: " +
                              std::string(words[0].text) + " > " +
                              std::string(words[1].text));
      }
      spec.boxes.push_back(b);
    } else if (key == "base") {
      if (words.empty()) {
        throw ParseError(line_no, value_column, "missing base point",
                         {"lower", "midpoint", "numbers"});
      }
      if (words.size() == 1 && words[0].text == "lower") {
        spec.base_mode = BaseMode::kLower;
      } else if (words.size() == 1 && words[0].text == "midpoint") {
        spec.base_mode = BaseMode::kMidpoint;
      } else {
        spec.base_mode = BaseMode::kExplicit;
        for (const Token& w : words) spec.base.push_back(to_double(w, line_no));
      }
    } else if (key == "grid") {
      expect_count(words, 1, line_no, value_column, "grid resolution");
      spec.grid = static_cast<std::size_t>(to_count(words[0], line_no));
      if (*spec.grid < 2) semantic(line_no, "grid must be at least 2");
    } else if (key == "seed") {
      expect_count(words, 1, line_no, value_column, "seed");
      spec.seed = to_count(words[0], line_no);
    } else if (key == "budget") {
      expect_count(words, 1, line_no, value_column, "budget");
      spec.budget = to_count(words[0], line_no);
      if (*spec.budget == 0) semantic(line_no, "budget must be positive");
    } else if (key == "tol" || key == "abs_tol") {
      if (seen.count("tol") && seen.count("abs_tol")) {
        semantic(line_no, "tol and abs_tol are the same setting");
      }
      expect_count(words, 1, line_no, value_column, "tolerance");
      spec.abs_tol = to_double(words[0], line_no);
      if (!(*spec.abs_tol >= 0)) semantic(line_no, "tolerance must be >= 0");
    } else if (key == "rel_tol") {
      expect_count(words, 1, line_no, value_column, "tolerance");
      spec.rel_tol = to_double(words[0], line_no);
      if (!(*spec.rel_tol >= 0)) semantic(line_no, "tolerance must be >= 0");
    } else if (key == "aggregator") {
      expect_count(words, 1, line_no, value_column, "aggregator");
      if (words[0].text != "sum" && words[0].text != "none") {
        throw ParseError(line_no, words[0].column,
                         "unknown aggregator '" + std::string(words[0].text) +
                             "'",
                         {"sum", "none"});
      }
      spec.aggregator = std::string(words[0].text);
    } else if (key == "payoff") {
      if (head.size() != 2) {
        throw ParseError(line_no,
                         head.size() < 2 ? head[0].column + 6 : head[2].column,
                         "payoff needs exactly one player index",
                         {"player index"});
      }
      const std::size_t player = to_index(head[1], line_no);
      const std::size_t expr_start = value.find_first_not_of(" \t");
      const std::string_view expr_text =
          expr_start == std::string_view::npos ? std::string_view{}
                                               : value.substr(expr_start);
      spec.payoffs.push_back(Expression::parse(
          expr_text, line_no,
          value_column + (expr_start == std::string_view::npos ? 0
                                                               : expr_start)));
      payoff_lines.emplace_back(player, line_no);
    } else if (key == "generator") {
      if (words.empty()) {
        throw ParseError(line_no, value_column, "missing generator name",
                         {"generator name"});
      }
      GeneratorCall call{std::string(words[0].text), {}, line_no};
      for (std::size_t k = 1; k < words.size(); ++k) {
        const std::size_t eq = words[k].text.find('=');
        if (eq == std::string_view::npos || eq == 0 ||
            eq + 1 == words[k].text.size()) {
          throw ParseError(line_no, words[k].column,
                           "generator parameters are key=value",
                           {"key=value"});
        }
        call.params.emplace_back(std::string(words[k].text.substr(0, eq)),
                                 std::string(words[k].text.substr(eq + 1)));
      }
      spec.generator = std::move(call);
    }
    if (end == text.size()) break;
  }

  validate(spec, payoff_lines, players_line);
  return spec;
}

GameSpec load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

namespace {

ActionProfile default_base(const ActionSpace& space) {
  const ActionProfile zero = ActionProfile::zeros(space.players(), space.dims());
  return space.contains(zero) ? zero : space.midpoint();
}

ActionSpace apply_base(const GameSpec& spec, const ActionSpace& space,
                       bool keep_existing) {
  switch (spec.base_mode) {
    case BaseMode::kDefault:
      return keep_existing ? space : space.with_base(default_base(space));
    case BaseMode::kLower:
      return space.with_base(space.lower_corner());
    case BaseMode::kMidpoint:
      return space.with_base(space.midpoint());
    case BaseMode::kExplicit:
      return space.with_base(
          ActionProfile(space.players(), space.dims(), spec.base));
  }
  return space;
}

LoadedGame from_expressions(const GameSpec& spec) {
  const std::size_t n = spec.players * spec.dims;
  std::vector<double> lower(n), upper(n);
  for (const BoxDecl& b : spec.boxes) {
    for (std::size_t i = 0; i < spec.players; ++i) {
      for (std::size_t m = 0; m < spec.dims; ++m) {
        if ((!b.player || *b.player == i) && (!b.coord || *b.coord == m)) {
          lower[i * spec.dims + m] = b.lower;
          upper[i * spec.dims + m] = b.upper;
        }
      }
    }
  }
  ActionSpace space(spec.players, spec.dims, lower, upper);
  space = space.with_resolution(spec.grid.value_or(ActionSpace::kDefaultResolution));
  space = apply_base(spec, space, false);

  std::vector<PayoffOracle> payoffs;
  std::vector<ReducedPayoff> reduced;
  for (std::size_t i = 0; i < spec.players; ++i) {
    const CompiledExpression code = spec.payoffs[i].compile();
    payoffs.emplace_back(
        [code](const ActionProfile& x) { return code.evaluate(x); },
        OracleKind::kExpression, true);
    reduced.emplace_back([code, i](std::span<const double> own,
                                   std::span<const double> agg) {
      return code.evaluate_reduced(i, own, agg[0]);
    });
  }
  Game game(std::move(space), std::move(payoffs), "spec");
  LoadedGame out{game, std::nullopt, "expression"};
  if (spec.aggregator && *spec.aggregator == "sum") {
    out.aggregative.emplace(std::move(game), identity_aggregator(),
                            std::move(reduced), "sum");
  }
  return out;
}

LoadedGame from_generator(const GameSpec& spec) {
  const GeneratorCall& call = *spec.generator;
  const GeneratorArgs args(call);
  const std::size_t players = static_cast<std::size_t>(args.count("N"));
  const std::string source = "generator:" + call.name;
  const std::size_t res = spec.grid.value_or(ActionSpace::kDefaultResolution);

  if (call.name == "cournot") {
    CournotParams p;
    p.players = players;
    p.intercept = args.real("A");
    p.slope = args.reals("B");
    p.cost = args.real("C");
    if (args.has("lo") != args.has("hi")) {
      semantic(call.line, "cournot needs both lo and hi or neither");
    }
    if (args.has("lo")) {
      p.box = std::make_pair(args.real("lo"), args.real("hi"));
      if (p.box->first > p.box->second) {
        semantic(call.line, "box bounds inverted");
      }
      if (!(p.box->first <= 0.0 && 0.0 <= p.box->second)) {
        p.base = ActionProfile::scalar(std::vector<double>(
            players, 0.5 * (p.box->first + p.box->second)));
      }
    }
    p.resolution = res;
    AggregativeGame ag = make_cournot(p);
    ag = ag.with_space(apply_base(spec, ag.base().space(), true));
    LoadedGame out{ag.base(), std::nullopt, source};
    if (!spec.aggregator || *spec.aggregator == "sum") out.aggregative = ag;
    return out;
  }

  Game game = [&]() -> Game {
    if (call.name == "product") {
      return make_product_game(players, args.real("lo"), args.real("hi"));
    }
    if (call.name == "abnormal") {
      const std::uint64_t dead = args.count("dead");
      if (dead < 1 || dead > players) {
        semantic(call.line, "dead must name a player in 1.." +
                                std::to_string(players));
      }
      return make_abnormal_game(players, static_cast<std::size_t>(dead - 1),
                                args.real("lo"), args.real("hi"),
                                args.real("A"), args.real("B"),
                                args.real("C"));
    }
    if (call.name == "random") {
      const std::uint64_t sym = args.count("symmetric");
      if (sym > 1) semantic(call.line, "symmetric is 0 or 1");
      Game g = make_random_finite(
          players, static_cast<std::size_t>(args.count("actions")),
          args.count("seed"));
      return sym ? make_identical_interest(g) : g;
    }
    // zero
    const double lo = args.real("lo");
    const double hi = args.real("hi");
    if (lo > hi) semantic(call.line, "box bounds inverted");
    const std::size_t dims = static_cast<std::size_t>(args.count("dims"));
    if (dims < 1) semantic(call.line, "dims must be at least 1");
    ActionSpace space = ActionSpace::uniform(players, dims, lo, hi);
    return make_zero_game(space.with_base(default_base(space)));
  }();

  ActionSpace space = game.space();
  if (spec.grid) space = space.with_resolution(*spec.grid);
  space = apply_base(spec, space, true);
  return LoadedGame{game.with_space(std::move(space)), std::nullopt, source};
}

}  // namespace

LoadedGame instantiate(const GameSpec& spec) {
  try {
    return spec.generator ? from_generator(spec) : from_expressions(spec);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kArgument) {
      throw Error(ErrorCode::kSemantic, e.what());
    }
    throw;
  }
}

const std::map<std::string, std::vector<std::pair<std::string, std::string>>>&
generator_catalog() {
  return kCatalog;
}

std::string generator_spec_text(
    const std::string& name,
    const std::vector<std::pair<std::string, std::string>>& params) {
  const GeneratorCall call{name, params, 1};
  const GeneratorArgs args(call);
  std::string line = "generator: " + name;
  for (const auto& [key, _] : kCatalog.at(name)) {
    const std::string& v = args.values().at(key);
    if (!v.empty()) line += " " + key + "=" + v;
  }
  std::string text = "# " + name + " game\n" + line + "\n";
  instantiate(parse_spec(text));
  return text;
}

}  // namespace potgame
