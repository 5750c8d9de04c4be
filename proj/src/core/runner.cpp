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

#include "core/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <locale>
#include <sstream>

#include "core/checkers.hpp"
#include "core/error.hpp"
#include "core/potential.hpp"
#include "core/sampler.hpp"

namespace potgame {

namespace {

using nlohmann::json;

std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GameSpec with_overrides(GameSpec spec, const RunOptions& options) {
  if (options.grid) {
    if (*options.grid < 2) {
      throw Error(ErrorCode::kArgument, "grid must be at least 2");
    }
    spec.grid = options.grid;
  }
  if (options.seed) spec.seed = options.seed;
  if (options.budget) {
    if (*options.budget == 0) {
      throw Error(ErrorCode::kArgument, "budget must be positive");
    }
    spec.budget = options.budget;
  }
  return spec;
}

GridSampler make_sampler(const GameSpec& spec, const ActionSpace& space,
                         const RunOptions& options) {
  SamplingConfig cfg;
  cfg.seed = spec.seed.value_or(0);
  if (spec.budget) cfg.budget = *spec.budget;
  cfg.threads = std::max(1u, options.threads);
  return GridSampler(space, cfg);
}

json game_json(const LoadedGame& loaded) {
  const ActionSpace& s = loaded.game.space();
  json lower = json::array(), upper = json::array(), res = json::array();
  for (std::size_t k = 0; k < s.size(); ++k) {
    lower.push_back(s.lower(k));
    upper.push_back(s.upper(k));
    res.push_back(s.resolution(k));
  }
  return {{"name", loaded.game.name()},
          {"source", loaded.source},
          {"players", s.players()},
          {"dims", s.dims()},
          {"lower", lower},
          {"upper", upper},
          {"resolution", res},
          {"base", to_json(s.base())},
          {"symmetric_about_base", s.symmetric_about_base()},
          {"smooth", loaded.game.smooth()},
          {"aggregative", loaded.aggregative.has_value()}};
}

json sampling_json(const GridSampler& sampler) {
  return {{"seed", sampler.config().seed},
          {"budget", sampler.config().budget},
          {"grid_profiles", sampler.profile_count()}};
}

json tolerance_json(const Tolerances& tol) {
  return {{"abs", tol.abs_tol},
          {"rel", tol.rel_tol},
          {"fd_step", tol.fd_step},
          {"fd_tol", tol.fd_tol}};
}

json envelope(const RunOptions& options, json body) {
  return {{"schema", kReportSchema},
          {"header",
           {{"tool", "potgame"},
            {"version", options.version},
            {"timestamp", utc_timestamp()}}},
          {"body", std::move(body)}};
}

std::vector<std::string> selected_checkers(const RunOptions& options) {
  if (options.checkers.empty()) {
    return {"def", "cycles", "pairwise", "partials", "funceq"};
  }
  std::vector<std::string> out;
  for (const std::string& c : options.checkers) {
    const auto& known = known_checkers();
    if (std::find(known.begin(), known.end(), c) == known.end()) {
      std::string list;
      for (const auto& k : known) list += list.empty() ? k : "," + k;
      throw Error(ErrorCode::kArgument,
                  "unknown checker '" + c + "' (known: " + list + ")");
    }
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

json classification_json(const LoadedGame& loaded, const GridSampler& sampler,
                         const Tolerances& tol) {
  json out;
  const AbnormalReport ab = check_abnormal(loaded.game, sampler, tol);
  json flagged = json::array(), spread = json::array();
  for (std::size_t i = 0; i < ab.flagged.size(); ++i) {
    if (ab.flagged[i]) flagged.push_back(i + 1);
    spread.push_back(ab.spread[i]);
  }
  out["abnormal"] = {{"abnormal", ab.abnormal()},
                     {"flagged_players", flagged},
                     {"own_deviation_spread", spread},
                     {"samples", ab.samples}};
  out["aggregative"] = loaded.aggregative.has_value();
  if (loaded.aggregative) {
    const NonvanishingReport nv =
        check_aggregative_nonvanishing(*loaded.aggregative, sampler);
    json n = {{"found", nv.found},
              {"value", nv.value},
              {"samples", nv.samples},
              {"last_player_abnormal", nv.last_player_abnormal},
              {"notes", nv.notes}};
    n["witness"] = nv.witness ? to_json(*nv.witness) : json(nullptr);
    out["nonvanishing"] = n;
    const ConsistencyReport cr =
        check_aggregative_consistency(*loaded.aggregative, sampler, tol);
    json dev = json::array(), bad = json::array();
    for (std::size_t i = 0; i < cr.max_deviation.size(); ++i) {
      dev.push_back(cr.max_deviation[i]);
      if (!cr.consistent[i]) bad.push_back(i + 1);
    }
    out["consistency"] = {{"consistent", cr.all_consistent()},
                          {"max_deviation", dev},
                          {"inconsistent_players", bad},
                          {"samples", cr.samples}};
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_checkers() {
  static const std::vector<std::string> names = {
      "def", "cycles", "pairwise", "partials", "funceq", "aggpairwise"};
  return names;
}

Tolerances resolve_tolerances(const GameSpec& spec, const RunOptions& options) {
  Tolerances tol;
  if (const char* env = std::getenv(kToleranceEnv); env && *env) {
    std::istringstream in(env);
    in.imbue(std::locale::classic());
    double v = 0.0;
    if (!(in >> v) || !in.eof() || !(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::kArgument,
                  std::string(kToleranceEnv) + " is not a tolerance: " + env);
    }
    tol.abs_tol = v;
  }
  if (spec.abs_tol) tol.abs_tol = *spec.abs_tol;
  if (spec.rel_tol) tol.rel_tol = *spec.rel_tol;
  if (options.abs_tol) tol.abs_tol = *options.abs_tol;
  if (options.rel_tol) tol.rel_tol = *options.rel_tol;
  if (!(tol.abs_tol >= 0.0) || !(tol.rel_tol >= 0.0)) {
    throw Error(ErrorCode::kArgument, "tolerances must be non-negative");
  }
  return tol;
}

int exit_status(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPotential: return 0;
    case Verdict::kNotPotential: return 1;
    case Verdict::kInconclusive: return 2;
  }
  return 2;
}

int exit_status(ErrorCode code) { return 2 + static_cast<int>(code); }

RunResult run_check(const GameSpec& raw, const RunOptions& options) {
  const GameSpec spec = with_overrides(raw, options);
  const Tolerances tol = resolve_tolerances(spec, options);
  const std::vector<std::string> names = selected_checkers(options);
  const LoadedGame loaded = instantiate(spec);
  const GridSampler sampler = make_sampler(spec, loaded.game.space(), options);

  std::vector<CheckReport> reports;
  for (const std::string& name : names) {
    if (name == "def") {
      // The path-sum candidate satisfies the identity exactly when the game
      // has a potential, so its residual decides the question.
      const PotentialCandidate hp = build_via_path_sum(loaded.game);
      CheckReport r = check_definition(loaded.game, hp.evaluator(), sampler, tol);
      r.notes.insert(r.notes.begin(), "phi from route hp");
      reports.push_back(std::move(r));
    } else if (name == "cycles") {
      reports.push_back(check_four_cycles(loaded.game, sampler, tol));
    } else if (name == "pairwise") {
      reports.push_back(check_pairwise(loaded.game, sampler, tol));
    } else if (name == "partials") {
      reports.push_back(check_cross_partials(loaded.game, sampler, tol));
    } else if (name == "funceq") {
      reports.push_back(check_functional_equation(loaded.game, sampler, tol));
    } else if (name == "aggpairwise") {
      if (!loaded.aggregative) {
        throw Error(ErrorCode::kArgument,
                    "checker aggpairwise needs an aggregative game");
      }
      reports.push_back(
          check_pairwise_aggregative(*loaded.aggregative, sampler, tol));
    }
  }

  RunResult result;
  result.verdict = combine(reports);
  result.exit_status = exit_status(result.verdict);
  json checkers = json::array();
  for (const CheckReport& r : reports) checkers.push_back(to_json(r));
  json body = {{"command", "check"},
               {"game", game_json(loaded)},
               {"sampling", sampling_json(sampler)},
               {"tolerances", tolerance_json(tol)},
               {"checkers", checkers},
               {"verdict", to_string(result.verdict)}};
  if (options.classify) {
    body["classification"] = classification_json(loaded, sampler, tol);
  }
  result.report = envelope(options, std::move(body));
  return result;
}

RunResult run_build(const GameSpec& raw, const RunOptions& options) {
  const GameSpec spec = with_overrides(raw, options);
  const Tolerances tol = resolve_tolerances(spec, options);
  const LoadedGame loaded = instantiate(spec);
  const Game& game = loaded.game;
  const GridSampler sampler = make_sampler(spec, game.space(), options);

  std::vector<Route> routes;
  if (options.route == "all") {
    routes = {Route::kPathSum, Route::kReversedPath, Route::kPairwise};
  } else if (const auto r = parse_route(options.route)) {
    routes = {*r};
  } else {
    throw Error(ErrorCode::kArgument, "unknown route '" + options.route +
                                          "' (known: hp, t6, t8, all)");
  }

  std::vector<PotentialCandidate> candidates;
  json route_reports = json::array();
  for (Route route : routes) {
    try {
      PotentialCandidate c = build(game, route);
      validate(c, game, sampler, tol);
      route_reports.push_back({{"route", route_id(route)},
                               {"status", c.validated() ? "validated"
                                                        : "rejected"},
                               {"definition", to_json(*c.validation())}});
      candidates.push_back(std::move(c));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRefused) throw;
      route_reports.push_back({{"route", route_id(route)},
                               {"status", "refused"},
                               {"reason", e.what()}});
    }
  }

  RunResult result;
  json body = {{"command", "build"},
               {"game", game_json(loaded)},
               {"sampling", sampling_json(sampler)},
               {"tolerances", tolerance_json(tol)},
               {"routes", route_reports}};

  const PotentialCandidate* chosen = nullptr;
  bool any_rejected = false;
  double worst = 0.0;
  for (const auto& c : candidates) {
    worst = std::max(worst, c.validation()->max_residual);
    if (!c.validated()) {
      any_rejected = true;
    } else if (!chosen) {
      chosen = &c;
    }
  }
  body["definition_residual"] = worst;

  if (candidates.size() >= 2) {
    const CrossValidation cv = cross_validate(candidates, game, sampler, tol);
    json ids = json::array();
    for (Route r : cv.routes) ids.push_back(route_id(r));
    body["cross_validation"] = {{"routes", ids},
                                {"deviation", cv.deviation},
                                {"max_deviation", cv.max_deviation},
                                {"samples", cv.samples}};
    if (!any_rejected && tol.violates(cv.max_deviation, 0.0)) {
      any_rejected = true;
    }
  }

  if (candidates.empty()) {
    result.verdict = Verdict::kInconclusive;
  } else if (any_rejected) {
    result.verdict = Verdict::kNotPotential;
  } else {
    result.verdict = Verdict::kPotential;
  }
  result.exit_status = exit_status(result.verdict);
  body["verdict"] = to_string(result.verdict);

  if (result.verdict == Verdict::kPotential && chosen) {
    const SampleSet rows = sampler.select(sampler.profile_count(), "table");
    std::string table;
    for (std::size_t i = 0; i < game.players(); ++i) {
      for (std::size_t m = 0; m < game.dims(); ++m) {
        table += "x_" + std::to_string(i + 1) + "_" + std::to_string(m + 1) +
                 ",";
      }
    }
    table += "phi\n";
    for (std::uint64_t k = 0; k < rows.size(); ++k) {
      const ActionProfile z = sampler.profile(rows[k]);
      for (double v : z.coords()) table += format_number(v) + ",";
      table += format_number((*chosen)(z)) + "\n";
    }
    result.table = std::move(table);
    body["table"] = {{"route", route_id(chosen->route())},
                     {"rows", rows.size()},
                     {"exhaustive", rows.exhaustive()}};
    if (options.nash > 0) {
      json nash = json::array();
      for (const NashCandidate& n :
           nash_candidates(*chosen, game, sampler, options.nash, tol)) {
        nash.push_back({{"profile", to_json(n.profile)}, {"phi", n.potential}});
      }
      body["nash"] = nash;
    }
  } else if (options.nash > 0) {
    body["nash"] = nullptr;
    body["nash_refused"] = "no validated potential";
  }

  result.report = envelope(options, std::move(body));
  return result;
}

nlohmann::json describe(const GameSpec& spec) {
  const LoadedGame loaded = instantiate(spec);
  return game_json(loaded);
}

}  // namespace potgame
