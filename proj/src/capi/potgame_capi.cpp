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

#include "potgame.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "core/error.hpp"
#include "core/runner.hpp"
#include "core/spec.hpp"

struct pg_game {
  potgame::GameSpec spec;
  potgame::LoadedGame loaded;
};

struct pg_result {
  potgame::RunResult run;
  std::string report;
  std::string body;
};

namespace {

thread_local std::string last_error;

pg_status fail(pg_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class Fn>
pg_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return PG_OK;
  } catch (const potgame::Error& e) {
    return fail(static_cast<pg_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PG_ERR_INTERNAL, "unknown failure");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) {
    throw potgame::Error(potgame::ErrorCode::kArgument,
                         std::string(what) + " is NULL");
  }
}

std::vector<std::pair<std::string, std::string>> split_params(
    const char* params) {
  std::vector<std::pair<std::string, std::string>> out;
  if (!params) return out;
  std::istringstream in(params);
  std::string word;
  while (in >> word) {
    const std::size_t eq = word.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == word.size()) {
      throw potgame::Error(potgame::ErrorCode::kArgument,
                           "generator parameter '" + word +
                               "' is not key=value");
    }
    out.emplace_back(word.substr(0, eq), word.substr(eq + 1));
  }
  return out;
}

potgame::RunOptions to_run_options(const pg_options* o) {
  potgame::RunOptions r;
  r.version = POTGAME_VERSION_STRING;
  if (!o) return r;
  if (o->checkers) {
    std::string list = o->checkers;
    std::size_t start = 0;
    while (start <= list.size()) {
      std::size_t comma = list.find(',', start);
      if (comma == std::string::npos) comma = list.size();
      std::string name = list.substr(start, comma - start);
      if (!name.empty()) r.checkers.push_back(name);
      start = comma + 1;
    }
  }
  if (o->grid) r.grid = o->grid;
  if (o->has_seed) r.seed = o->seed;
  if (o->budget) r.budget = o->budget;
  if (o->abs_tol >= 0) r.abs_tol = o->abs_tol;
  if (o->rel_tol >= 0) r.rel_tol = o->rel_tol;
  r.threads = o->threads ? o->threads : 1;
  r.classify = o->classify != 0;
  if (o->route) r.route = o->route;
  r.nash = o->nash;
  return r;
}

pg_status make_game(potgame::GameSpec spec, pg_game** out) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    potgame::LoadedGame loaded = potgame::instantiate(spec);
    *out = new pg_game{std::move(spec), std::move(loaded)};
  });
}

pg_result* wrap(potgame::RunResult run) {
  auto* r = new pg_result{std::move(run), {}, {}};
  r->report = r->run.report.dump(2) + "\n";
  r->body = r->run.report.at("body").dump();
  return r;
}

}  // namespace

extern "C" {

void pg_options_init(pg_options* options) {
  if (!options) return;
  *options = pg_options{};
  options->abs_tol = -1.0;
  options->rel_tol = -1.0;
  options->threads = 1;
}

pg_status pg_game_from_spec(const char* text, pg_game** out) {
  potgame::GameSpec spec;
  const pg_status s = guarded([&] {
    require(out, "out");
    require(text, "text");
    spec = potgame::parse_spec(text);
  });
  if (s != PG_OK) {
    if (out) *out = nullptr;
    return s;
  }
  return make_game(std::move(spec), out);
}

pg_status pg_game_from_file(const char* path, pg_game** out) {
  potgame::GameSpec spec;
  const pg_status s = guarded([&] {
    require(path, "path");
    spec = potgame::load_spec_file(path);
  });
  if (s != PG_OK) {
    if (out) *out = nullptr;
    return s;
  }
  return make_game(std::move(spec), out);
}

pg_status pg_game_from_generator(const char* name, const char* params,
                                 pg_game** out) {
  potgame::GameSpec spec;
  const pg_status s = guarded([&] {
    require(name, "name");
    spec = potgame::parse_spec(
        potgame::generator_spec_text(name, split_params(params)));
  });
  if (s != PG_OK) {
    if (out) *out = nullptr;
    return s;
  }
  return make_game(std::move(spec), out);
}

void pg_game_free(pg_game* game) { delete game; }

size_t pg_game_players(const pg_game* game) {
  return game ? game->loaded.game.players() : 0;
}

size_t pg_game_dims(const pg_game* game) {
  return game ? game->loaded.game.dims() : 0;
}

pg_status pg_game_evaluate(const pg_game* game, size_t player,
                           const double* coords, size_t count, double* out) {
  return guarded([&] {
    require(game, "game");
    require(coords, "coords");
    require(out, "out");
    const potgame::Game& g = game->loaded.game;
    if (count != g.players() * g.dims()) {
      throw potgame::Error(potgame::ErrorCode::kArgument,
                           "expected " +
                               std::to_string(g.players() * g.dims()) +
                               " coordinates, got " + std::to_string(count));
    }
    const potgame::ActionProfile x(g.players(), g.dims(),
                                   std::vector<double>(coords, coords + count));
    *out = g.evaluate(player, x);
  });
}

pg_status pg_game_describe(const pg_game* game, char** out) {
  return guarded([&] {
    require(game, "game");
    require(out, "out");
    *out = duplicate(potgame::describe(game->spec).dump(2));
  });
}

pg_status pg_check(const pg_game* game, const pg_options* options,
                   pg_result** out) {
  return guarded([&] {
    require(game, "game");
    require(out, "out");
    *out = nullptr;
    *out = wrap(potgame::run_check(game->spec, to_run_options(options)));
  });
}

pg_status pg_build(const pg_game* game, const pg_options* options,
                   pg_result** out) {
  return guarded([&] {
    require(game, "game");
    require(out, "out");
    *out = nullptr;
    *out = wrap(potgame::run_build(game->spec, to_run_options(options)));
  });
}

pg_verdict pg_result_verdict(const pg_result* result) {
  if (!result) return PG_INCONCLUSIVE;
  return static_cast<pg_verdict>(potgame::exit_status(result->run.verdict));
}

int pg_result_exit_status(const pg_result* result) {
  return result ? result->run.exit_status : 2;
}

const char* pg_result_report(const pg_result* result) {
  return result ? result->report.c_str() : "";
}

const char* pg_result_body(const pg_result* result) {
  return result ? result->body.c_str() : "";
}

const char* pg_result_table(const pg_result* result) {
  return result ? result->run.table.c_str() : "";
}

void pg_result_free(pg_result* result) { delete result; }

pg_status pg_zoo_spec(const char* name, const char* params, char** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = nullptr;
    *out = duplicate(potgame::generator_spec_text(name, split_params(params)));
  });
}

pg_status pg_spec_validate(const char* text, char** summary) {
  return guarded([&] {
    require(text, "text");
    if (summary) *summary = nullptr;
    const potgame::GameSpec spec = potgame::parse_spec(text);
    const nlohmann::json d = potgame::describe(spec);
    if (summary) *summary = duplicate(d.dump(2));
  });
}

void pg_string_free(char* s) { std::free(s); }

const char* pg_last_error(void) { return last_error.c_str(); }

const char* pg_status_name(pg_status status) {
  if (status == PG_OK) return "ok";
  if (status == PG_ERR_INTERNAL) return "internal";
  if (status > PG_OK && status < PG_ERR_INTERNAL) {
    return potgame::to_string(static_cast<potgame::ErrorCode>(status));
  }
  return "unknown";
}

int pg_status_exit_code(pg_status status) {
  return 2 + static_cast<int>(status == PG_OK ? PG_ERR_INTERNAL : status);
}

const char* pg_version(void) { return POTGAME_VERSION_STRING; }

}  // extern "C"
