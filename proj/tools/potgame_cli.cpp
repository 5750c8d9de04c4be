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

// potgame command-line tool. Talks to the library only through potgame.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "potgame.h"

namespace {

struct Common {
  std::size_t grid = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  double tol = -1.0;
  double rel_tol = -1.0;
  unsigned threads = 1;
  std::string report_path;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--grid", c.grid, "grid points per axis (>= 2)");
  cmd->add_option("--seed", c.seed, "sampling seed");
  cmd->add_option("--budget", c.budget, "sample budget per checker");
  cmd->add_option("--tol", c.tol, "absolute tolerance");
  cmd->add_option("--rel-tol", c.rel_tol, "relative tolerance");
  cmd->add_option("--threads", c.threads, "worker threads")
      ->check(CLI::Range(1u, 256u));
  cmd->add_option("--report", c.report_path,
                  "write the report here instead of stdout");
}

pg_options to_options(const Common& c, const CLI::App* cmd) {
  pg_options o;
  pg_options_init(&o);
  o.grid = c.grid;
  o.has_seed = cmd->count("--seed") > 0;
  o.seed = c.seed;
  o.budget = c.budget;
  o.abs_tol = c.tol;
  o.rel_tol = c.rel_tol;
  o.threads = c.threads;
  return o;
}

int report_error(pg_status status) {
  std::cerr << "potgame: " << pg_status_name(status) << " error: "
            << pg_last_error() << "\n";
  return pg_status_exit_code(status);
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "potgame: io error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

int emit(pg_result* result, const std::string& report_path,
         const std::string& table_path) {
  int status = pg_result_exit_status(result);
  if (report_path.empty()) {
    std::cout << pg_result_report(result);
  } else if (!write_text(report_path, pg_result_report(result))) {
    status = pg_status_exit_code(PG_ERR_IO);
  }
  if (!table_path.empty() && status <= 2) {
    if (!write_text(table_path, pg_result_table(result))) {
      status = pg_status_exit_code(PG_ERR_IO);
    }
  }
  pg_result_free(result);
  return status;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact potential game checker and potential builder"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pg_version()));

  std::string spec_path;

  Common check_opts;
  std::string checkers;
  bool classify = false;
  CLI::App* check = app.add_subcommand("check", "test a game for an exact potential");
  check->add_option("spec", spec_path, "game-spec file")->required();
  check->add_option("--checkers", checkers,
                    "comma list of def,cycles,pairwise,partials,funceq,aggpairwise");
  check->add_flag("--classify", classify,
                  "add abnormality and aggregative diagnostics");
  add_common(check, check_opts);

  Common build_opts;
  std::string route = "all";
  std::size_t nash = 0;
  std::string table_path;
  CLI::App* build = app.add_subcommand("build", "construct and validate a potential");
  build->add_option("spec", spec_path, "game-spec file")->required();
  build->add_option("--route", route, "hp, t6, t8 or all")
      ->check(CLI::IsMember({"hp", "t6", "t8", "all"}));
  build->add_option("--nash", nash, "report the K best Nash candidates");
  build->add_option("--table", table_path, "write the phi table (CSV) here");
  add_common(build, build_opts);

  std::string generator;
  std::vector<std::string> params;
  std::string out_path;
  CLI::App* zoo = app.add_subcommand("zoo", "write a spec for a built-in game");
  zoo->add_option("generator", generator,
                  "cournot, product, abnormal, random or zero")
      ->required();
  zoo->add_option("params", params, "key=value parameters");
  zoo->add_option("--out", out_path, "spec file to write (default stdout)");

  CLI::App* validate = app.add_subcommand("validate", "parse and check a spec");
  validate->add_option("spec", spec_path, "game-spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pg_status_exit_code(PG_ERR_ARGUMENT);
  }

  if (zoo->parsed()) {
    char* text = nullptr;
    const pg_status s = pg_zoo_spec(generator.c_str(), join(params).c_str(), &text);
    if (s != PG_OK) return report_error(s);
    std::string doc = text;
    pg_string_free(text);
    if (out_path.empty()) {
      std::cout << doc;
    } else if (!write_text(out_path, doc)) {
      return pg_status_exit_code(PG_ERR_IO);
    }
    return 0;
  }

  if (validate->parsed()) {
    std::ifstream in(spec_path, std::ios::binary);
    if (!in) {
      std::cerr << "potgame: io error: cannot read " << spec_path << "\n";
      return pg_status_exit_code(PG_ERR_IO);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    char* summary = nullptr;
    const pg_status s = pg_spec_validate(buf.str().c_str(), &summary);
    if (s != PG_OK) return report_error(s);
    std::cout << summary << "\n";
    pg_string_free(summary);
    return 0;
  }

  pg_game* game = nullptr;
  pg_status s = pg_game_from_file(spec_path.c_str(), &game);
  if (s != PG_OK) return report_error(s);

  pg_result* result = nullptr;
  std::string report_path;
  if (check->parsed()) {
    pg_options o = to_options(check_opts, check);
    o.checkers = checkers.empty() ? nullptr : checkers.c_str();
    o.classify = classify;
    report_path = check_opts.report_path;
    s = pg_check(game, &o, &result);
  } else {
    pg_options o = to_options(build_opts, build);
    o.route = route.c_str();
    o.nash = nash;
    report_path = build_opts.report_path;
    s = pg_build(game, &o, &result);
  }
  pg_game_free(game);
  if (s != PG_OK) return report_error(s);
  return emit(result, report_path, table_path);
}
