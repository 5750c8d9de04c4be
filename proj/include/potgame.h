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

/* C interface to the potgame library. Every handle is opaque and owned by
 * the caller once returned; release it with the matching *_free function.
 * Functions returning pg_status leave a thread-local message retrievable
 * with pg_last_error() when they fail. Players are 0-based here, 1-based in
 * spec text and reports. */

#ifndef POTGAME_H_
#define POTGAME_H_

#include <stddef.h>
#include <stdint.h>

#if defined(POTGAME_BUILDING_LIBRARY)
#define PG_API __attribute__((visibility("default")))
#else
#define PG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pg_game pg_game;
typedef struct pg_result pg_result;

typedef enum pg_status {
  PG_OK = 0,
  PG_ERR_BOUNDS = 1,
  PG_ERR_ORACLE = 2,
  PG_ERR_PATH = 3,
  PG_ERR_ARGUMENT = 4,
  PG_ERR_ENUMERATION = 5,
  PG_ERR_PARSE = 6,
  PG_ERR_SEMANTIC = 7,
  PG_ERR_REFUSED = 8,
  PG_ERR_IO = 9,
  PG_ERR_INTERNAL = 10
} pg_status;

typedef enum pg_verdict {
  PG_POTENTIAL = 0,
  PG_NOT_POTENTIAL = 1,
  PG_INCONCLUSIVE = 2
} pg_verdict;

/* Unset fields fall back to the spec document, then to library defaults. */
typedef struct pg_options {
  const char* checkers; /* comma separated; NULL for the default set */
  size_t grid;          /* 0: unset */
  int has_seed;
  uint64_t seed;
  uint64_t budget;      /* 0: unset */
  double abs_tol;       /* negative: unset */
  double rel_tol;       /* negative: unset */
  unsigned threads;     /* 0 or 1: serial */
  int classify;
  const char* route;    /* hp, t6, t8 or all; NULL for all */
  size_t nash;          /* number of Nash candidates, 0 for none */
} pg_options;

PG_API void pg_options_init(pg_options* options);

PG_API pg_status pg_game_from_spec(const char* text, pg_game** out);
PG_API pg_status pg_game_from_file(const char* path, pg_game** out);
/* params: whitespace separated key=value pairs, may be NULL. */
PG_API pg_status pg_game_from_generator(const char* name, const char* params,
                                        pg_game** out);
PG_API void pg_game_free(pg_game* game);

PG_API size_t pg_game_players(const pg_game* game);
PG_API size_t pg_game_dims(const pg_game* game);
/* coords holds players * dims values, player blocks in order. */
PG_API pg_status pg_game_evaluate(const pg_game* game, size_t player,
                                  const double* coords, size_t count,
                                  double* out);
/* JSON summary of the instantiated game; free with pg_string_free. */
PG_API pg_status pg_game_describe(const pg_game* game, char** out);

PG_API pg_status pg_check(const pg_game* game, const pg_options* options,
                          pg_result** out);
PG_API pg_status pg_build(const pg_game* game, const pg_options* options,
                          pg_result** out);

PG_API pg_verdict pg_result_verdict(const pg_result* result);
/* 0 potential, 1 not potential, 2 inconclusive. */
PG_API int pg_result_exit_status(const pg_result* result);
/* Full report document, including the volatile header. */
PG_API const char* pg_result_report(const pg_result* result);
/* Report body only, compact; stable for a fixed spec, options and seed. */
PG_API const char* pg_result_body(const pg_result* result);
/* Potential table from pg_build; empty when nothing was validated. */
PG_API const char* pg_result_table(const pg_result* result);
PG_API void pg_result_free(pg_result* result);

/* Spec document for a generator invocation; free with pg_string_free. */
PG_API pg_status pg_zoo_spec(const char* name, const char* params, char** out);
/* Parses and instantiates a spec; on success *summary (if non-NULL)
 * receives a JSON summary to free with pg_string_free. */
PG_API pg_status pg_spec_validate(const char* text, char** summary);

PG_API void pg_string_free(char* s);
PG_API const char* pg_last_error(void);
PG_API const char* pg_status_name(pg_status status);
/* Process exit status for a failed call: always greater than 2. */
PG_API int pg_status_exit_code(pg_status status);
PG_API const char* pg_version(void);

#ifdef __cplusplus
}
#endif

#endif /* POTGAME_H_ */
