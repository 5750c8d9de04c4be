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

// Deterministic parallel sweep over an indexed sample space. Workers take
// contiguous index ranges; merging keeps the maximum residual and the lowest
// violating index, so results do not depend on the thread count.

#ifndef POTGAME_CORE_PARALLEL_HPP_
#define POTGAME_CORE_PARALLEL_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace potgame::detail {

struct SampleOutcome {
  bool evaluated = true;
  double residual = 0.0;
  bool violation = false;
};

struct SweepResult {
  double max_residual = 0.0;
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
  std::optional<std::uint64_t> first_violation;

  void add(std::uint64_t k, const SampleOutcome& o) {
    if (!o.evaluated) {
      ++skipped;
      return;
    }
    ++evaluated;
    max_residual = std::max(max_residual, o.residual);
    if (o.violation && !first_violation) first_violation = k;
  }

  void merge(const SweepResult& later) {
    max_residual = std::max(max_residual, later.max_residual);
    evaluated += later.evaluated;
    skipped += later.skipped;
    if (!first_violation) first_violation = later.first_violation;
  }
};

template <class Eval>
SweepResult sweep(std::uint64_t count, unsigned threads, const Eval& eval) {
  const std::uint64_t workers =
      std::clamp<std::uint64_t>(threads, 1, std::max<std::uint64_t>(count, 1));
  if (workers == 1) {
    SweepResult r;
    for (std::uint64_t k = 0; k < count; ++k) r.add(k, eval(k));
    return r;
  }
  std::vector<SweepResult> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::uint64_t begin = count * w / workers;
        const std::uint64_t end = count * (w + 1) / workers;
        try {
          for (std::uint64_t k = begin; k < end; ++k) {
            partial[w].add(k, eval(k));
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SweepResult r;
  for (const auto& p : partial) r.merge(p);
  return r;
}

}  // namespace potgame::detail

#endif  // POTGAME_CORE_PARALLEL_HPP_
