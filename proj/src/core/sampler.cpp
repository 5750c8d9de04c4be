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

#include "core/sampler.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_set>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace potgame {

namespace {

constexpr std::uint64_t kMaxPopulation = std::uint64_t{1} << 62;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMaxPopulation / a) {
    throw Error(ErrorCode::kArgument, "grid is too large to index");
  }
  return a * b;
}

}  // namespace

SampleSet SampleSet::all(std::uint64_t population) {
  SampleSet s;
  s.population_ = population;
  return s;
}

SampleSet SampleSet::subsample(std::uint64_t population, std::uint64_t budget,
                               std::uint64_t seed) {
  if (budget >= population) return all(population);
  // Floyd's algorithm: `budget` distinct draws without materializing the
  // population.
  SplitMix64 rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(budget * 2);
  for (std::uint64_t j = population - budget; j < population; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  std::vector<std::uint64_t> picks(chosen.begin(), chosen.end());
  std::sort(picks.begin(), picks.end());
  SampleSet s;
  s.population_ = population;
  s.picks_ = std::move(picks);
  return s;
}

GridSampler::GridSampler(const ActionSpace& space, SamplingConfig config)
    : space_(space), config_(config) {
  axes_.resize(space_.size());
  for (std::size_t k = 0; k < space_.size(); ++k) {
    const std::size_t r = space_.resolution(k);
    const double lo = space_.lower(k);
    const double hi = space_.upper(k);
    auto& axis = axes_[k];
    axis.resize(r);
    if (r == 1) {
      axis[0] = lo;
      continue;
    }
    for (std::size_t t = 0; t < r; ++t) {
      axis[t] = t + 1 == r ? hi
                           : lo + (hi - lo) * static_cast<double>(t) /
                                      static_cast<double>(r - 1);
    }
  }
  block_counts_.assign(space_.players(), 1);
  for (std::size_t i = 0; i < space_.players(); ++i) {
    for (std::size_t m = 0; m < space_.dims(); ++m) {
      block_counts_[i] = checked_mul(block_counts_[i],
                                     axes_[i * space_.dims() + m].size());
    }
    profile_count_ = checked_mul(profile_count_, block_counts_[i]);
  }
}

std::vector<double> GridSampler::block(std::size_t player,
                                       std::uint64_t index) const {
  const std::size_t n = space_.dims();
  std::vector<double> out(n);
  for (std::size_t m = n; m-- > 0;) {
    const auto& axis = axes_[player * n + m];
    out[m] = axis[index % axis.size()];
    index /= axis.size();
  }
  return out;
}

void GridSampler::write_block(ActionProfile& x, std::size_t player,
                              std::uint64_t index) const {
  const std::size_t n = space_.dims();
  for (std::size_t m = n; m-- > 0;) {
    const auto& axis = axes_[player * n + m];
    x(player, m) = axis[index % axis.size()];
    index /= axis.size();
  }
}

ActionProfile GridSampler::profile(std::uint64_t index) const {
  ActionProfile x = ActionProfile::zeros(space_.players(), space_.dims());
  for (std::size_t i = space_.players(); i-- > 0;) {
    write_block(x, i, index % block_counts_[i]);
    index /= block_counts_[i];
  }
  return x;
}

std::vector<ActionProfile> GridSampler::profiles() const {
  std::vector<ActionProfile> out;
  out.reserve(profile_count_);
  for (std::uint64_t k = 0; k < profile_count_; ++k) out.push_back(profile(k));
  return out;
}

SampleSet GridSampler::select(std::uint64_t population,
                              std::string_view stream) const {
  return SampleSet::subsample(population, config_.budget,
                              config_.seed ^ stream_tag(stream));
}

ActionProfile GridSampler::random_profile(std::uint64_t k) const {
  SplitMix64 rng(config_.seed ^ stream_tag("random-profile") ^
                 (k * 0x9e3779b97f4a7c15ULL));
  ActionProfile x = ActionProfile::zeros(space_.players(), space_.dims());
  for (std::size_t c = 0; c < space_.size(); ++c) {
    x[c] = space_.frozen(c) ? space_.lower(c)
                            : rng.uniform(space_.lower(c), space_.upper(c));
  }
  return x;
}

}  // namespace potgame
