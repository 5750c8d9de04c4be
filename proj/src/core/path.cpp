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

#include "core/path.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "core/error.hpp"
#include "core/rng.hpp"

namespace potgame {

namespace {

bool same_block(const ActionProfile& a, const ActionProfile& b,
                std::size_t player) {
  const auto x = a.block(player);
  const auto y = b.block(player);
  return std::equal(x.begin(), x.end(), y.begin());
}

void require_same_shape(const ActionProfile& a, const ActionProfile& b) {
  if (a.players() != b.players() || a.dims() != b.dims()) {
    throw Error(ErrorCode::kArgument, "profiles have different shapes");
  }
}

std::uint64_t choose2(std::uint64_t r) { return r * (r - 1) / 2; }

// p-th unordered pair (a, b), a < b, in lexicographic order.
std::pair<std::uint64_t, std::uint64_t> unordered_pair(std::uint64_t r,
                                                       std::uint64_t p) {
  for (std::uint64_t a = 0; a + 1 < r; ++a) {
    const std::uint64_t row = r - 1 - a;
    if (p < row) return {a, a + 1 + p};
    p -= row;
  }
  throw Error(ErrorCode::kEnumeration, "pair index out of range");
}

}  // namespace

Path Path::from_vertices(std::vector<ActionProfile> vertices) {
  if (vertices.empty()) {
    throw Error(ErrorCode::kPath, "a path needs at least one vertex");
  }
  std::vector<std::size_t> deviators;
  for (std::size_t e = 1; e < vertices.size(); ++e) {
    const ActionProfile& prev = vertices[e - 1];
    const ActionProfile& next = vertices[e];
    if (prev.players() != next.players() || prev.dims() != next.dims()) {
      throw Error(ErrorCode::kPath, "path vertices have different shapes");
    }
    std::size_t moved = 0;
    std::size_t deviator = 0;
    for (std::size_t i = 0; i < prev.players(); ++i) {
      if (!same_block(prev, next, i)) {
        ++moved;
        deviator = i;
      }
    }
    if (moved != 1) {
      throw Error(ErrorCode::kPath,
                  "step " + std::to_string(e) + " moves " +
                      std::to_string(moved) +
                      " players; a path step needs exactly one deviator");
    }
    deviators.push_back(deviator);
  }
  return Path(std::move(vertices), std::move(deviators));
}

Path Path::rectangle(const ActionProfile& z, std::size_t i,
                     std::span<const double> target_i, std::size_t j,
                     std::span<const double> target_j) {
  ActionProfile a = z;
  a.set_block(i, target_i);
  ActionProfile b = a;
  b.set_block(j, target_j);
  ActionProfile c = z;
  c.set_block(j, target_j);
  return from_vertices({z, std::move(a), std::move(b), std::move(c), z});
}

bool Path::closed() const { return vertices_.front() == vertices_.back(); }

bool Path::simple_closed_four() const {
  if (steps() != 4 || !closed()) return false;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (vertices_[a] == vertices_[b]) return false;
    }
  }
  return true;
}

Path Path::reversed() const {
  std::vector<ActionProfile> v(vertices_.rbegin(), vertices_.rend());
  std::vector<std::size_t> d(deviators_.rbegin(), deviators_.rend());
  return Path(std::move(v), std::move(d));
}

Path Path::concatenated(const Path& tail) const {
  if (!(vertices_.back() == tail.vertices_.front())) {
    throw Error(ErrorCode::kPath,
                "cannot concatenate paths that do not meet");
  }
  std::vector<ActionProfile> v = vertices_;
  v.insert(v.end(), tail.vertices_.begin() + 1, tail.vertices_.end());
  std::vector<std::size_t> d = deviators_;
  d.insert(d.end(), tail.deviators_.begin(), tail.deviators_.end());
  return Path(std::move(v), std::move(d));
}

double path_sum(const Game& game, const Path& path) {
  const auto& q = path.vertices();
  double total = 0.0;
  for (std::size_t e = 0; e < path.steps(); ++e) {
    const std::size_t i = path.deviators()[e];
    total += game.evaluate(i, q[e + 1]) - game.evaluate(i, q[e]);
  }
  return total;
}

double h_path(const Game& game, const ActionProfile& from,
              const ActionProfile& to) {
  require_same_shape(from, to);
  ActionProfile prev = from;
  double total = 0.0;
  for (std::size_t i = 0; i < from.players(); ++i) {
    ActionProfile next = prev;
    next.set_block(i, to.block(i));
    total += game.evaluate(i, next) - game.evaluate(i, prev);
    prev = std::move(next);
  }
  return total;
}

double h_p(const Game& game, const ActionProfile& y, const ActionProfile& z) {
  require_same_shape(y, z);
  ActionProfile to = z;
  for (std::size_t k = 0; k < z.size(); ++k) to[k] += y[k];
  return h_path(game, z, to);
}

Path canonical_path(const ActionProfile& from, const ActionProfile& to) {
  require_same_shape(from, to);
  std::vector<ActionProfile> vertices{from};
  for (std::size_t i = 0; i < from.players(); ++i) {
    if (same_block(vertices.back(), to, i)) continue;
    ActionProfile next = vertices.back();
    next.set_block(i, to.block(i));
    vertices.push_back(std::move(next));
  }
  return Path::from_vertices(std::move(vertices));
}

double h_pair(const Game& game, std::size_t i, std::size_t j,
              const ActionProfile& from, std::span<const double> target_i,
              std::span<const double> target_j) {
  if (i == j) {
    throw Error(ErrorCode::kArgument, "h_ij needs two distinct players");
  }
  ActionProfile first = from;
  first.set_block(i, target_i);
  ActionProfile second = first;
  second.set_block(j, target_j);
  return game.evaluate(i, first) - game.evaluate(i, from) +
         game.evaluate(j, second) - game.evaluate(j, first);
}

double h_ij(const Game& game, std::size_t i, std::size_t j,
            std::span<const double> y_j, std::span<const double> y_i,
            const ActionProfile& z) {
  if (i == j) {
    throw Error(ErrorCode::kArgument, "h_ij needs two distinct players");
  }
  if (y_i.size() != z.dims() || y_j.size() != z.dims()) {
    throw Error(ErrorCode::kArgument, "displacement block has wrong length");
  }
  std::vector<double> to_i(z.block(i).begin(), z.block(i).end());
  std::vector<double> to_j(z.block(j).begin(), z.block(j).end());
  for (std::size_t m = 0; m < z.dims(); ++m) {
    to_i[m] += y_i[m];
    to_j[m] += y_j[m];
  }
  return h_pair(game, i, j, z, to_i, to_j);
}

ActionProfile truncated(const ActionProfile& z, std::size_t keep,
                        const ActionProfile& base) {
  require_same_shape(z, base);
  ActionProfile out = base;
  for (std::size_t i = 0; i < std::min(keep, z.players()); ++i) {
    out.set_block(i, z.block(i));
  }
  return out;
}

FourCycleEnumerator::FourCycleEnumerator(const GridSampler& sampler,
                                         std::uint64_t budget)
    : sampler_(&sampler) {
  const std::size_t players = sampler.space().players();
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < players; ++i) {
    for (std::size_t j = i + 1; j < players; ++j) {
      const std::uint64_t ri = sampler.block_count(i);
      const std::uint64_t rj = sampler.block_count(j);
      if (ri < 2 || rj < 2) continue;
      std::uint64_t others = 1;
      for (std::size_t k = 0; k < players; ++k) {
        if (k != i && k != j) others *= sampler.block_count(k);
      }
      PairBlock block{i, j, offset, others, choose2(ri), choose2(rj)};
      offset += others * block.pairs_i * block.pairs_j;
      pairs_.push_back(block);
    }
  }
  if (pairs_.empty()) {
    throw Error(ErrorCode::kEnumeration,
                "four-cycles need two players with at least two grid points");
  }
  samples_ = SampleSet::subsample(
      offset, budget, sampler.config().seed ^ stream_tag("four-cycles"));
}

Path FourCycleEnumerator::operator[](std::uint64_t k) const {
  return cell(samples_[k]);
}

Path FourCycleEnumerator::cell(std::uint64_t index) const {
  auto it = std::upper_bound(
      pairs_.begin(), pairs_.end(), index,
      [](std::uint64_t v, const PairBlock& b) { return v < b.offset; });
  const PairBlock& b = *(it - 1);
  std::uint64_t r = index - b.offset;
  const std::uint64_t pj = r % b.pairs_j;
  r /= b.pairs_j;
  const std::uint64_t pi = r % b.pairs_i;
  std::uint64_t others = r / b.pairs_i;

  const GridSampler& s = *sampler_;
  ActionProfile z =
      ActionProfile::zeros(s.space().players(), s.space().dims());
  for (std::size_t k = s.space().players(); k-- > 0;) {
    if (k == b.i || k == b.j) continue;
    s.write_block(z, k, others % s.block_count(k));
    others /= s.block_count(k);
  }
  const auto [ai, bi] = unordered_pair(s.block_count(b.i), pi);
  const auto [aj, bj] = unordered_pair(s.block_count(b.j), pj);
  s.write_block(z, b.i, ai);
  s.write_block(z, b.j, aj);
  return Path::rectangle(z, b.i, s.block(b.i, bi), b.j, s.block(b.j, bj));
}

std::vector<Path> FourCycleEnumerator::collect() const {
  std::vector<Path> out;
  out.reserve(size());
  for (std::uint64_t k = 0; k < size(); ++k) out.push_back((*this)[k]);
  return out;
}

}  // namespace potgame
