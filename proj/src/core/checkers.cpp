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

#include "core/checkers.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <utility>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/path.hpp"

namespace potgame {

namespace {

using detail::SampleOutcome;
using detail::SweepResult;

CheckReport start_report(const char* id, const SampleSet& set,
                         const GridSampler& sampler, const Tolerances& tol) {
  CheckReport r;
  r.checker = id;
  r.population = set.population();
  r.exhaustive = set.exhaustive();
  r.tolerance = tol.abs_tol;
  r.rel_tolerance = tol.rel_tol;
  r.seed = sampler.config().seed;
  if (!set.exhaustive()) {
    r.notes.push_back("sampled " + std::to_string(set.size()) + " of " +
                      std::to_string(set.population()) +
                      " grid samples (seeded)");
  }
  return r;
}

template <class WitnessFn>
void finish_report(CheckReport& r, const SweepResult& sweep,
                   WitnessFn make_witness) {
  r.max_residual = sweep.max_residual;
  r.samples = sweep.evaluated;
  r.skipped = sweep.skipped;
  if (sweep.first_violation) {
    r.verdict = Verdict::kNotPotential;
    r.witness = make_witness(*sweep.first_violation);
  } else if (sweep.evaluated > 0) {
    r.verdict = Verdict::kPotential;
  } else {
    r.verdict = Verdict::kInconclusive;
    r.notes.push_back("no samples evaluated");
  }
  if (sweep.skipped > 0) {
    r.notes.push_back(std::to_string(sweep.skipped) +
                      " samples skipped (outside the box)");
  }
}

// Locates the segment containing `index` in a list of cumulative offsets.
std::size_t segment_of(const std::vector<std::uint64_t>& offsets,
                       std::uint64_t index) {
  auto it = std::upper_bound(offsets.begin(), offsets.end(), index);
  return static_cast<std::size_t>(it - offsets.begin()) - 1;
}

std::vector<double> to_vector(std::span<const double> s) {
  return {s.begin(), s.end()};
}

// --- definition ------------------------------------------------------------

struct DeviationSample {
  ActionProfile x;
  ActionProfile moved;
  std::size_t player;
};

}  // namespace

CheckReport check_definition(const Game& game, const PotentialFn& phi,
                             const GridSampler& sampler,
                             const Tolerances& tol) {
  const std::size_t players = game.players();
  std::vector<std::uint64_t> offsets{0};
  for (std::size_t i = 0; i < players; ++i) {
    offsets.push_back(offsets.back() + sampler.block_count(i));
  }
  const std::uint64_t per_profile = offsets.back();
  const SampleSet set =
      sampler.select(sampler.profile_count() * per_profile, "definition");
  CheckReport report = start_report("def", set, sampler, tol);

  auto locate = [&](std::uint64_t index) {
    const std::uint64_t k = set[index];
    const std::uint64_t r = k % per_profile;
    const std::size_t i = segment_of(offsets, r);
    DeviationSample s{sampler.profile(k / per_profile), {}, i};
    s.moved = s.x;
    sampler.write_block(s.moved, i, r - offsets[i]);
    return s;
  };
  struct Terms {
    double payoff_change, potential_change, scale;
  };
  auto terms = [&](const DeviationSample& s) {
    const double f0 = game.evaluate(s.player, s.x);
    const double f1 = game.evaluate(s.player, s.moved);
    const double p0 = phi(s.x);
    const double p1 = phi(s.moved);
    return Terms{f1 - f0, p1 - p0,
                 std::max({std::fabs(f0), std::fabs(f1), std::fabs(p0),
                           std::fabs(p1)})};
  };

  const SweepResult sweep =
      detail::sweep(set.size(), sampler.config().threads, [&](std::uint64_t k) {
        const DeviationSample s = locate(k);
        const Terms t = terms(s);
        const double residual = std::fabs(t.payoff_change - t.potential_change);
        return SampleOutcome{true, residual, tol.violates(residual, t.scale)};
      });
  finish_report(report, sweep, [&](std::uint64_t k) {
    const DeviationSample s = locate(k);
    const Terms t = terms(s);
    return Witness{"deviation",
                   {s.x, s.moved},
                   {s.player},
                   t.payoff_change - t.potential_change,
                   {{"payoff_change", t.payoff_change},
                    {"potential_change", t.potential_change}}};
  });
  return report;
}

CheckReport check_four_cycles(const Game& game, const GridSampler& sampler,
                              std::uint64_t budget, const Tolerances& tol) {
  const FourCycleEnumerator cycles(sampler, budget);
  CheckReport report;
  report.checker = "cycles";
  report.population = cycles.population();
  report.exhaustive = cycles.exhaustive();
  report.tolerance = tol.abs_tol;
  report.rel_tolerance = tol.rel_tol;
  report.seed = sampler.config().seed;
  if (!cycles.exhaustive()) {
    report.notes.push_back("sampled " + std::to_string(cycles.size()) +
                           " of " + std::to_string(cycles.population()) +
                           " four-cycles (seeded)");
  }

  auto measure = [&](const Path& q) {
    double total = 0.0;
    double scale = 0.0;
    for (std::size_t e = 0; e < q.steps(); ++e) {
      const std::size_t i = q.deviators()[e];
      const double a = game.evaluate(i, q.vertices()[e + 1]);
      const double b = game.evaluate(i, q.vertices()[e]);
      total += a - b;
      scale = std::max({scale, std::fabs(a), std::fabs(b)});
    }
    return std::pair{total, scale};
  };

  const SweepResult sweep = detail::sweep(
      cycles.size(), sampler.config().threads, [&](std::uint64_t k) {
        const auto [value, scale] = measure(cycles[k]);
        const double residual = std::fabs(value);
        return SampleOutcome{true, residual, tol.violates(residual, scale)};
      });
  if (cycles.size() == 0) {
    report.notes.push_back("empty cycle budget");
  }
  finish_report(report, sweep, [&](std::uint64_t k) {
    const Path q = cycles[k];
    const double value = measure(q).first;
    return Witness{"cycle", q.vertices(), q.deviators(), value, {}};
  });
  return report;
}

CheckReport check_four_cycles(const Game& game, const GridSampler& sampler,
                              const Tolerances& tol) {
  return check_four_cycles(game, sampler, sampler.config().budget, tol);
}

PairwiseTerms pairwise_terms(const Game& game, const PairwiseSample& s) {
  const std::size_t n = game.dims();
  if (s.i == s.j) {
    throw Error(ErrorCode::kArgument, "pairwise sample needs two players");
  }
  if (s.y_i.size() != n || s.y_j.size() != n) {
    throw Error(ErrorCode::kArgument, "displacement block has wrong length");
  }
  const ActionProfile& base = game.space().base();
  std::vector<double> to_i = to_vector(s.z.block(s.i));
  std::vector<double> to_j = to_vector(s.z.block(s.j));
  for (std::size_t m = 0; m < n; ++m) {
    to_i[m] += s.y_i[m];
    to_j[m] += s.y_j[m];
  }
  ActionProfile origin = s.z;
  origin.set_block(s.i, base.block(s.i));
  origin.set_block(s.j, base.block(s.j));
  const double lhs = h_pair(game, s.i, s.j, s.z, to_i, to_j);
  const double rhs = h_pair(game, s.i, s.j, origin, to_i, to_j) -
                     h_pair(game, s.i, s.j, origin, s.z.block(s.i),
                            s.z.block(s.j));
  return {lhs, rhs};
}

namespace {

struct PairLayout {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::uint64_t> offsets{0};
};

PairLayout ordered_pairs(const GridSampler& sampler) {
  PairLayout layout;
  const std::size_t players = sampler.space().players();
  for (std::size_t i = 0; i < players; ++i) {
    for (std::size_t j = 0; j < players; ++j) {
      if (i == j) continue;
      layout.pairs.emplace_back(i, j);
      layout.offsets.push_back(layout.offsets.back() +
                               sampler.block_count(i) * sampler.block_count(j));
    }
  }
  return layout;
}

Witness pairwise_witness(const PairwiseSample& s, const PairwiseTerms& t,
                         const ActionProfile& base) {
  ActionProfile target = s.z;
  for (std::size_t m = 0; m < s.z.dims(); ++m) {
    target(s.i, m) += s.y_i[m];
    target(s.j, m) += s.y_j[m];
  }
  ActionProfile origin = s.z;
  origin.set_block(s.i, base.block(s.i));
  origin.set_block(s.j, base.block(s.j));
  return Witness{"pairwise",
                 {s.z, std::move(target), std::move(origin)},
                 {s.i, s.j},
                 t.lhs - t.rhs,
                 {{"lhs", t.lhs}, {"rhs", t.rhs}}};
}

}  // namespace

CheckReport check_pairwise(const Game& game, const GridSampler& sampler,
                           const Tolerances& tol) {
  const PairLayout layout = ordered_pairs(sampler);
  const std::uint64_t per_anchor = layout.offsets.back();
  const SampleSet set =
      sampler.select(sampler.profile_count() * per_anchor, "pairwise");
  CheckReport report = start_report("pairwise", set, sampler, tol);

  auto locate = [&](std::uint64_t index) {
    const std::uint64_t k = set[index];
    const std::uint64_t r = k % per_anchor;
    const std::size_t p = segment_of(layout.offsets, r);
    const auto [i, j] = layout.pairs[p];
    const std::uint64_t local = r - layout.offsets[p];
    const std::uint64_t rj = sampler.block_count(j);
    PairwiseSample s{i, j, sampler.profile(k / per_anchor), {}, {}};
    s.y_i = sampler.block(i, local / rj);
    s.y_j = sampler.block(j, local % rj);
    // Targets are grid blocks; store them as displacements from z.
    for (std::size_t m = 0; m < game.dims(); ++m) {
      s.y_i[m] -= s.z(i, m);
      s.y_j[m] -= s.z(j, m);
    }
    return s;
  };

  const SweepResult sweep = detail::sweep(
      set.size(), sampler.config().threads, [&](std::uint64_t k) {
        const PairwiseTerms t = pairwise_terms(game, locate(k));
        const double residual = std::fabs(t.lhs - t.rhs);
        const double scale = std::max(std::fabs(t.lhs), std::fabs(t.rhs));
        return SampleOutcome{true, residual, tol.violates(residual, scale)};
      });
  finish_report(report, sweep, [&](std::uint64_t k) {
    const PairwiseSample s = locate(k);
    return pairwise_witness(s, pairwise_terms(game, s), game.space().base());
  });
  return report;
}

CheckReport check_pairwise(const Game& game,
                           std::span<const PairwiseSample> samples,
                           const Tolerances& tol) {
  CheckReport report;
  report.checker = "pairwise";
  report.population = samples.size();
  report.tolerance = tol.abs_tol;
  report.rel_tolerance = tol.rel_tol;
  auto outcome = [&](const PairwiseSample& s) -> std::optional<PairwiseTerms> {
    try {
      return pairwise_terms(game, s);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kBounds) return std::nullopt;
      throw;
    }
  };
  SweepResult sweep;
  for (std::uint64_t k = 0; k < samples.size(); ++k) {
    const auto t = outcome(samples[k]);
    if (!t) {
      sweep.add(k, SampleOutcome{false, 0.0, false});
      continue;
    }
    const double residual = std::fabs(t->lhs - t->rhs);
    const double scale = std::max(std::fabs(t->lhs), std::fabs(t->rhs));
    sweep.add(k, SampleOutcome{true, residual, tol.violates(residual, scale)});
  }
  finish_report(report, sweep, [&](std::uint64_t k) {
    return pairwise_witness(samples[k], *outcome(samples[k]),
                            game.space().base());
  });
  return report;
}

CheckReport check_functional_equation(const Game& game,
                                      const GridSampler& sampler,
                                      const Tolerances& tol) {
  const std::uint64_t profiles = sampler.profile_count();
  const SampleSet set = sampler.select(profiles * profiles, "funceq");
  CheckReport report = start_report("funceq", set, sampler, tol);
  const ActionProfile& base = game.space().base();

  struct Terms {
    ActionProfile z, target;
    double lhs, rhs;
  };
  auto measure = [&](std::uint64_t index) {
    const std::uint64_t k = set[index];
    Terms t{sampler.profile(k / profiles), sampler.profile(k % profiles), 0, 0};
    t.lhs = h_path(game, t.z, t.target);
    t.rhs = h_path(game, base, t.target) - h_path(game, base, t.z);
    return t;
  };
  const SweepResult sweep = detail::sweep(
      set.size(), sampler.config().threads, [&](std::uint64_t k) {
        const Terms t = measure(k);
        const double residual = std::fabs(t.lhs - t.rhs);
        const double scale = std::max(std::fabs(t.lhs), std::fabs(t.rhs));
        return SampleOutcome{true, residual, tol.violates(residual, scale)};
      });
  finish_report(report, sweep, [&](std::uint64_t k) {
    Terms t = measure(k);
    return Witness{"point",
                   {std::move(t.z), std::move(t.target), base},
                   {},
                   t.lhs - t.rhs,
                   {{"lhs", t.lhs}, {"rhs", t.rhs}}};
  });
  if (!game.space().symmetric_about_base()) {
    report.notes.push_back(
        "box is not symmetric about the base point; only a violation is "
        "conclusive");
    if (report.verdict == Verdict::kPotential) {
      report.verdict = Verdict::kInconclusive;
    }
  }
  return report;
}

namespace {

// Central mixed difference d2 f / dx_a dx_b at x.
double mixed_difference(const PayoffOracle& f, const ActionProfile& x,
                        std::size_t a, std::size_t b, double h,
                        double& scale) {
  ActionProfile p = x;
  auto at = [&](double da, double db) {
    p[a] = x[a] + da;
    p[b] = x[b] + db;
    const double v = f(p);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kOracle,
                  "payoff is not finite at " + to_string(p));
    }
    scale = std::max(scale, std::fabs(v));
    return v;
  };
  const double pp = at(h, h);
  const double pm = at(h, -h);
  const double mp = at(-h, h);
  const double mm = at(-h, -h);
  return (pp - pm - mp + mm) / (4.0 * h * h);
}

}  // namespace

CheckReport check_cross_partials(const Game& game, const GridSampler& sampler,
                                 const Tolerances& tol) {
  const ActionSpace& space = game.space();
  const std::uint64_t grid_points = sampler.profile_count();
  const SampleSet grid_set = sampler.select(grid_points, "partials");
  const std::uint64_t extra = sampler.config().random_points;
  const double h = tol.fd_step;

  CheckReport report;
  report.checker = "partials";
  report.population = grid_points + extra;
  report.exhaustive = grid_set.exhaustive();
  report.tolerance = tol.fd_tol;
  report.rel_tolerance = 0.0;
  report.seed = sampler.config().seed;
  if (!(h > 0.0)) {
    throw Error(ErrorCode::kArgument, "finite-difference step must be > 0");
  }
  if (!game.smooth()) {
    report.verdict = Verdict::kInconclusive;
    report.notes.push_back("payoffs are not declared smooth");
    return report;
  }

  auto point = [&](std::uint64_t k) {
    return k < grid_set.size() ? sampler.profile(grid_set[k])
                               : sampler.random_profile(k - grid_set.size());
  };
  auto stencil_fits = [&](const ActionProfile& x) {
    for (std::size_t c = 0; c < space.size(); ++c) {
      if (space.frozen(c)) continue;
      if (x[c] - h < space.lower(c) || x[c] + h > space.upper(c)) return false;
    }
    return true;
  };
  struct Worst {
    double residual = -1.0;
    double di = 0.0, dj = 0.0, scale = 0.0;
    std::size_t i = 0, j = 0, a = 0, b = 0;
  };
  auto measure = [&](const ActionProfile& x) {
    Worst worst;
    const std::size_t n = space.dims();
    for (std::size_t i = 0; i < space.players(); ++i) {
      for (std::size_t j = i + 1; j < space.players(); ++j) {
        for (std::size_t p = 0; p < n; ++p) {
          for (std::size_t q = 0; q < n; ++q) {
            const std::size_t a = i * n + p;
            const std::size_t b = j * n + q;
            if (space.frozen(a) || space.frozen(b)) continue;
            double scale = 0.0;
            const double di =
                mixed_difference(game.payoff(i), x, a, b, h, scale);
            const double dj =
                mixed_difference(game.payoff(j), x, a, b, h, scale);
            const double r = std::fabs(di - dj);
            if (r > worst.residual) worst = {r, di, dj, scale, i, j, a, b};
          }
        }
      }
    }
    return worst;
  };
  // Rounding in the four-point stencil grows like eps * |f| / h^2.
  auto violates = [&](const Worst& w) {
    return w.residual > tol.fd_tol + 4.0 * DBL_EPSILON * w.scale / (h * h);
  };

  const SweepResult sweep = detail::sweep(
      grid_set.size() + extra, sampler.config().threads,
      [&](std::uint64_t k) {
        const ActionProfile x = point(k);
        if (!stencil_fits(x)) return SampleOutcome{false, 0.0, false};
        const Worst w = measure(x);
        if (w.residual < 0.0) return SampleOutcome{true, 0.0, false};
        return SampleOutcome{true, w.residual, violates(w)};
      });
  report.max_residual = sweep.max_residual;
  report.samples = sweep.evaluated;
  report.skipped = sweep.skipped;
  if (sweep.first_violation) {
    const ActionProfile x = point(*sweep.first_violation);
    const Worst w = measure(x);
    report.verdict = Verdict::kNotPotential;
    report.witness = Witness{
        "point",
        {x},
        {w.i, w.j},
        w.di - w.dj,
        {{"d2f_i", w.di},
         {"d2f_j", w.dj},
         {"coord_i", static_cast<double>(w.a % space.dims() + 1)},
         {"coord_j", static_cast<double>(w.b % space.dims() + 1)}}};
  } else if (sweep.evaluated > 0) {
    report.verdict = Verdict::kPotential;
  } else {
    report.verdict = Verdict::kInconclusive;
    report.notes.push_back("no interior sample fits the difference stencil");
  }
  if (sweep.skipped > 0) {
    report.notes.push_back(std::to_string(sweep.skipped) +
                           " samples skipped (stencil leaves the box)");
  }
  return report;
}

bool AbnormalReport::abnormal() const {
  return std::any_of(flagged.begin(), flagged.end(), [](bool b) { return b; });
}

AbnormalReport check_abnormal(const Game& game, const GridSampler& sampler,
                              const Tolerances& tol) {
  const std::size_t players = game.players();
  AbnormalReport out;
  out.flagged.assign(players, false);
  out.spread.assign(players, 0.0);
  for (std::size_t i = 0; i < players; ++i) {
    const std::uint64_t own = sampler.block_count(i);
    if (own < 2) {
      throw Error(ErrorCode::kArgument,
                  "player " + std::to_string(i + 1) +
                      " has a single grid point; abnormality needs two");
    }
    const std::uint64_t others = sampler.profile_count() / own;
    const SampleSet set = sampler.select(others, "abnormal");
    double spread = 0.0;
    double scale = 0.0;
    for (std::uint64_t k = 0; k < set.size(); ++k) {
      // Expand the others-configuration index into a full grid profile with
      // player i at block 0.
      std::uint64_t rest = set[k];
      ActionProfile x = ActionProfile::zeros(players, game.dims());
      for (std::size_t p = players; p-- > 0;) {
        if (p == i) continue;
        sampler.write_block(x, p, rest % sampler.block_count(p));
        rest /= sampler.block_count(p);
      }
      double lo = 0.0, hi = 0.0;
      for (std::uint64_t b = 0; b < own; ++b) {
        sampler.write_block(x, i, b);
        const double v = game.evaluate(i, x);
        lo = b == 0 ? v : std::min(lo, v);
        hi = b == 0 ? v : std::max(hi, v);
        scale = std::max(scale, std::fabs(v));
      }
      spread = std::max(spread, hi - lo);
      out.samples += own;
    }
    out.spread[i] = spread;
    out.flagged[i] = !tol.violates(spread, scale);
  }
  return out;
}

NonvanishingReport check_aggregative_nonvanishing(const AggregativeGame& ag,
                                                  const GridSampler& sampler,
                                                  std::uint64_t max_samples,
                                                  double threshold) {
  const Game& game = ag.base();
  const ActionProfile& base = game.space().base();
  NonvanishingReport out;
  const SampleSet set = sampler.select(sampler.profile_count(), "nonvanishing");
  const std::uint64_t limit = std::min(max_samples, set.size());
  for (std::uint64_t k = 0; k < limit; ++k) {
    const ActionProfile z = sampler.profile(set[k]);
    const double value = h_path(game, base, z);
    ++out.samples;
    if (std::fabs(value) > threshold) {
      out.found = true;
      out.witness = z;
      out.value = value;
      return out;
    }
  }
  out.notes.push_back("h_P(z, 0) vanished on all " +
                      std::to_string(out.samples) + " samples");

  // Slice z = (0, ..., 0, u, v): if the second-to-last player's change from
  // the base vanishes for every u and the last player's payoff ignores v,
  // the last player is abnormal, which an aggregative game cannot be.
  const std::size_t last = game.players() - 1;
  const std::size_t prev = last - 1;
  bool prev_flat = true;
  bool last_flat = true;
  for (std::uint64_t u = 0; u < sampler.block_count(prev); ++u) {
    ActionProfile zu = base;
    sampler.write_block(zu, prev, u);
    if (std::fabs(game.evaluate(prev, zu) - game.evaluate(prev, base)) >
        threshold) {
      prev_flat = false;
    }
    const double anchor = game.evaluate(last, zu);
    for (std::uint64_t v = 0; v < sampler.block_count(last); ++v) {
      ActionProfile zuv = zu;
      sampler.write_block(zuv, last, v);
      if (std::fabs(game.evaluate(last, zuv) - anchor) > threshold) {
        last_flat = false;
      }
    }
  }
  out.last_player_abnormal = prev_flat && last_flat;
  if (out.last_player_abnormal) {
    out.notes.push_back(
        "player " + std::to_string(last + 1) +
        " is abnormal along the (0, ..., 0, u, v) slice; the game violates "
        "the aggregative premise");
  }
  return out;
}

namespace {

// Distinct values of sum_{k not in {i, j}} x_k over the grid, each a
// length-n vector, merged within a relative 1e-12.
std::vector<std::vector<double>> distinct_aggregates(
    const GridSampler& sampler, std::size_t i, std::size_t j) {
  const std::size_t n = sampler.space().dims();
  std::vector<std::vector<double>> sums{std::vector<double>(n, 0.0)};
  auto close = [](const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t m = 0; m < a.size(); ++m) {
      if (std::fabs(a[m] - b[m]) >
          1e-12 * std::max({1.0, std::fabs(a[m]), std::fabs(b[m])})) {
        return false;
      }
    }
    return true;
  };
  for (std::size_t k = 0; k < sampler.space().players(); ++k) {
    if (k == i || k == j) continue;
    std::vector<std::vector<double>> next;
    for (const auto& s : sums) {
      for (std::uint64_t b = 0; b < sampler.block_count(k); ++b) {
        std::vector<double> v = sampler.block(k, b);
        for (std::size_t m = 0; m < n; ++m) v[m] += s[m];
        next.push_back(std::move(v));
      }
    }
    std::sort(next.begin(), next.end());
    std::vector<std::vector<double>> merged;
    for (auto& v : next) {
      if (merged.empty() || !close(merged.back(), v)) {
        merged.push_back(std::move(v));
      }
    }
    sums = std::move(merged);
  }
  return sums;
}

}  // namespace

CheckReport check_pairwise_aggregative(const AggregativeGame& ag,
                                       const GridSampler& sampler,
                                       const Tolerances& tol) {
  const std::size_t players = ag.players();
  const std::size_t n = ag.base().dims();
  if (players < 3) {
    throw Error(ErrorCode::kArgument,
                "aggregate reduction needs a proxy player outside the pair "
                "(at least 3 players)");
  }
  const ActionProfile& base = ag.base().space().base();

  struct PairData {
    std::size_t i, j, proxy;
    std::vector<std::vector<double>> aggregates;
    std::uint64_t ri, rj;
  };
  std::vector<PairData> pairs;
  std::vector<std::uint64_t> offsets{0};
  for (std::size_t i = 0; i < players; ++i) {
    for (std::size_t j = i + 1; j < players; ++j) {
      std::size_t proxy = 0;
      while (proxy == i || proxy == j) ++proxy;
      PairData d{i, j, proxy, distinct_aggregates(sampler, i, j),
                 sampler.block_count(i), sampler.block_count(j)};
      offsets.push_back(offsets.back() + d.ri * d.ri * d.rj * d.rj *
                                             d.aggregates.size());
      pairs.push_back(std::move(d));
    }
  }
  const SampleSet set = sampler.select(offsets.back(), "pairwise-aggregate");
  CheckReport report = start_report("aggpairwise", set, sampler, tol);

  struct Sample {
    const PairData* pair;
    std::vector<double> zi, zj, wi, wj;
    const std::vector<double>* others;
  };
  auto locate = [&](std::uint64_t index) {
    const std::uint64_t k = set[index];
    const std::size_t p = segment_of(offsets, k);
    const PairData& d = pairs[p];
    std::uint64_t r = k - offsets[p];
    const std::uint64_t wj = r % d.rj;
    r /= d.rj;
    const std::uint64_t wi = r % d.ri;
    r /= d.ri;
    const std::uint64_t agg = r % d.aggregates.size();
    r /= d.aggregates.size();
    const std::uint64_t zj = r % d.rj;
    const std::uint64_t zi = r / d.rj;
    return Sample{&d,
                  sampler.block(d.i, zi),
                  sampler.block(d.j, zj),
                  sampler.block(d.i, wi),
                  sampler.block(d.j, wj),
                  &d.aggregates[agg]};
  };
  auto reduced_at = [&](std::size_t player, const std::vector<double>& own,
                        const std::vector<double>& a,
                        const std::vector<double>& b,
                        const std::vector<double>& others) {
    std::vector<double> sum(n);
    for (std::size_t m = 0; m < n; ++m) sum[m] = a[m] + b[m] + others[m];
    const double v = ag.reduced(player, own, ag.aggregator()(sum));
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kOracle, "reduced payoff of player " +
                                          std::to_string(player + 1) +
                                          " is not finite");
    }
    return v;
  };
  // Two-step sum: player i moves from_i -> to_i, then j moves from_j -> to_j.
  auto pair_sum = [&](const Sample& s, const std::vector<double>& from_i,
                      const std::vector<double>& from_j,
                      const std::vector<double>& to_i,
                      const std::vector<double>& to_j) {
    const std::size_t i = s.pair->i;
    const std::size_t j = s.pair->j;
    const auto& o = *s.others;
    return reduced_at(i, to_i, to_i, from_j, o) -
           reduced_at(i, from_i, from_i, from_j, o) +
           reduced_at(j, to_j, to_i, to_j, o) -
           reduced_at(j, from_j, to_i, from_j, o);
  };
  auto terms = [&](const Sample& s) {
    const std::vector<double> bi = to_vector(base.block(s.pair->i));
    const std::vector<double> bj = to_vector(base.block(s.pair->j));
    const double lhs = pair_sum(s, s.zi, s.zj, s.wi, s.wj);
    const double rhs =
        pair_sum(s, bi, bj, s.wi, s.wj) - pair_sum(s, bi, bj, s.zi, s.zj);
    return std::pair{lhs, rhs};
  };

  const SweepResult sweep = detail::sweep(
      set.size(), sampler.config().threads, [&](std::uint64_t k) {
        const auto [lhs, rhs] = terms(locate(k));
        const double residual = std::fabs(lhs - rhs);
        const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
        return SampleOutcome{true, residual, tol.violates(residual, scale)};
      });
  finish_report(report, sweep, [&](std::uint64_t k) {
    const Sample s = locate(k);
    const auto [lhs, rhs] = terms(s);
    // Proxy profile: the whole aggregate of the other players is carried by
    // the proxy, everyone else outside the pair sits at the base point.
    ActionProfile anchor = base;
    std::vector<double> proxy_block = *s.others;
    for (std::size_t p = 0; p < players; ++p) {
      if (p == s.pair->i || p == s.pair->j || p == s.pair->proxy) continue;
      for (std::size_t m = 0; m < n; ++m) proxy_block[m] -= base(p, m);
    }
    anchor.set_block(s.pair->proxy, proxy_block);
    anchor.set_block(s.pair->i, s.zi);
    anchor.set_block(s.pair->j, s.zj);
    ActionProfile target = anchor;
    target.set_block(s.pair->i, s.wi);
    target.set_block(s.pair->j, s.wj);
    Witness w{"aggregate",
              {std::move(anchor), std::move(target)},
              {s.pair->i, s.pair->j, s.pair->proxy},
              lhs - rhs,
              {{"lhs", lhs}, {"rhs", rhs}}};
    for (std::size_t m = 0; m < n; ++m) {
      w.terms.emplace_back("aggregate_" + std::to_string(m + 1),
                           (*s.others)[m]);
    }
    return w;
  });
  return report;
}

bool ConsistencyReport::all_consistent() const {
  return std::all_of(consistent.begin(), consistent.end(),
                     [](bool b) { return b; });
}

ConsistencyReport check_aggregative_consistency(const AggregativeGame& ag,
                                                const GridSampler& sampler,
                                                const Tolerances& tol) {
  const Game& game = ag.base();
  ConsistencyReport out;
  out.max_deviation.assign(game.players(), 0.0);
  out.consistent.assign(game.players(), true);
  const SampleSet set = sampler.select(sampler.profile_count(), "consistency");
  for (std::uint64_t k = 0; k < set.size(); ++k) {
    const ActionProfile x = sampler.profile(set[k]);
    for (std::size_t i = 0; i < game.players(); ++i) {
      const double direct = game.evaluate(i, x);
      const double reduced = ag.evaluate_reduced(i, x);
      const double d = std::fabs(direct - reduced);
      out.max_deviation[i] = std::max(out.max_deviation[i], d);
      if (tol.violates(d, std::max(std::fabs(direct), std::fabs(reduced)))) {
        out.consistent[i] = false;
      }
    }
    ++out.samples;
  }
  return out;
}

}  // namespace potgame
