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

#include "core/report.hpp"

namespace potgame {

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPotential: return "potential";
    case Verdict::kNotPotential: return "not_potential";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict combine(std::span<const CheckReport> reports) {
  bool confirmed = false;
  for (const CheckReport& r : reports) {
    if (r.verdict == Verdict::kNotPotential) return Verdict::kNotPotential;
    if (r.verdict == Verdict::kPotential) confirmed = true;
  }
  return confirmed ? Verdict::kPotential : Verdict::kInconclusive;
}

nlohmann::json to_json(const ActionProfile& x) {
  nlohmann::json out = nlohmann::json::array();
  for (double v : x.coords()) out.push_back(v);
  return out;
}

nlohmann::json to_json(const Witness& w) {
  nlohmann::json out;
  out["kind"] = w.kind;
  out["value"] = w.value;
  nlohmann::json players = nlohmann::json::array();
  for (std::size_t p : w.players) players.push_back(p + 1);
  out["players"] = players;
  nlohmann::json profiles = nlohmann::json::array();
  for (const auto& p : w.profiles) profiles.push_back(to_json(p));
  out["profiles"] = profiles;
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [name, v] : w.terms) terms[name] = v;
  out["terms"] = terms;
  return out;
}

nlohmann::json to_json(const CheckReport& report) {
  nlohmann::json out;
  out["checker"] = report.checker;
  out["verdict"] = to_string(report.verdict);
  out["max_residual"] = report.max_residual;
  out["samples"] = report.samples;
  out["skipped"] = report.skipped;
  out["population"] = report.population;
  out["exhaustive"] = report.exhaustive;
  out["tolerance"] = report.tolerance;
  out["rel_tolerance"] = report.rel_tolerance;
  out["seed"] = report.seed;
  out["witness"] = report.witness ? to_json(*report.witness) : nullptr;
  out["notes"] = report.notes;
  return out;
}

}  // namespace potgame
