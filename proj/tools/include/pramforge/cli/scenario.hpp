// Copyright 2026 The pram-forge Authors
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

#ifndef PRAMFORGE_CLI_SCENARIO_HPP_
#define PRAMFORGE_CLI_SCENARIO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pramforge/inference.hpp"
#include "pramforge/optimizer.hpp"
#include "pramforge/types.hpp"

namespace pramforge::cli {

// One simulated experiment: for each privacy level, optimize the matrix,
// then replicate draw -> privatize -> estimate.
struct ScenarioConfig {
  std::string id = "custom";  // I | II | III | IV | custom
  std::vector<double> p;      // explicit probabilities (empty for III)
  double gamma_shape = 1.0;   // scenario III generator
  double gamma_scale = 5.0;
  std::size_t gamma_count = 30;
  std::vector<double> alphas = {0.5, 1.0, 1.5, 2.0};
  std::size_t n = 10000;
  std::size_t replications = 100;
  std::uint64_t seed = 1;
  std::size_t population = 0;  // draw a held population of this size when > 0
  int restarts = kDefaultRestarts;

  // Fills p for the built-in scenarios and checks the invariants.
  void resolve();
};

// Comparison of the found optimum against an externally reported pattern.
struct DominanceCheck {
  PatternSummary reference;
  bool matched = false;
  double margin_nats = 0.0;  // found MI minus best MI with reference counts
};

struct ScenarioAlphaResult {
  double alpha = 0.0;
  OptimizationReport report;
  std::optional<DominanceCheck> dominance;
  std::vector<double> mean_p_hat;
  std::vector<std::vector<double>> p_hat_per_replication;
  std::vector<double> tv_per_replication;
  double mean_tv = 0.0;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<double> p_true;
  std::vector<ScenarioAlphaResult> per_alpha;
  std::optional<RiskReport> risk;  // raw sample against the held population
};

// Reported pattern counts for the built-in scenarios, when available.
std::optional<PatternSummary> reference_pattern(const std::string& scenario_id,
                                                double alpha);

// Deterministic given config.seed; replications use per-replication derived
// seeds so they can run in any order.
ScenarioResult run_scenario(const ScenarioConfig& config);

// report.json, estimates.csv and optionally risk.json under out_dir.
void write_scenario_bundle(const ScenarioResult& result,
                           const std::string& out_dir);

std::string scenario_report_json(const ScenarioResult& result);

}  // namespace pramforge::cli

#endif  // PRAMFORGE_CLI_SCENARIO_HPP_
