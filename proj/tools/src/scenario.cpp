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

#include "pramforge/cli/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "pramforge/info.hpp"
#include "pramforge/mechanism.hpp"
#include "pramforge/parallel.hpp"
#include "pramforge/random.hpp"

namespace pramforge::cli {
namespace {

using nlohmann::json;

// Deterministic Gamma(shape, scale) draw from a counter stream:
// Marsaglia-Tsang squeeze for shape >= 1, boosted below.
double gamma_draw(CounterRng& rng, double shape, double scale) {
  if (shape < 1.0) {
    const double u = rng.next_unit();
    return gamma_draw(rng, shape + 1.0, scale) *
           std::pow(u <= 0.0 ? 1e-300 : u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    // Box-Muller normal from two uniforms.
    double u1 = rng.next_unit();
    if (u1 <= 0.0) u1 = 1e-300;
    const double u2 = rng.next_unit();
    const double normal =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    const double v = 1.0 + c * normal;
    if (v <= 0.0) continue;
    const double v3 = v * v * v;
    const double u = rng.next_unit();
    if (u < 1.0 - 0.0331 * normal * normal * normal * normal ||
        std::log(u) <
            0.5 * normal * normal + d * (1.0 - v3 + std::log(v3))) {
      return scale * d * v3;
    }
  }
}

std::vector<double> gamma_probabilities(std::size_t count, double shape,
                                        double scale, std::uint64_t seed) {
  std::vector<double> p(count);
  double total = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    CounterRng rng(seed, 0x67616d6d61ULL + k);
    p[k] = gamma_draw(rng, shape, scale);
    total += p[k];
  }
  for (double& x : p) x /= total;
  return p;
}

// One categorical draw by inverse CDF.
std::uint32_t draw_category(double u, const std::vector<double>& p) {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    acc += p[k];
    if (u < acc) return static_cast<std::uint32_t>(k + 1);
  }
  return static_cast<std::uint32_t>(p.size());
}

MicrodataColumn sample_from(const std::vector<double>& p, std::size_t n,
                            std::uint64_t stream_seed) {
  std::vector<std::uint32_t> records(n);
  for (std::size_t i = 0; i < n; ++i) {
    records[i] = draw_category(CounterRng(stream_seed, i).next_unit(), p);
  }
  return MicrodataColumn::unlabeled(std::move(records), p.size());
}

json pattern_json(const PatternSummary& s) {
  return json{{"v_plus", s.v_plus},
              {"v_minus", s.v_minus},
              {"v_min", s.v_min},
              {"v_max", s.v_max}};
}

}  // namespace

void ScenarioConfig::resolve() {
  if (id == "I") {
    p = {0.3, 0.1, 0.2, 0.08, 0.02, 0.04, 0.06, 0.1, 0.01, 0.09};
  } else if (id == "II") {
    p = {0.0336, 0.1059, 0.1697, 0.0962, 0.0180,
         0.0062, 0.1097, 0.0005, 0.1233, 0.3369};
  } else if (id == "III") {
    p = gamma_probabilities(gamma_count, gamma_shape, gamma_scale, seed);
  } else if (id == "IV") {
    p.assign(30, 0.95 / 29.0);
    p[0] = 0.05;
  } else if (id != "custom") {
    throw Error(ErrorCode::kOutOfRange, "unknown scenario id '" + id + "'");
  }
  validate_distribution(p);  // throws on bad custom input
  if (alphas.empty()) {
    throw Error(ErrorCode::kEmptyInput, "alpha list is empty");
  }
  for (double a : alphas) PrivacyLevel{a};
  if (n < 1) throw Error(ErrorCode::kOutOfRange, "n must be >= 1");
  if (replications < 1) {
    throw Error(ErrorCode::kOutOfRange, "replications must be >= 1");
  }
}

std::optional<PatternSummary> reference_pattern(const std::string& scenario_id,
                                                double alpha) {
  struct Entry {
    double alpha;
    PatternSummary counts;
  };
  static const std::vector<Entry> table_one = {{0.5, {4, 6, 0, 0}},
                                               {1.0, {5, 5, 0, 0}},
                                               {1.5, {2, 8, 0, 0}},
                                               {2.0, {0, 9, 0, 1}}};
  static const std::vector<Entry> table_two = {{0.5, {7, 3, 0, 0}},
                                               {1.0, {6, 4, 0, 0}},
                                               {1.5, {6, 4, 0, 0}},
                                               {2.0, {0, 9, 0, 1}}};
  static const std::vector<Entry> table_four = {{0.5, {0, 29, 0, 1}},
                                                {1.0, {30, 0, 0, 0}},
                                                {1.5, {30, 0, 0, 0}},
                                                {2.0, {30, 0, 0, 0}}};
  const std::vector<Entry>* table = nullptr;
  if (scenario_id == "I") table = &table_one;
  if (scenario_id == "II") table = &table_two;
  if (scenario_id == "IV") table = &table_four;
  if (table == nullptr) return std::nullopt;
  for (const Entry& e : *table) {
    if (std::abs(e.alpha - alpha) < 1e-12) return e.counts;
  }
  return std::nullopt;
}

ScenarioResult run_scenario(const ScenarioConfig& raw_config) {
  ScenarioConfig config = raw_config;
  config.resolve();
  const CategoricalDistribution p = validate_distribution(config.p);
  const std::size_t S = p.size();

  ScenarioResult result{config, config.p, {}, std::nullopt};

  if (config.population > 0) {
    if (config.population < config.n) {
      throw Error(ErrorCode::kOutOfRange,
                  "population must be at least the sample size");
    }
    // Risk of the raw sample against a held population it was drawn from.
    // Population records are exchangeable draws, so the first n of them are
    // a without-replacement sample.
    const std::uint64_t pop_seed = CounterRng(config.seed, 0x504f50).next_u64();
    const MicrodataColumn population =
        sample_from(config.p, config.population, pop_seed);
    std::vector<std::uint64_t> sample_counts(S, 0);
    for (std::size_t i = 0; i < config.n; ++i) {
      ++sample_counts[population.records()[i] - 1];
    }
    result.risk = risk_indices(FrequencyTable(sample_counts),
                               frequencies(population));
  }

  for (double alpha_value : config.alphas) {
    const PrivacyLevel alpha(alpha_value);
    ScenarioAlphaResult entry{
        alpha_value,
        optimize(p, alpha, Strategy::kAuto, config.seed, config.restarts),
        std::nullopt,
        {},
        {},
        {},
        0.0};

    if (const auto reference = reference_pattern(config.id, alpha_value)) {
      DominanceCheck check;
      check.reference = *reference;
      check.matched = entry.report.pattern_summary == *reference;
      check.margin_nats =
          entry.report.mi_nats -
          best_objective_with_counts(p, alpha, *reference);
      entry.dominance = check;
    }

    const PramMatrix matrix = build_matrix(entry.report.q_star);
    const Certificate cert = certify(matrix, alpha);
    if (!cert.pass) {
      throw Error(ErrorCode::kCertificationFailed,
                  "optimized matrix failed certification");
    }

    entry.mean_p_hat.assign(S, 0.0);
    entry.tv_per_replication.assign(config.replications, 0.0);
    entry.p_hat_per_replication.assign(config.replications, {});
    parallel_chunks(config.replications, [&](unsigned, std::uint64_t begin,
                                             std::uint64_t end) {
      for (std::uint64_t r = begin; r < end; ++r) {
        CounterRng derive(config.seed, r);
        const std::uint64_t draw_seed = derive.next_u64();
        const std::uint64_t noise_seed = derive.next_u64();
        const MicrodataColumn x = sample_from(config.p, config.n, draw_seed);
        const MicrodataColumn z = privatize(x, matrix, noise_seed);
        entry.p_hat_per_replication[r] = estimate_p_em(z, matrix).p_hat.probs();
        double tv = 0.0;
        for (std::size_t k = 0; k < S; ++k) {
          tv += std::abs(entry.p_hat_per_replication[r][k] - config.p[k]);
        }
        entry.tv_per_replication[r] = 0.5 * tv;
      }
    });
    for (const auto& estimate : entry.p_hat_per_replication) {
      for (std::size_t k = 0; k < S; ++k) entry.mean_p_hat[k] += estimate[k];
    }
    for (double& x : entry.mean_p_hat) {
      x /= static_cast<double>(config.replications);
    }
    entry.mean_tv = std::accumulate(entry.tv_per_replication.begin(),
                                    entry.tv_per_replication.end(), 0.0) /
                    static_cast<double>(config.replications);
    result.per_alpha.push_back(std::move(entry));
  }
  return result;
}

std::string scenario_report_json(const ScenarioResult& result) {
  json per_alpha = json::array();
  for (const ScenarioAlphaResult& entry : result.per_alpha) {
    json e{
        {"alpha", entry.alpha},
        {"q_star", entry.report.q_star.values()},
        {"mi_nats", entry.report.mi_nats},
        {"pattern_summary", pattern_json(entry.report.pattern_summary)},
        {"method", optimize_method_name(entry.report.method)},
        {"candidates_evaluated", entry.report.candidates_evaluated},
        {"ties", entry.report.ties},
        {"mean_p_hat", entry.mean_p_hat},
        {"mean_tv", entry.mean_tv},
    };
    if (entry.dominance) {
      e["dominance"] = json{
          {"reference_counts", pattern_json(entry.dominance->reference)},
          {"matched", entry.dominance->matched},
          {"margin_nats", entry.dominance->margin_nats},
      };
    }
    per_alpha.push_back(std::move(e));
  }
  json j{
      {"scenario", result.config.id},
      {"S", result.p_true.size()},
      {"p", result.p_true},
      {"n", result.config.n},
      {"replications", result.config.replications},
      {"seed", result.config.seed},
      {"per_alpha", std::move(per_alpha)},
  };
  if (result.risk) {
    j["risk"] = json{{"tau1", result.risk->tau1},
                     {"tau2", result.risk->tau2},
                     {"sample_uniques", result.risk->per_record.size()}};
  }
  return j.dump(2);
}

void write_scenario_bundle(const ScenarioResult& result,
                           const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  {
    std::ofstream out(fs::path(out_dir) / "report.json", std::ios::binary);
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot write report.json");
    out << scenario_report_json(result) << "\n";
  }
  {
    std::ofstream out(fs::path(out_dir) / "estimates.csv", std::ios::binary);
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot write estimates.csv");
    out.precision(17);
    out << "alpha,replication,category,p_true,p_hat\n";
    for (const ScenarioAlphaResult& entry : result.per_alpha) {
      for (std::size_t r = 0; r < entry.p_hat_per_replication.size(); ++r) {
        for (std::size_t k = 0; k < result.p_true.size(); ++k) {
          out << entry.alpha << ',' << r << ',' << (k + 1) << ','
              << result.p_true[k] << ',' << entry.p_hat_per_replication[r][k]
              << "\n";
        }
      }
    }
  }
  {
    std::ofstream out(fs::path(out_dir) / "tv.csv", std::ios::binary);
    if (!out) throw Error(ErrorCode::kIoFailure, "cannot write tv.csv");
    out.precision(17);
    out << "alpha,replication,tv\n";
    for (const ScenarioAlphaResult& entry : result.per_alpha) {
      for (std::size_t r = 0; r < entry.tv_per_replication.size(); ++r) {
        out << entry.alpha << ',' << r << ',' << entry.tv_per_replication[r]
            << "\n";
      }
    }
  }
}

}  // namespace pramforge::cli
