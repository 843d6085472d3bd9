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

#include "pramforge/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pramforge/info.hpp"
#include "pramforge/mechanism.hpp"
#include "pramforge/random.hpp"
#include "pramforge/serialization.hpp"

namespace pramforge::cli {
namespace {

Strategy parse_strategy(const std::string& name) {
  if (name == "auto") return Strategy::kAuto;
  if (name == "exhaustive") return Strategy::kExhaustive;
  if (name == "local-search" || name == "local_search") {
    return Strategy::kLocalSearch;
  }
  throw Error(ErrorCode::kOutOfRange, "unknown strategy '" + name + "'");
}

// Writes to the file when a path is given, to the fallback stream otherwise.
void emit(const std::string& path, std::ostream& fallback,
          const std::string& payload) {
  if (path.empty()) {
    fallback << payload;
    if (!payload.empty() && payload.back() != '\n') fallback << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoFailure, "cannot write " + path);
  out << payload;
  if (!payload.empty() && payload.back() != '\n') out << "\n";
  if (!out) throw Error(ErrorCode::kIoFailure, "write failed for " + path);
}

}  // namespace

int exit_code_for(const Error& error) noexcept {
  switch (error.code()) {
    case ErrorCode::kNegativeMass:
    case ErrorCode::kNotNormalized:
    case ErrorCode::kTooFewCategories:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kOutOfRange:
    case ErrorCode::kEmptyInput:
      return kExitConfig;
    case ErrorCode::kNotApplicable:
    case ErrorCode::kTooLarge:
    case ErrorCode::kInfeasibleStrategy:
    case ErrorCode::kSingularMatrix:
      return kExitOptimizer;
    case ErrorCode::kCertificationFailed:
      return kExitCertification;
    case ErrorCode::kCategoryOutOfRange:
    case ErrorCode::kEmptyFile:
    case ErrorCode::kMissingColumn:
    case ErrorCode::kUnknownLabel:
    case ErrorCode::kIoFailure:
    case ErrorCode::kInconsistentTables:
      return kExitIo;
  }
  return kExitConfig;
}

void cmd_optimize(const OptimizeOptions& options, std::ostream& out) {
  const auto p = validate_distribution(options.p);
  const OptimizationReport report =
      optimize(p, PrivacyLevel(options.alpha), parse_strategy(options.strategy),
               options.seed, options.restarts);
  emit(options.out, out, to_json_string(report, 2));
}

void cmd_privatize(const PrivatizeOptions& options, std::ostream& out) {
  const MicrodataColumn input = load_column(options.input, options.column);
  const PrivacyLevel alpha(options.alpha);

  RetentionVector q = [&] {
    if (!options.q.empty()) return RetentionVector(options.q);
    const auto p = empirical_distribution(input);
    return optimize(p, alpha, Strategy::kAuto, options.seed).q_star;
  }();
  if (q.size() != input.category_count()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "retention vector size does not match the column categories");
  }

  const PrivatizationRun run(input, build_matrix(q), alpha, options.seed);
  const MicrodataColumn z = run.run(input);
  save_column(z, options.out, options.column);

  const std::string manifest_path =
      options.manifest.empty() ? options.out + ".run.json" : options.manifest;
  emit(manifest_path, out, to_json_string(run, 2));
  out << "wrote " << options.out << " (" << z.record_count() << " records)\n";
}

void cmd_scenario(const ScenarioConfig& config, const std::string& out_dir,
                  std::ostream& out) {
  const ScenarioResult result = run_scenario(config);
  if (out_dir.empty()) {
    out << scenario_report_json(result) << "\n";
    return;
  }
  write_scenario_bundle(result, out_dir);
  out << "wrote " << out_dir << "/report.json, estimates.csv, tv.csv\n";
}

void cmd_mi_curve(const MiCurveOptions& options, std::ostream& out) {
  const auto p = validate_distribution(options.p);
  if (p.size() != 2) {
    throw Error(ErrorCode::kOutOfRange,
                "the symmetric sweep is defined for S = 2");
  }
  if (options.grid_points < 2) {
    throw Error(ErrorCode::kOutOfRange, "grid needs at least 2 points");
  }
  const PrivacyLevel alpha(options.alpha);
  const auto [upper, lower] = optimize_binary(alpha);
  const double lo = lower[0];
  const double hi = upper[0];

  std::ostringstream csv;
  csv.precision(17);
  csv << "q,mi_exact";
  if (options.plugin_n > 0) csv << ",mi_plugin";
  csv << "\n";
  for (std::size_t i = 0; i < options.grid_points; ++i) {
    const double t = static_cast<double>(i) /
                     static_cast<double>(options.grid_points - 1);
    const double qv = lo + t * (hi - lo);
    const RetentionVector q({qv, qv});
    csv << qv << ',' << mutual_information(p, q).value();
    if (options.plugin_n > 0) {
      const PramMatrix matrix = build_matrix(q);
      double acc = 0.0;
      for (std::size_t rep = 0; rep < options.plugin_reps; ++rep) {
        CounterRng derive(options.seed, i * 1000003ULL + rep);
        const std::uint64_t draw_seed = derive.next_u64();
        const std::uint64_t noise_seed = derive.next_u64();
        std::vector<std::uint32_t> records(options.plugin_n);
        for (std::size_t r = 0; r < records.size(); ++r) {
          records[r] =
              CounterRng(draw_seed, r).next_unit() < p[0] ? 1u : 2u;
        }
        const auto x = MicrodataColumn::unlabeled(std::move(records), 2);
        acc += plugin_mi(x, privatize(x, matrix, noise_seed)).value();
      }
      csv << ',' << acc / static_cast<double>(options.plugin_reps);
    }
    csv << "\n";
  }
  emit(options.out, out, csv.str());
}

void cmd_risk(const RiskOptions& options, std::ostream& out) {
  const MicrodataColumn population =
      load_column(options.population_path, options.column);
  std::map<std::string, std::uint32_t> label_map;
  for (std::uint32_t id = 1; id <= population.category_count(); ++id) {
    label_map.emplace(population.label(id), id);
  }
  const MicrodataColumn sample =
      load_column(options.sample_path, options.column, label_map);
  const RiskReport report =
      risk_indices(frequencies(sample), frequencies(population));
  emit(options.out, out, to_json_string(report, 2));
}

bool cmd_certify(const CertifyOptions& options, std::ostream& out) {
  const Certificate cert =
      certify(build_matrix(RetentionVector(options.q)),
              PrivacyLevel(options.alpha));
  emit(options.out, out, to_json_string(cert, 2));
  return cert.pass;
}

}  // namespace pramforge::cli
