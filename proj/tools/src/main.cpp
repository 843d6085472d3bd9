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

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pramforge/cli/commands.hpp"

namespace {

using pramforge::Error;
using pramforge::ErrorCode;
using nlohmann::json;

// Applies a JSON config file underneath explicitly passed flags.
json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kIoFailure,
                "config " + path + " is not valid JSON: " + e.what());
  }
  return j;
}

template <typename T>
void fill_from_config(const json& config, const char* key, CLI::Option* option,
                      T* target) {
  if (option->count() == 0 && config.contains(key)) {
    *target = config.at(key).get<T>();
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pram-forge: mutual-information-optimal post-randomization of "
      "categorical microdata under differential privacy"};
  app.require_subcommand(1);

  // --- optimize ---------------------------------------------------------
  pramforge::cli::OptimizeOptions opt;
  std::string opt_config;
  auto* optimize = app.add_subcommand(
      "optimize", "Choose the retention vector maximizing mutual information");
  auto* opt_p = optimize->add_option("--p", opt.p, "category probabilities");
  opt_p->delimiter(',');
  std::size_t opt_S = 0;
  auto* opt_S_flag = optimize->add_option(
      "--S", opt_S, "category count; must agree with --p when both given");
  auto* opt_alpha =
      optimize->add_option("--alpha", opt.alpha, "privacy level in nats");
  auto* opt_strategy = optimize->add_option(
      "--strategy", opt.strategy, "auto | exhaustive | local-search");
  auto* opt_seed = optimize->add_option("--seed", opt.seed, "search seed");
  auto* opt_restarts =
      optimize->add_option("--restarts", opt.restarts, "local-search restarts");
  optimize->add_option("--out", opt.out, "write the report here");
  optimize->add_option("--config", opt_config, "JSON config (flags win)");

  // --- privatize --------------------------------------------------------
  pramforge::cli::PrivatizeOptions priv;
  auto* privatize = app.add_subcommand(
      "privatize", "Randomize one CSV column under a certified matrix");
  privatize->add_option("--input", priv.input, "input CSV")->required();
  privatize->add_option("--column", priv.column, "column name")->required();
  privatize->add_option("--alpha", priv.alpha, "privacy level in nats")
      ->required();
  privatize->add_option("--seed", priv.seed, "randomization seed");
  privatize->add_option("--out", priv.out, "output CSV")->required();
  privatize->add_option("--manifest", priv.manifest,
                        "run manifest path (default <out>.run.json)");
  privatize->add_option("--q", priv.q, "retention override, certified first")
      ->delimiter(',');

  // --- scenario ---------------------------------------------------------
  pramforge::cli::ScenarioConfig scenario_config;
  std::string scenario_out_dir, scenario_config_path;
  auto* scenario = app.add_subcommand(
      "scenario", "Run a simulation scenario end to end");
  auto* sc_id = scenario->add_option("--id", scenario_config.id,
                                     "I | II | III | IV | custom");
  auto* sc_p = scenario->add_option("--p", scenario_config.p,
                                    "custom probabilities");
  sc_p->delimiter(',');
  std::size_t sc_S = 0;
  auto* sc_S_flag = scenario->add_option(
      "--S", sc_S, "category count (gamma draws for scenario III)");
  auto* sc_alphas = scenario->add_option("--alpha", scenario_config.alphas,
                                         "privacy levels to sweep");
  sc_alphas->delimiter(',');
  auto* sc_n = scenario->add_option("--n", scenario_config.n, "sample size");
  auto* sc_reps = scenario->add_option("--reps", scenario_config.replications,
                                       "replications per level");
  auto* sc_seed = scenario->add_option("--seed", scenario_config.seed,
                                       "experiment seed");
  auto* sc_pop = scenario->add_option(
      "--population", scenario_config.population,
      "held population size for risk indices (0 = off)");
  scenario->add_option("--gamma-shape", scenario_config.gamma_shape,
                       "scenario III gamma shape");
  scenario->add_option("--gamma-scale", scenario_config.gamma_scale,
                       "scenario III gamma scale");
  scenario->add_option("--gamma-count", scenario_config.gamma_count,
                       "scenario III category count");
  scenario->add_option("--restarts", scenario_config.restarts,
                       "local-search restarts");
  scenario->add_option("--out-dir", scenario_out_dir,
                       "bundle directory (default: report to stdout)");
  scenario->add_option("--config", scenario_config_path,
                       "JSON config (flags win)");

  // --- mi-curve ---------------------------------------------------------
  pramforge::cli::MiCurveOptions curve;
  auto* mi_curve = app.add_subcommand(
      "mi-curve", "Sweep the symmetric binary retention interval");
  mi_curve->add_option("--p", curve.p, "binary probabilities")
      ->required()
      ->delimiter(',');
  mi_curve->add_option("--alpha", curve.alpha, "privacy level in nats")
      ->required();
  mi_curve->add_option("--grid", curve.grid_points, "grid points (>= 2)");
  mi_curve->add_option("--plugin-n", curve.plugin_n,
                       "sample size for plug-in estimates (0 = exact only)");
  mi_curve->add_option("--plugin-reps", curve.plugin_reps,
                       "samples averaged per grid point");
  mi_curve->add_option("--seed", curve.seed, "sampling seed");
  mi_curve->add_option("--out", curve.out, "write the CSV here");

  // --- risk -------------------------------------------------------------
  pramforge::cli::RiskOptions risk;
  auto* risk_cmd = app.add_subcommand(
      "risk", "Disclosure-risk indices of a sample against a population");
  risk_cmd->add_option("--sample", risk.sample_path, "sample CSV")->required();
  risk_cmd->add_option("--population", risk.population_path, "population CSV")
      ->required();
  risk_cmd->add_option("--column", risk.column, "column name")->required();
  risk_cmd->add_option("--out", risk.out, "write the report here");

  // --- certify ----------------------------------------------------------
  pramforge::cli::CertifyOptions cert;
  auto* certify = app.add_subcommand(
      "certify", "Check a retention vector against a privacy level");
  certify->add_option("--q", cert.q, "retention vector")
      ->required()
      ->delimiter(',');
  certify->add_option("--alpha", cert.alpha, "privacy level in nats")
      ->required();
  certify->add_option("--out", cert.out, "write the certificate here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pramforge::cli::kExitConfig;
  }

  try {
    if (optimize->parsed()) {
      if (!opt_config.empty()) {
        const json j = load_config(opt_config);
        fill_from_config(j, "p", opt_p, &opt.p);
        fill_from_config(j, "alpha", opt_alpha, &opt.alpha);
        fill_from_config(j, "strategy", opt_strategy, &opt.strategy);
        fill_from_config(j, "seed", opt_seed, &opt.seed);
        fill_from_config(j, "restarts", opt_restarts, &opt.restarts);
      }
      if (opt_S_flag->count() > 0 && opt_S != opt.p.size()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "--S disagrees with the length of --p");
      }
      pramforge::cli::cmd_optimize(opt, std::cout);
    } else if (privatize->parsed()) {
      pramforge::cli::cmd_privatize(priv, std::cout);
    } else if (scenario->parsed()) {
      if (!scenario_config_path.empty()) {
        const json j = load_config(scenario_config_path);
        fill_from_config(j, "id", sc_id, &scenario_config.id);
        fill_from_config(j, "p", sc_p, &scenario_config.p);
        fill_from_config(j, "alpha", sc_alphas, &scenario_config.alphas);
        fill_from_config(j, "n", sc_n, &scenario_config.n);
        fill_from_config(j, "reps", sc_reps, &scenario_config.replications);
        fill_from_config(j, "seed", sc_seed, &scenario_config.seed);
        fill_from_config(j, "population", sc_pop,
                         &scenario_config.population);
      }
      if (sc_S_flag->count() > 0) {
        if (scenario_config.id == "III") {
          scenario_config.gamma_count = sc_S;
        } else if (!scenario_config.p.empty() &&
                   sc_S != scenario_config.p.size()) {
          throw Error(ErrorCode::kDimensionMismatch,
                      "--S disagrees with the length of --p");
        }
      }
      pramforge::cli::cmd_scenario(scenario_config, scenario_out_dir,
                                   std::cout);
    } else if (mi_curve->parsed()) {
      pramforge::cli::cmd_mi_curve(curve, std::cout);
    } else if (risk_cmd->parsed()) {
      pramforge::cli::cmd_risk(risk, std::cout);
    } else if (certify->parsed()) {
      if (!pramforge::cli::cmd_certify(cert, std::cout)) {
        return pramforge::cli::kExitCertification;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pramforge::cli::exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pramforge::cli::kExitConfig;
  }
  return 0;
}
