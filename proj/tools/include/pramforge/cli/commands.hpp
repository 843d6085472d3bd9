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

#ifndef PRAMFORGE_CLI_COMMANDS_HPP_
#define PRAMFORGE_CLI_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pramforge/cli/scenario.hpp"
#include "pramforge/error.hpp"

namespace pramforge::cli {

// Exit codes of the command-line interface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitOptimizer = 3;
inline constexpr int kExitCertification = 4;
inline constexpr int kExitIo = 5;

int exit_code_for(const Error& error) noexcept;

struct OptimizeOptions {
  std::vector<double> p;
  double alpha = 0.0;
  std::string strategy = "auto";  // auto | exhaustive | local-search
  std::uint64_t seed = 0;
  int restarts = 32;
  std::string out;  // empty = stdout
};

struct PrivatizeOptions {
  std::string input;
  std::string column;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string manifest;     // default: <out>.run.json
  std::vector<double> q;    // optional override; certified before use
};

struct MiCurveOptions {
  std::vector<double> p;
  double alpha = 0.0;
  std::size_t grid_points = 6;
  std::size_t plugin_n = 0;  // > 0 adds plug-in estimates from seeded samples
  std::size_t plugin_reps = 1;
  std::uint64_t seed = 0;
  std::string out;
};

struct RiskOptions {
  std::string sample_path;
  std::string population_path;
  std::string column;
  std::string out;
};

struct CertifyOptions {
  std::vector<double> q;
  double alpha = 0.0;
  std::string out;
};

// Each command throws pramforge::Error on failure; main maps the error to
// the exit codes above. cmd_certify returns false when the certificate fails
// (exit 4), since that is its verdict rather than an error.
void cmd_optimize(const OptimizeOptions& options, std::ostream& out);
void cmd_privatize(const PrivatizeOptions& options, std::ostream& out);
void cmd_scenario(const ScenarioConfig& config, const std::string& out_dir,
                  std::ostream& out);
void cmd_mi_curve(const MiCurveOptions& options, std::ostream& out);
void cmd_risk(const RiskOptions& options, std::ostream& out);
bool cmd_certify(const CertifyOptions& options, std::ostream& out);

}  // namespace pramforge::cli

#endif  // PRAMFORGE_CLI_COMMANDS_HPP_
