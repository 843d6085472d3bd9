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

#include "pramforge/serialization.hpp"

#include <cmath>

#include <json.hpp>

namespace pramforge {
namespace {

using nlohmann::json;

json finite_or_tag(double value) {
  if (std::isfinite(value)) return value;
  return value > 0 ? "inf" : "-inf";
}

json certificate_json(const Certificate& c) {
  return json{
      {"dp_ratio", finite_or_tag(c.dp_ratio)},
      {"exp_alpha", c.exp_alpha},
      {"pass", c.pass},
      {"argmax", json{{"k", c.k}, {"kprime", c.kprime}, {"family", c.family}}},
  };
}

std::string dump(const json& j, int indent) { return j.dump(indent); }

}  // namespace

std::string to_json_string(const Certificate& certificate, int indent) {
  return dump(certificate_json(certificate), indent);
}

std::string to_json_string(const OptimizationReport& report, int indent) {
  json j{
      {"q_star", report.q_star.values()},
      {"mi_nats", report.mi_nats},
      {"pattern_summary",
       json{{"v_plus", report.pattern_summary.v_plus},
            {"v_minus", report.pattern_summary.v_minus},
            {"v_min", report.pattern_summary.v_min},
            {"v_max", report.pattern_summary.v_max}}},
      {"method", optimize_method_name(report.method)},
      {"candidates_evaluated", report.candidates_evaluated},
      {"ties", report.ties},
  };
  return dump(j, indent);
}

std::string to_json_string(const EstimationResult& result, int indent) {
  json j{
      {"p_hat", result.p_hat.probs()},
      {"method",
       result.method == EstimationMethod::kInversion ? "inversion" : "em"},
      {"iterations", result.iterations},
      {"projected", result.projected},
  };
  if (result.log_likelihood) j["log_likelihood"] = *result.log_likelihood;
  return dump(j, indent);
}

std::string to_json_string(const RiskReport& report, int indent) {
  json cells = json::object();
  for (const auto& [cell, risk] : report.per_record) {
    cells[std::to_string(cell)] = json{{"r1", risk.r1}, {"r2", risk.r2}};
  }
  json j{
      {"tau1", report.tau1},
      {"tau2", report.tau2},
      {"per_record", std::move(cells)},
  };
  return dump(j, indent);
}

std::string to_json_string(const PrivatizationRun& run, int indent) {
  json j{
      {"input_fingerprint", run.input_fingerprint()},
      {"alpha", run.alpha().alpha()},
      {"q", run.matrix().retention().values()},
      {"seed", run.seed()},
      {"certificate", certificate_json(run.certificate())},
  };
  return dump(j, indent);
}

}  // namespace pramforge
