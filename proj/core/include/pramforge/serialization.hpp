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

#ifndef PRAMFORGE_SERIALIZATION_HPP_
#define PRAMFORGE_SERIALIZATION_HPP_

#include <string>

#include "pramforge/constraints.hpp"
#include "pramforge/inference.hpp"
#include "pramforge/mechanism.hpp"
#include "pramforge/optimizer.hpp"

namespace pramforge {

// JSON renderings of the report types. indent < 0 gives compact output.
std::string to_json_string(const Certificate& certificate, int indent = -1);
std::string to_json_string(const OptimizationReport& report, int indent = -1);
std::string to_json_string(const EstimationResult& result, int indent = -1);
std::string to_json_string(const RiskReport& report, int indent = -1);
std::string to_json_string(const PrivatizationRun& run, int indent = -1);

}  // namespace pramforge

#endif  // PRAMFORGE_SERIALIZATION_HPP_
