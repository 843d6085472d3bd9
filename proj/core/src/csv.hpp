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

#ifndef PRAMFORGE_SRC_CSV_HPP_
#define PRAMFORGE_SRC_CSV_HPP_

#include <istream>
#include <string>
#include <vector>

namespace pramforge::csv {

// Reads one record (handles quoted fields, doubled quotes, embedded
// newlines and CRLF endings). Returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>* fields);

// Quotes per RFC rules when the field contains a comma, quote or newline.
std::string escape_field(const std::string& field);

}  // namespace pramforge::csv

#endif  // PRAMFORGE_SRC_CSV_HPP_
