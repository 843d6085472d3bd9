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

#include "pramforge/mechanism.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>

#include "csv.hpp"
#include "pramforge/parallel.hpp"
#include "pramforge/random.hpp"

namespace pramforge {

PramMatrix build_matrix(const RetentionVector& q) { return PramMatrix(q); }

MicrodataColumn privatize(const MicrodataColumn& x, const PramMatrix& matrix,
                          std::uint64_t seed) {
  const std::size_t S = matrix.size();
  for (std::uint32_t id : x.records()) {
    if (id > S) {
      throw Error(ErrorCode::kCategoryOutOfRange,
                  "record id " + std::to_string(id) +
                      " exceeds matrix size " + std::to_string(S));
    }
  }
  const RetentionVector& q = matrix.retention();
  const std::size_t n = x.record_count();
  std::vector<std::uint32_t> z(n);
  parallel_chunks(n, [&](unsigned, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint32_t from = x.records()[i];
      const double retain = q[from - 1];
      CounterRng rng(seed, i);
      const double u = rng.next_unit();
      if (u < retain) {
        z[i] = from;
        continue;
      }
      // Inverse CDF over the row: the remainder of the same draw lands
      // uniformly on the S-1 other categories.
      const double rest = (u - retain) / (1.0 - retain);
      std::uint64_t pick =
          static_cast<std::uint64_t>(rest * static_cast<double>(S - 1));
      if (pick >= S - 1) pick = S - 2;
      z[i] = static_cast<std::uint32_t>(pick) + 1 + (pick + 1 >= from ? 1 : 0);
    }
  });
  std::vector<std::string> labels(x.labels());
  return MicrodataColumn(std::move(z), std::move(labels));
}

MicrodataColumn load_column(
    const std::filesystem::path& path, const std::string& column,
    const std::optional<std::map<std::string, std::uint32_t>>& labels) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  std::vector<std::string> header;
  if (!csv::read_record(in, &header)) {
    throw Error(ErrorCode::kEmptyFile, path.string() + " has no header row");
  }
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == column) {
      col = i;
      break;
    }
  }
  if (col == header.size()) {
    throw Error(ErrorCode::kMissingColumn,
                "column '" + column + "' not found in " + path.string());
  }

  std::map<std::string, std::uint32_t> ids;
  std::vector<std::string> names;
  if (labels) {
    ids = *labels;
    names.resize(ids.size());
    for (const auto& [name, id] : ids) {
      if (id < 1 || id > ids.size()) {
        throw Error(ErrorCode::kCategoryOutOfRange,
                    "label map ids must be contiguous 1..S");
      }
      names[id - 1] = name;
    }
  }

  std::vector<std::uint32_t> records;
  std::vector<std::string> fields;
  while (csv::read_record(in, &fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    if (col >= fields.size()) {
      throw Error(ErrorCode::kIoFailure,
                  "row with " + std::to_string(fields.size()) +
                      " fields, expected at least " + std::to_string(col + 1));
    }
    const std::string& cell = fields[col];
    auto it = ids.find(cell);
    if (it == ids.end()) {
      if (labels) {
        throw Error(ErrorCode::kUnknownLabel,
                    "value '" + cell + "' not in the label map");
      }
      const std::uint32_t id = static_cast<std::uint32_t>(ids.size()) + 1;
      it = ids.emplace(cell, id).first;
      names.push_back(cell);
    }
    records.push_back(it->second);
  }
  return MicrodataColumn(std::move(records), std::move(names));
}

void save_column(const MicrodataColumn& column,
                 const std::filesystem::path& path,
                 const std::string& column_name) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "cannot write " + path.string());
  }
  out << csv::escape_field(column_name) << "\n";
  for (std::uint32_t id : column.records()) {
    out << csv::escape_field(column.label(id)) << "\n";
  }
  if (!out) {
    throw Error(ErrorCode::kIoFailure, "write failed for " + path.string());
  }
}

std::string column_fingerprint(const MicrodataColumn& column) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_byte = [&h](std::uint8_t b) {
    h ^= b;
    h *= 0x100000001b3ULL;
  };
  for (std::uint32_t id : column.records()) {
    for (int shift = 0; shift < 32; shift += 8) {
      mix_byte(static_cast<std::uint8_t>(id >> shift));
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

PrivatizationRun::PrivatizationRun(const MicrodataColumn& input,
                                   PramMatrix matrix, PrivacyLevel alpha,
                                   std::uint64_t seed)
    : fingerprint_(column_fingerprint(input)),
      matrix_(std::move(matrix)),
      alpha_(alpha),
      seed_(seed),
      certificate_(certify(matrix_, alpha_)) {
  if (!certificate_.pass) {
    throw Error(ErrorCode::kCertificationFailed,
                "matrix ratio " + std::to_string(certificate_.dp_ratio) +
                    " exceeds e^alpha = " +
                    std::to_string(certificate_.exp_alpha));
  }
}

MicrodataColumn PrivatizationRun::run(const MicrodataColumn& input) const {
  return privatize(input, matrix_, seed_);
}

}  // namespace pramforge
