// Copyright (c) 2026 The prosodykit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "prosody/speaker/embedding.h"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "prosody/csv.h"
#include "prosody/error.h"

namespace prosody::speaker {
const char* source_name(Source s) { return s == Source::kActual ? "actual" : "generated"; }

std::vector<Embedding> load_embeddings(const std::filesystem::path& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  std::vector<Embedding> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto fields = csv::split_line(line);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    double probe;
    if (line_no == 1 && fields.size() > 3 && !csv::parse_double(fields[3], &probe)) continue;
    if (fields.size() != dim + 3) {
      fail(ErrorCode::kParseError, where + ": expected " + std::to_string(dim + 3) +
                                       " fields, found " + std::to_string(fields.size()));
    }
    Embedding e;
    e.speaker_id = fields[0];
    e.utterance_id = fields[1];
    if (fields[2] == "actual") {
      e.source = Source::kActual;
    } else if (fields[2] == "generated") {
      e.source = Source::kGenerated;
    } else {
      fail(ErrorCode::kParseError, where + ": source must be 'actual' or 'generated'");
    }
    e.vector.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (!csv::parse_double(fields[i + 3], &e.vector[i]) || !std::isfinite(e.vector[i])) {
        fail(ErrorCode::kParseError, where + ": bad value '" + fields[i + 3] + "'");
      }
    }
    rows.push_back(std::move(e));
  }
  return rows;
}

void save_embeddings(const std::filesystem::path& path, std::span<const Embedding> rows) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kUnreadableFile, "cannot write " + path.string());
  out << std::setprecision(17);
  for (const auto& e : rows) {
    out << csv::escape(e.speaker_id) << ',' << csv::escape(e.utterance_id) << ','
        << source_name(e.source);
    for (double v : e.vector) out << ',' << v;
    out << '\n';
  }
}

}  // namespace prosody::speaker
