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

#ifndef PROSODY_HARNESS_REPORT_H_
#define PROSODY_HARNESS_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "prosody/metrics/evaluate.h"

namespace prosody::harness {

enum class PairStatus { kOk, kError };

// Outcome of one manifest row.
struct PairResult {
  std::string pair_id;
  std::string speaker_id;
  int shots = 0;
  std::optional<std::string> group;
  PairStatus status = PairStatus::kOk;
  std::string error;                              // set when status is kError
  std::optional<metrics::MetricsReport> metrics;  // set when status is kOk

  bool operator==(const PairResult&) const = default;
};

// Settings every number in a report was computed under.
struct Conventions {
  double gpe_threshold = metrics::kDefaultGpeThreshold;
  int num_coeffs = 13;
  metrics::McdScaling mcd_scaling = metrics::McdScaling::kNone;

  bool operator==(const Conventions&) const = default;
};

// Means over the successful rows of one group. Each mean is undefined when
// no row contributes a value.
struct GroupAggregate {
  std::string key;
  std::size_t pairs = 0;          // successful rows
  std::size_t errored = 0;        // rows skipped because evaluation failed
  std::size_t gpe_undefined = 0;  // successful rows without a GPE value
  std::optional<double> mcd;
  std::optional<double> gpe;
  std::optional<double> vde;
  std::optional<double> ffe;

  bool operator==(const GroupAggregate&) const = default;
};

struct ReportTable {
  std::string key_name = "Shots";  // "Shots", or "Group" for a group column
  Conventions conventions;
  std::vector<GroupAggregate> groups;
  std::vector<PairResult> pairs;  // ordered by pair_id

  bool operator==(const ReportTable&) const = default;
};

// Group label of a row: its group column when present, else "<shots>-shot".
std::string group_key(const PairResult& r);

// Sorts rows by pair_id and aggregates them. Groups follow the shot count
// when grouping by shots and lexicographic order otherwise. Throws
// kEmptyInput for no rows and kInvalidArgument when successful rows
// disagree on conventions.
ReportTable build_report(std::vector<PairResult> pairs);

enum class TableFormat { kCsv, kMarkdown, kJson };

// Throws kInvalidArgument for an unknown name.
TableFormat parse_table_format(const std::string& name);

// Columns are always MCD, GPE, VDE, FFE. Markdown shows GPE, VDE and FFE
// as percentages with two decimals; CSV and JSON carry raw fractions.
// Throws kEmptyInput for a report without groups.
std::string render_table(const ReportTable& report, TableFormat format);

// Inverse of the JSON rendering. Throws kParseError on malformed input.
ReportTable parse_report_json(const std::string& text);

// Per-pair records as a JSON array, one object per row.
std::string pairs_to_json(const std::vector<PairResult>& pairs);

// Throws kParseError on malformed input.
std::vector<PairResult> pairs_from_json(const std::string& text);

std::vector<PairResult> load_pairs(const std::filesystem::path& path);

}  // namespace prosody::harness

#endif  // PROSODY_HARNESS_REPORT_H_
