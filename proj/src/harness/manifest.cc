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

#include "prosody/harness/manifest.h"

#include <array>
#include <charconv>
#include <set>

#include "prosody/csv.h"
#include "prosody/error.h"

namespace prosody::harness {
namespace {

constexpr std::array<const char*, 5> kRequired = {"pair_id", "speaker_id", "shots", "ref_path",
                                                  "pred_path"};
constexpr int kMaxShots = 5;

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

Manifest parse_manifest(const std::vector<std::vector<std::string>>& records,
                        const std::filesystem::path& base_dir, const std::string& origin) {
  if (records.empty()) fail(ErrorCode::kEmptyInput, origin + ": manifest is empty");

  const auto& header = records.front();
  auto column = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  };
  std::array<int, kRequired.size()> idx{};
  for (std::size_t k = 0; k < kRequired.size(); ++k) {
    idx[k] = column(kRequired[k]);
    if (idx[k] < 0) {
      fail(ErrorCode::kParseError,
           origin + ": manifest header lacks column '" + kRequired[k] + "'");
    }
  }
  const int group_col = column("group");

  Manifest manifest;
  manifest.has_group_column = group_col >= 0;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    const std::string where = origin + ":" + std::to_string(r + 1);
    if (rec.size() != header.size()) {
      fail(ErrorCode::kParseError, where + ": expected " + std::to_string(header.size()) +
                                       " fields, got " + std::to_string(rec.size()));
    }
    ManifestRow row;
    row.pair_id = rec[idx[0]];
    row.speaker_id = rec[idx[1]];
    const std::string& shots = rec[idx[2]];
    auto [ptr, ec] = std::from_chars(shots.data(), shots.data() + shots.size(), row.shots);
    if (ec != std::errc() || ptr != shots.data() + shots.size() || row.shots < 0 ||
        row.shots > kMaxShots) {
      fail(ErrorCode::kParseError, where + ": shots must be an integer in 0..5, got '" +
                                       shots + "'");
    }
    if (row.pair_id.empty()) fail(ErrorCode::kParseError, where + ": empty pair_id");
    if (!seen.insert(row.pair_id).second) {
      fail(ErrorCode::kParseError, where + ": duplicate pair_id '" + row.pair_id + "'");
    }
    if (rec[idx[3]].empty() || rec[idx[4]].empty()) {
      fail(ErrorCode::kParseError, where + ": empty audio path");
    }
    row.ref_path = resolve(rec[idx[3]], base_dir);
    row.pred_path = resolve(rec[idx[4]], base_dir);
    if (group_col >= 0) row.group = rec[group_col];
    manifest.rows.push_back(std::move(row));
  }
  if (manifest.rows.empty()) fail(ErrorCode::kEmptyInput, origin + ": manifest has no rows");
  return manifest;
}

Manifest load_manifest(const std::filesystem::path& path) {
  return parse_manifest(csv::read_file(path), path.parent_path(), path.string());
}

}  // namespace prosody::harness
