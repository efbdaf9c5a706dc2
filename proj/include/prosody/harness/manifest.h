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

#ifndef PROSODY_HARNESS_MANIFEST_H_
#define PROSODY_HARNESS_MANIFEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace prosody::harness {

struct ManifestRow {
  std::string pair_id;
  std::string speaker_id;
  int shots = 0;
  std::filesystem::path ref_path;   // resolved against the manifest directory
  std::filesystem::path pred_path;
  std::optional<std::string> group;  // free-form grouping label

  bool operator==(const ManifestRow&) const = default;
};

struct Manifest {
  std::vector<ManifestRow> rows;
  bool has_group_column = false;
};

// CSV with header pair_id,speaker_id,shots,ref_path,pred_path[,group] in any
// column order. Relative paths are resolved against `base_dir`. Throws
// kParseError for a bad header, bad row, duplicate pair_id or shots outside
// 0..5, and kEmptyInput when there are no rows.
Manifest parse_manifest(const std::vector<std::vector<std::string>>& records,
                        const std::filesystem::path& base_dir, const std::string& origin);

// Reads and parses a manifest file; paths are relative to its directory.
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace prosody::harness

#endif  // PROSODY_HARNESS_MANIFEST_H_
