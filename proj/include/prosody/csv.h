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

#ifndef PROSODY_CSV_H_
#define PROSODY_CSV_H_

#include <filesystem>
#include <string>
#include <vector>

namespace prosody::csv {

// Splits one CSV record, honoring double-quoted fields. Surrounding spaces
// and a trailing CR are stripped from unquoted fields.
std::vector<std::string> split_line(const std::string& line);

// Quotes a field when it contains a comma, quote or newline.
std::string escape(const std::string& field);

// Reads all nonblank records of a file. Throws kUnreadableFile naming the
// path when it cannot be opened.
std::vector<std::vector<std::string>> read_file(const std::filesystem::path& path);

bool parse_double(const std::string& text, double* value);

}  // namespace prosody::csv

#endif  // PROSODY_CSV_H_
