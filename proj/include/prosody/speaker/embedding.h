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

#ifndef PROSODY_SPEAKER_EMBEDDING_H_
#define PROSODY_SPEAKER_EMBEDDING_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace prosody::speaker {

inline constexpr std::size_t kEmbeddingDim = 256;

enum class Source { kActual, kGenerated };

const char* source_name(Source s);

struct Embedding {
  std::vector<double> vector;
  std::string speaker_id;
  std::string utterance_id;
  Source source = Source::kActual;
};

// CSV rows: speaker_id, utterance_id, source, then `dim` values. A header
// row is skipped when its fourth field is not numeric. Throws kParseError on
// malformed rows (naming the line) and kUnreadableFile when the file cannot
// be opened.
std::vector<Embedding> load_embeddings(const std::filesystem::path& path,
                                       std::size_t dim = kEmbeddingDim);

void save_embeddings(const std::filesystem::path& path, std::span<const Embedding> rows);

}  // namespace prosody::speaker

#endif  // PROSODY_SPEAKER_EMBEDDING_H_
