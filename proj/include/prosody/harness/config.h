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

#ifndef PROSODY_HARNESS_CONFIG_H_
#define PROSODY_HARNESS_CONFIG_H_

#include <filesystem>
#include <string>

#include "prosody/adanorm/layers.h"
#include "prosody/metrics/evaluate.h"

namespace prosody::harness {

struct EvalConfig {
  metrics::PairConfig pair;
  adanorm::AttentionDivisor attention_divisor = adanorm::AttentionDivisor::kSqrtDk;

  bool operator==(const EvalConfig& o) const;
};

// Throws kInvalidArgument when any field violates a module precondition.
void validate(const EvalConfig& cfg);

// Flat "key = value" text, one key per line, '#' comments. Reals are
// written with 17 significant digits so parse(serialize(c)) == c.
std::string serialize_config(const EvalConfig& cfg);

// Keys absent from the text keep their defaults. Throws kParseError on
// unknown keys or malformed values (naming the line), then validates.
EvalConfig parse_config(const std::string& text);

EvalConfig load_config(const std::filesystem::path& path);

const char* mcd_scaling_name(metrics::McdScaling s);
const char* attention_divisor_name(adanorm::AttentionDivisor d);

}  // namespace prosody::harness

#endif  // PROSODY_HARNESS_CONFIG_H_
