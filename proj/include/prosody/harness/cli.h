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

#ifndef PROSODY_HARNESS_CLI_H_
#define PROSODY_HARNESS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace prosody::harness {

// Runs the prosodykit command line. `args` excludes the program name.
// Returns 0 on success, 1 on a validation error (after printing a one-line
// diagnostic to `err`) and 2 when an eval batch had failing rows.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace prosody::harness

#endif  // PROSODY_HARNESS_CLI_H_
