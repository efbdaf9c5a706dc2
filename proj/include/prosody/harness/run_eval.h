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

#ifndef PROSODY_HARNESS_RUN_EVAL_H_
#define PROSODY_HARNESS_RUN_EVAL_H_

#include <vector>

#include "prosody/harness/config.h"
#include "prosody/harness/manifest.h"
#include "prosody/harness/report.h"

namespace prosody::harness {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitPartial = 2 };

// Evaluates one manifest row. Never throws for audio problems; they are
// captured as a kError result naming the failing path.
PairResult evaluate_row(const ManifestRow& row, const EvalConfig& cfg);

// Evaluates every row on `parallelism` worker threads (clamped to at least
// one and at most the row count). Results are ordered by pair_id and do
// not depend on the thread count.
ReportTable run_eval(const Manifest& manifest, const EvalConfig& cfg, int parallelism = 1);

// kExitPartial when any row errored, kExitOk otherwise.
int exit_code_for(const ReportTable& report);

}  // namespace prosody::harness

#endif  // PROSODY_HARNESS_RUN_EVAL_H_
