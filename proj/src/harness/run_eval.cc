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

#include "prosody/harness/run_eval.h"

#include <algorithm>
#include <atomic>
#include <thread>

#include "prosody/error.h"
#include "prosody/signal/audio.h"

namespace prosody::harness {
namespace {

signal::Waveform load_checked(const std::filesystem::path& path) {
  try {
    return signal::load_wav(path);
  } catch (const Error& e) {
    const std::string msg = e.what();
    // Audio errors already name the file; add it only when they do not.
    if (msg.find(path.string()) != std::string::npos) throw;
    fail(e.code(), path.string() + ": " + msg);
  }
}

}  // namespace

PairResult evaluate_row(const ManifestRow& row, const EvalConfig& cfg) {
  PairResult result;
  result.pair_id = row.pair_id;
  result.speaker_id = row.speaker_id;
  result.shots = row.shots;
  result.group = row.group;
  try {
    const signal::Waveform ref = load_checked(row.ref_path);
    const signal::Waveform pred = load_checked(row.pred_path);
    result.metrics = metrics::evaluate_pair(ref, pred, cfg.pair);
    result.status = PairStatus::kOk;
  } catch (const Error& e) {
    result.status = PairStatus::kError;
    result.error = std::string(error_code_name(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    result.status = PairStatus::kError;
    result.error = e.what();
  }
  return result;
}

ReportTable run_eval(const Manifest& manifest, const EvalConfig& cfg, int parallelism) {
  require(!manifest.rows.empty(), ErrorCode::kEmptyInput, "manifest has no rows");
  validate(cfg);
  const std::size_t n = manifest.rows.size();
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(parallelism, 1)), 1, n);

  std::vector<PairResult> results(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      results[i] = evaluate_row(manifest.rows[i], cfg);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return build_report(std::move(results));
}

int exit_code_for(const ReportTable& report) {
  const bool any_error =
      std::any_of(report.pairs.begin(), report.pairs.end(),
                  [](const PairResult& p) { return p.status == PairStatus::kError; });
  return any_error ? kExitPartial : kExitOk;
}

}  // namespace prosody::harness
