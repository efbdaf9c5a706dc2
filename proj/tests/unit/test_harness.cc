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

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <random>

#include "doctest.h"
#include "fixtures.h"
#include "prosody/csv.h"
#include "prosody/error.h"
#include "prosody/harness/config.h"
#include "prosody/harness/manifest.h"
#include "prosody/harness/report.h"
#include "prosody/harness/run_eval.h"
#include "prosody/signal/audio.h"

using namespace prosody;
using namespace prosody::harness;

namespace {

std::vector<std::vector<std::string>> parse_records(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(csv::split_line(line));
  }
  return out;
}

PairResult ok_pair(const std::string& id, int shots, std::optional<double> gpe, double vde,
                   double ffe, double mcd) {
  PairResult r;
  r.pair_id = id;
  r.speaker_id = "spk";
  r.shots = shots;
  metrics::MetricsReport m;
  m.gpe = gpe;
  m.vde = vde;
  m.ffe = ffe;
  m.mcd = mcd;
  m.frames_total = 100;
  r.metrics = m;
  return r;
}

PairResult error_pair(const std::string& id, int shots) {
  PairResult r;
  r.pair_id = id;
  r.speaker_id = "spk";
  r.shots = shots;
  r.status = PairStatus::kError;
  r.error = "unreadable_file: cannot open x.wav";
  return r;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kInvalidArgument;
}

// Writes a small corpus of voiced clips and a manifest referencing them.
struct Corpus {
  testing::TempDir dir;
  Manifest manifest;

  explicit Corpus(bool with_missing = false) {
    const double freqs[] = {140.0, 180.0, 220.0, 260.0};
    std::string text = "pair_id,speaker_id,shots,ref_path,pred_path\n";
    for (int i = 0; i < 4; ++i) {
      const std::string ref = "ref" + std::to_string(i) + ".wav";
      const std::string pred = "pred" + std::to_string(i) + ".wav";
      signal::write_wav(dir / ref, testing::tone(freqs[i], 0.5));
      signal::write_wav(dir / pred, testing::tone(freqs[i] * 1.05, 0.45));
      text += "p" + std::to_string(i) + ",s" + std::to_string(i % 2) + "," +
              std::to_string(i % 2 == 0 ? 1 : 5) + "," + ref + "," + pred + "\n";
    }
    if (with_missing) text += "p9,s0,1,ref0.wav,absent.wav\n";
    testing::write_text(dir / "manifest.csv", text);
    manifest = load_manifest(dir / "manifest.csv");
  }
};

}  // namespace

TEST_CASE("config serialization is a fixed point") {
  EvalConfig cfg;
  cfg.pair.gpe_threshold = 0.1;
  cfg.pair.mcd_scaling = metrics::McdScaling::kDb;
  cfg.pair.yin.f_max = 600.0;
  cfg.attention_divisor = adanorm::AttentionDivisor::kDk;
  const std::string text = serialize_config(cfg);
  CHECK(parse_config(text) == cfg);
  CHECK(serialize_config(parse_config(text)) == text);
  CHECK(parse_config(serialize_config(EvalConfig{})) == EvalConfig{});
  CHECK(parse_config("# comment only\n\n") == EvalConfig{});
  CHECK(parse_config("  mfcc_k = 20  \n").pair.num_coeffs == 20);
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK(code_of([] { parse_config("bogus = 1\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_config("hop = ten\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_config("mcd_scaling = log10\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_config("hop\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_config("mfcc_k = 0\n"); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { parse_config("gpe_threshold = -0.2\n"); }) == ErrorCode::kInvalidArgument);
  try {
    parse_config("# header\nhop = 256\nnope = 3\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK(code_of([] { load_config("/nonexistent/prosodykit.cfg"); }) ==
        ErrorCode::kUnreadableFile);
}

TEST_CASE("manifest parsing") {
  const std::filesystem::path base = "/data/corpus";
  const Manifest m = parse_manifest(
      parse_records("shots,pred_path,ref_path,speaker_id,pair_id\n"
                 "3,gen/a.wav,/abs/ref.wav,spk1,a\n"
                 "0,gen/b.wav,ref/b.wav,spk2,b\n"),
      base, "m.csv");
  REQUIRE(m.rows.size() == 2);
  CHECK_FALSE(m.has_group_column);
  CHECK(m.rows[0].pair_id == "a");
  CHECK(m.rows[0].shots == 3);
  CHECK(m.rows[0].ref_path == "/abs/ref.wav");
  CHECK(m.rows[0].pred_path == base / "gen/a.wav");
  CHECK(m.rows[1].ref_path == base / "ref/b.wav");
  CHECK_FALSE(m.rows[0].group.has_value());

  const Manifest g = parse_manifest(
      parse_records("pair_id,speaker_id,shots,ref_path,pred_path,group\nx,s,1,r.wav,p.wav,cond A\n"),
      base, "g.csv");
  CHECK(g.has_group_column);
  CHECK(g.rows[0].group == "cond A");

  const std::string header = "pair_id,speaker_id,shots,ref_path,pred_path\n";
  auto bad = [&](const std::string& body) {
    return code_of([&] { parse_manifest(parse_records(header + body), base, "bad.csv"); });
  };
  CHECK(bad("a,s,1,r.wav,p.wav\na,s,2,r.wav,p.wav\n") == ErrorCode::kParseError);
  CHECK(bad("a,s,6,r.wav,p.wav\n") == ErrorCode::kParseError);
  CHECK(bad("a,s,-1,r.wav,p.wav\n") == ErrorCode::kParseError);
  CHECK(bad("a,s,1x,r.wav,p.wav\n") == ErrorCode::kParseError);
  CHECK(bad("a,s,1,,p.wav\n") == ErrorCode::kParseError);
  CHECK(bad("a,s,1,r.wav\n") == ErrorCode::kParseError);
  CHECK(bad("") == ErrorCode::kEmptyInput);
  CHECK(code_of([&] {
          parse_manifest(parse_records("pair_id,shots\n"), base, "h.csv");
        }) == ErrorCode::kParseError);
  try {
    parse_manifest(parse_records(header + "a,s,1,r.wav,p.wav\na,s,2,r.wav,p.wav\n"), base, "dup.csv");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("dup.csv:3") != std::string::npos);
  }
}

TEST_CASE("build_report aggregates per shot group") {
  std::vector<PairResult> pairs = {
      ok_pair("c", 5, 0.1, 0.2, 0.3, 8.0),     ok_pair("a", 1, 0.2, 0.1, 0.2, 10.0),
      ok_pair("b", 1, std::nullopt, 0.3, 0.4, 12.0), error_pair("d", 1),
      ok_pair("e", 1, 0.4, 0.2, 0.3, 14.0)};
  const ReportTable r = build_report(pairs);
  CHECK(r.key_name == "Shots");
  REQUIRE(r.groups.size() == 2);
  const GroupAggregate& one = r.groups[0];
  CHECK(one.key == "1-shot");
  CHECK(one.pairs == 3);
  CHECK(one.errored == 1);
  CHECK(one.gpe_undefined == 1);
  CHECK(*one.mcd == doctest::Approx(12.0));
  CHECK(*one.gpe == doctest::Approx(0.3));
  CHECK(*one.vde == doctest::Approx(0.2));
  CHECK(*one.ffe == doctest::Approx(0.3));
  CHECK(r.groups[1].key == "5-shot");
  CHECK(r.pairs.front().pair_id == "a");
  CHECK(r.pairs.back().pair_id == "e");

  // Ten shots sort after two even though "10" < "2" lexically.
  std::vector<PairResult> order = {ok_pair("x", 0, 0.1, 0.1, 0.1, 1.0),
                                   ok_pair("y", 5, 0.1, 0.1, 0.1, 1.0),
                                   ok_pair("z", 2, 0.1, 0.1, 0.1, 1.0)};
  const ReportTable ro = build_report(order);
  CHECK(ro.groups[0].key == "0-shot");
  CHECK(ro.groups[1].key == "2-shot");
  CHECK(ro.groups[2].key == "5-shot");

  auto mixed = pairs;
  mixed[0].metrics->num_coeffs = 20;
  CHECK_THROWS_AS(build_report(mixed), Error);
  CHECK(code_of([] { build_report({}); }) == ErrorCode::kEmptyInput);

  const ReportTable all_err = build_report({error_pair("q", 2)});
  CHECK(all_err.groups[0].pairs == 0);
  CHECK_FALSE(all_err.groups[0].mcd.has_value());
  CHECK(exit_code_for(all_err) == kExitPartial);
  CHECK(exit_code_for(build_report(order)) == kExitOk);
}

TEST_CASE("rendered tables") {
  std::vector<PairResult> pairs = {ok_pair("a", 1, 0.2756, 0.1752, 0.3444, 13.42),
                                   ok_pair("b", 3, std::nullopt, 0.5, 0.5, 9.78),
                                   error_pair("c", 3)};
  const ReportTable r = build_report(pairs);
  const std::string md = render_table(r, TableFormat::kMarkdown);
  CHECK(md.rfind("Shots | MCD↓ | GPE↓ | VDE↓ | FFE↓\n--- | --- | --- | --- | ---\n", 0) == 0);
  CHECK(md.find("1-shot | 13.42 | 27.56 | 17.52 | 34.44\n") != std::string::npos);
  CHECK(md.find("3-shot | 9.78 | n/a | 50.00 | 50.00\n") != std::string::npos);
  CHECK(md.find("excluded from the GPE mean") != std::string::npos);
  CHECK(md.find("1 errored pair(s) skipped") != std::string::npos);

  const std::string csv_text = render_table(r, TableFormat::kCsv);
  const auto rows = parse_records(csv_text);
  CHECK(rows[0] == std::vector<std::string>{"Shots", "MCD", "GPE", "VDE", "FFE", "pairs",
                                            "errored", "gpe_undefined"});
  CHECK(rows[1][0] == "1-shot");
  CHECK(std::stod(rows[1][2]) == 0.2756);
  CHECK(rows[2][2].empty());
  CHECK(rows[2][6] == "1");

  CHECK(parse_report_json(render_table(r, TableFormat::kJson)) == r);
  CHECK(pairs_from_json(pairs_to_json(r.pairs)) == r.pairs);

  auto labelled = pairs;
  for (auto& p : labelled) p.group = "base, conv";
  labelled[1].group = "attn";
  const ReportTable g = build_report(labelled);
  CHECK(g.key_name == "Group");
  CHECK(g.groups[0].key == "attn");
  const auto grows = parse_records(render_table(g, TableFormat::kCsv));
  CHECK(grows[0][0] == "Group");
  CHECK(grows[2][0] == "base, conv");

  CHECK(parse_table_format("md") == TableFormat::kMarkdown);
  CHECK_THROWS_AS(parse_table_format("html"), Error);
  CHECK(code_of([] { pairs_from_json("{\"not\": \"an array\"}"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { pairs_from_json("[{"); }) == ErrorCode::kParseError);
}

TEST_CASE("evaluation of identical pairs is exact") {
  testing::TempDir dir;
  signal::write_wav(dir / "a.wav", testing::tone(200.0, 0.6));
  testing::write_text(dir / "m.csv",
                      "pair_id,speaker_id,shots,ref_path,pred_path\nself,s,2,a.wav,a.wav\n");
  const ReportTable r = run_eval(load_manifest(dir / "m.csv"), EvalConfig{});
  REQUIRE(r.pairs.size() == 1);
  const auto& m = *r.pairs[0].metrics;
  CHECK(m.mcd == 0.0);
  CHECK(m.vde == 0.0);
  CHECK(m.ffe == 0.0);
  CHECK(m.gpe == 0.0);
  CHECK(exit_code_for(r) == kExitOk);
}

TEST_CASE("parallel evaluation matches serial and is deterministic") {
  Corpus corpus;
  const EvalConfig cfg;
  const ReportTable serial = run_eval(corpus.manifest, cfg, 1);
  const ReportTable parallel = run_eval(corpus.manifest, cfg, 4);
  CHECK(serial == parallel);
  for (auto format : {TableFormat::kCsv, TableFormat::kMarkdown, TableFormat::kJson}) {
    CHECK(render_table(serial, format) == render_table(run_eval(corpus.manifest, cfg, 3), format));
  }
  CHECK(serial.groups.size() == 2);
  for (const auto& p : serial.pairs) {
    REQUIRE(p.status == PairStatus::kOk);
    CHECK(p.metrics->mcd > 0.0);
    CHECK(p.metrics->vde > 0.0);
  }
}

TEST_CASE("failing rows are reported without stopping the run") {
  Corpus corpus(true);
  const ReportTable r = run_eval(corpus.manifest, EvalConfig{}, 2);
  CHECK(exit_code_for(r) == kExitPartial);
  const auto bad = std::find_if(r.pairs.begin(), r.pairs.end(),
                                [](const PairResult& p) { return p.pair_id == "p9"; });
  REQUIRE(bad != r.pairs.end());
  CHECK(bad->status == PairStatus::kError);
  CHECK(bad->error.find("absent.wav") != std::string::npos);
  CHECK(bad->error.find("unreadable_file") != std::string::npos);
  CHECK(r.groups[0].errored == 1);
  CHECK(r.groups[0].pairs == 2);

  EvalConfig broken;
  broken.pair.hop = 0;
  CHECK_THROWS_AS(run_eval(corpus.manifest, broken), Error);

  signal::write_wav(corpus.dir / "sr.wav", testing::tone(200.0, 0.3, 16000));
  ManifestRow row = corpus.manifest.rows[0];
  row.pred_path = corpus.dir / "sr.wav";
  const PairResult mismatch = evaluate_row(row, EvalConfig{});
  CHECK(mismatch.status == PairStatus::kError);
  CHECK(mismatch.error.find("sample_rate_mismatch") != std::string::npos);
}
