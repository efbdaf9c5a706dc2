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

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.h"
#include "nlohmann/json.hpp"
#include "prosody/csv.h"
#include "prosody/harness/cli.h"
#include "prosody/harness/report.h"
#include "prosody/signal/audio.h"
#include "prosody/speaker/embedding.h"

using namespace prosody;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = harness::run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> rows_of(const std::filesystem::path& p) {
  return csv::read_file(p);
}

}  // namespace

TEST_CASE("eval on a self pair exits cleanly with zero metrics") {
  testing::TempDir dir;
  signal::write_wav(dir / "a.wav", testing::tone(180.0, 0.5));
  testing::write_text(dir / "m.csv",
                      "pair_id,speaker_id,shots,ref_path,pred_path\nself,s,1,a.wav,a.wav\n");
  const Run r = cli({"eval", "--manifest", (dir / "m.csv").string(), "--out",
                     (dir / "out").string(), "--jobs", "2"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  for (const char* f : {"pairs.json", "report.md", "report.csv", "report.json"}) {
    CHECK(std::filesystem::exists(dir / "out" / f));
  }
  const json pairs = json::parse(testing::read_text(dir / "out" / "pairs.json"));
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0]["status"] == "ok");
  CHECK(pairs[0]["mcd"] == 0.0);
  CHECK(pairs[0]["gpe"] == 0.0);
  CHECK(pairs[0]["vde"] == 0.0);
  CHECK(pairs[0]["ffe"] == 0.0);
  CHECK(testing::read_text(dir / "out" / "report.md").find("1-shot | 0.00 | 0.00 | 0.00 | 0.00") !=
        std::string::npos);
}

TEST_CASE("eval with a missing file reports partial failure") {
  testing::TempDir dir;
  signal::write_wav(dir / "a.wav", testing::tone(180.0, 0.5));
  testing::write_text(dir / "m.csv",
                      "pair_id,speaker_id,shots,ref_path,pred_path\n"
                      "good,s,1,a.wav,a.wav\nbad,s,1,a.wav,gone.wav\n");
  const Run r = cli({"eval", "--manifest", (dir / "m.csv").string(), "--out",
                     (dir / "out").string()});
  CHECK(r.code == 2);
  const json pairs = json::parse(testing::read_text(dir / "out" / "pairs.json"));
  CHECK(pairs[0]["pair_id"] == "bad");
  CHECK(pairs[0]["status"] == "error");
  CHECK(pairs[0]["error"].get<std::string>().find("gone.wav") != std::string::npos);
}

TEST_CASE("pitch on a pure tone") {
  testing::TempDir dir;
  signal::write_wav(dir / "t.wav", testing::tone(220.0, 1.0));
  const Run r = cli({"pitch", "--in", (dir / "t.wav").string(), "--out",
                     (dir / "p.csv").string()});
  REQUIRE(r.code == 0);
  const auto rows = rows_of(dir / "p.csv");
  CHECK(rows[0] == std::vector<std::string>{"frame_index", "time_sec", "f0_hz", "voiced",
                                            "aperiodicity"});
  CHECK(rows.size() == 1 + 87);
  std::size_t checked = 0;
  for (std::size_t i = 5; i + 8 < rows.size(); ++i) {
    CHECK(rows[i][3] == "1");
    CHECK(std::fabs(std::stod(rows[i][2]) - 220.0) <= 220.0 * 0.005);
    ++checked;
  }
  CHECK(checked > 60);

  const Run to_stdout = cli({"pitch", "--in", (dir / "t.wav").string()});
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out == testing::read_text(dir / "p.csv"));
}

TEST_CASE("missing input names the path") {
  const Run r = cli({"pitch", "--in", "/no/such/file.wav"});
  CHECK(r.code != 0);
  CHECK(r.err.find("/no/such/file.wav") != std::string::npos);
  CHECK(r.err.find("unreadable_file") != std::string::npos);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

  CHECK(cli({"pitch"}).code == 1);
  CHECK(cli({"no-such-command"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("features") {
  testing::TempDir dir;
  signal::write_wav(dir / "t.wav", testing::tone(300.0, 0.5));
  const std::string in = (dir / "t.wav").string();
  const Run mfcc = cli({"features", "--in", in, "--mfcc", "13"});
  REQUIRE(mfcc.code == 0);
  CHECK(mfcc.out.rfind("frame_index,c1,c2,", 0) == 0);
  CHECK(mfcc.out.find(",c13\n") != std::string::npos);
  const Run mel = cli({"features", "--in", in, "--mel"});
  REQUIRE(mel.code == 0);
  CHECK(mel.out.find(",mel79\n") != std::string::npos);
  const Run energy = cli({"features", "--in", in, "--energy"});
  REQUIRE(energy.code == 0);
  CHECK(energy.out.rfind("frame_index,energy\n", 0) == 0);
  CHECK(cli({"features", "--in", in, "--mel", "--energy"}).code == 1);
  CHECK(cli({"features", "--in", in}).code == 1);
}

TEST_CASE("simcheck writes matrix, summary and classifier output") {
  testing::TempDir dir;
  std::mt19937_64 rng(51);
  std::vector<speaker::Embedding> actual, generated;
  for (int s = 0; s < 3; ++s) {
    std::vector<double> center(speaker::kEmbeddingDim, 0.0);
    center[s] = 20.0;
    for (int u = 0; u < 4; ++u) {
      auto v = center;
      for (double& x : v) x += std::normal_distribution<double>(0.0, 1.0)(rng);
      speaker::Embedding e{v, "spk" + std::to_string(s), "u" + std::to_string(u),
                           u < 3 ? speaker::Source::kActual : speaker::Source::kGenerated};
      (u < 3 ? actual : generated).push_back(e);
    }
  }
  speaker::save_embeddings(dir / "actual.csv", actual);
  speaker::save_embeddings(dir / "generated.csv", generated);
  const Run r = cli({"simcheck", "--generated", (dir / "generated.csv").string(), "--actual",
                     (dir / "actual.csv").string(), "--out", (dir / "sim").string(), "--gnb"});
  REQUIRE(r.code == 0);
  const auto matrix = rows_of(dir / "sim" / "matrix.csv");
  CHECK(matrix.size() == 4);
  CHECK(matrix[0].size() == 10);
  const json summary = json::parse(testing::read_text(dir / "sim" / "summary.json"));
  CHECK(summary.dump().find("same_speaker") != std::string::npos);
  const auto gnb = rows_of(dir / "sim" / "gnb.csv");
  REQUIRE(gnb.size() == 4);
  for (std::size_t i = 1; i < gnb.size(); ++i) CHECK(gnb[i][3] == "1");
}

TEST_CASE("morph-tracks scales both tracks") {
  testing::TempDir dir;
  testing::write_text(dir / "p.csv", "frame_index,f0_hz\n0,200\n1,0\n2,240\n");
  testing::write_text(dir / "e.csv", "1.5\n2\n4\n");
  const Run r = cli({"morph-tracks", "--pitch", (dir / "p.csv").string(), "--energy",
                     (dir / "e.csv").string(), "--alpha-f0", "1.25", "--alpha-e", "0.5"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "frame_index,pitch,energy\n0,250,0.75\n1,0,1\n2,300,2\n");
  testing::write_text(dir / "short.csv", "1\n2\n");
  CHECK(cli({"morph-tracks", "--pitch", (dir / "p.csv").string(), "--energy",
             (dir / "short.csv").string(), "--alpha-f0", "1", "--alpha-e", "1"})
            .code == 1);
}

TEST_CASE("report renders stored per-pair results") {
  testing::TempDir dir;
  harness::PairResult p;
  p.pair_id = "a";
  p.speaker_id = "s";
  p.shots = 1;
  metrics::MetricsReport m;
  m.gpe = 0.2756;
  m.vde = 0.1752;
  m.ffe = 0.3444;
  m.mcd = 13.42;
  p.metrics = m;
  testing::write_text(dir / "pairs.json", harness::pairs_to_json({p}));
  const Run md = cli({"report", "--pairs", (dir / "pairs.json").string()});
  REQUIRE(md.code == 0);
  CHECK(md.out.find("1-shot | 13.42 | 27.56 | 17.52 | 34.44") != std::string::npos);
  const Run c = cli({"report", "--pairs", (dir / "pairs.json").string(), "--format", "csv"});
  CHECK(c.out.rfind("Shots,MCD,GPE,VDE,FFE", 0) == 0);
  CHECK(cli({"report", "--pairs", (dir / "pairs.json").string(), "--format", "xml"}).code == 1);
}

TEST_CASE("weights bundle is reproducible") {
  testing::TempDir dir;
  const std::string a = (dir / "a").string();
  const std::string b = (dir / "b").string();
  REQUIRE(cli({"weights", "--kind", "variance-predictor", "--seed", "9", "--out", a}).code == 0);
  REQUIRE(cli({"weights", "--kind", "variance-predictor", "--seed", "9", "--out", b}).code == 0);
  CHECK(testing::read_text(a + ".bin") == testing::read_text(b + ".bin"));
  CHECK(testing::read_text(a + ".csv") == testing::read_text(b + ".csv"));
  CHECK(cli({"weights", "--kind", "transformer", "--out", a}).code == 1);
}

TEST_CASE("kernel-check passes") {
  const Run r = cli({"kernel-check", "--seed", "5", "--trials", "5"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(cli({"kernel-check", "--trials", "0"}).code == 1);
}

TEST_CASE("installed binary reports errors on one line") {
  const std::string cmd = std::string(PROSODYKIT_BINARY) + " pitch --in /no/such.wav 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CHECK(status != 0);
}
