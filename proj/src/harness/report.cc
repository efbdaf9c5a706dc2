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

#include "prosody/harness/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "prosody/csv.h"
#include "prosody/error.h"

namespace prosody::harness {
namespace {

using nlohmann::json;

const char* scaling_name(metrics::McdScaling s) {
  return s == metrics::McdScaling::kDb ? "db" : "none";
}

metrics::McdScaling scaling_from(const std::string& name) {
  if (name == "none") return metrics::McdScaling::kNone;
  if (name == "db") return metrics::McdScaling::kDb;
  fail(ErrorCode::kParseError, "unknown mcd_scaling '" + name + "'");
}

Conventions conventions_of(const metrics::MetricsReport& m) {
  return Conventions{m.gpe_threshold, m.num_coeffs, m.mcd_scaling};
}

json conventions_json(const Conventions& c) {
  return json{{"log_base", "e"},
              {"mcd_scaling", scaling_name(c.mcd_scaling)},
              {"gpe_threshold", c.gpe_threshold},
              {"mfcc_k", c.num_coeffs}};
}

Conventions conventions_from(const json& j) {
  if (j.contains("log_base") && j.at("log_base").get<std::string>() != "e") {
    fail(ErrorCode::kParseError, "only natural-log conventions are supported");
  }
  Conventions c;
  c.mcd_scaling = scaling_from(j.at("mcd_scaling").get<std::string>());
  c.gpe_threshold = j.at("gpe_threshold").get<double>();
  c.num_coeffs = j.at("mfcc_k").get<int>();
  return c;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json pair_json(const PairResult& r) {
  json j{{"pair_id", r.pair_id}, {"speaker_id", r.speaker_id}, {"shots", r.shots}};
  if (r.group) j["group"] = *r.group;
  if (r.status == PairStatus::kError) {
    j["status"] = "error";
    j["error"] = r.error;
    return j;
  }
  j["status"] = "ok";
  const auto& m = *r.metrics;
  j["gpe"] = optional_json(m.gpe);
  j["vde"] = m.vde;
  j["ffe"] = m.ffe;
  j["mcd"] = m.mcd;
  j["frames_total"] = m.frames_total;
  j["frames_both_voiced"] = m.frames_both_voiced;
  j["gross_pitch_frames"] = m.gross_pitch_frames;
  j["voicing_error_frames"] = m.voicing_error_frames;
  j["conventions"] = conventions_json(conventions_of(m));
  return j;
}

PairResult pair_from(const json& j) {
  PairResult r;
  r.pair_id = j.at("pair_id").get<std::string>();
  r.speaker_id = j.value("speaker_id", std::string{});
  r.shots = j.value("shots", 0);
  if (j.contains("group")) r.group = j.at("group").get<std::string>();
  const std::string status = j.value("status", std::string{"ok"});
  if (status == "error") {
    r.status = PairStatus::kError;
    r.error = j.value("error", std::string{});
    return r;
  }
  if (status != "ok") fail(ErrorCode::kParseError, "unknown status '" + status + "'");
  metrics::MetricsReport m;
  m.gpe = optional_from(j, "gpe");
  m.vde = j.at("vde").get<double>();
  m.ffe = j.at("ffe").get<double>();
  m.mcd = j.at("mcd").get<double>();
  m.frames_total = j.value("frames_total", std::size_t{0});
  m.frames_both_voiced = j.value("frames_both_voiced", std::size_t{0});
  m.gross_pitch_frames = j.value("gross_pitch_frames", std::size_t{0});
  m.voicing_error_frames = j.value("voicing_error_frames", std::size_t{0});
  const Conventions c = conventions_from(j.at("conventions"));
  m.gpe_threshold = c.gpe_threshold;
  m.num_coeffs = c.num_coeffs;
  m.mcd_scaling = c.mcd_scaling;
  r.metrics = m;
  return r;
}

json group_json(const GroupAggregate& g) {
  return json{{"key", g.key},
              {"pairs", g.pairs},
              {"errored", g.errored},
              {"gpe_undefined", g.gpe_undefined},
              {"mcd", optional_json(g.mcd)},
              {"gpe", optional_json(g.gpe)},
              {"vde", optional_json(g.vde)},
              {"ffe", optional_json(g.ffe)}};
}

GroupAggregate group_from(const json& j) {
  GroupAggregate g;
  g.key = j.at("key").get<std::string>();
  g.pairs = j.at("pairs").get<std::size_t>();
  g.errored = j.at("errored").get<std::size_t>();
  g.gpe_undefined = j.at("gpe_undefined").get<std::size_t>();
  g.mcd = optional_from(j, "mcd");
  g.gpe = optional_from(j, "gpe");
  g.vde = optional_from(j, "vde");
  g.ffe = optional_from(j, "ffe");
  return g;
}

template <class F>
auto guarded_parse(const std::string& what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorCode::kParseError, what + ": " + e.what());
  }
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

std::string fixed2(const std::optional<double>& v, double scale) {
  if (!v) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", *v * scale);
  return buf;
}

std::string full(const std::optional<double>& v) {
  if (!v) return {};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", *v);
  return buf;
}

std::string render_markdown(const ReportTable& report) {
  std::ostringstream out;
  out << report.key_name << " | MCD↓ | GPE↓ | VDE↓ | FFE↓\n"
      << "--- | --- | --- | --- | ---\n";
  for (const auto& g : report.groups) {
    out << g.key << " | " << fixed2(g.mcd, 1.0) << " | " << fixed2(g.gpe, 100.0) << " | "
        << fixed2(g.vde, 100.0) << " | " << fixed2(g.ffe, 100.0) << '\n';
  }
  const auto& c = report.conventions;
  char threshold[32];
  std::snprintf(threshold, sizeof threshold, "%g", c.gpe_threshold);
  out << "\nGPE, VDE and FFE in percent. MFCC K = " << c.num_coeffs
      << ", natural log, MCD scaling " << scaling_name(c.mcd_scaling) << ", GPE threshold "
      << threshold << ".\n";
  for (const auto& g : report.groups) {
    if (g.gpe_undefined > 0) {
      out << "\n" << g.key << ": " << g.gpe_undefined
          << " pair(s) without frames voiced in both excluded from the GPE mean.";
    }
    if (g.errored > 0) {
      out << "\n" << g.key << ": " << g.errored << " errored pair(s) skipped.";
    }
  }
  std::string text = out.str();
  if (text.back() != '\n') text += '\n';
  return text;
}

std::string render_csv(const ReportTable& report) {
  std::ostringstream out;
  out << csv::escape(report.key_name) << ",MCD,GPE,VDE,FFE,pairs,errored,gpe_undefined\n";
  for (const auto& g : report.groups) {
    out << csv::escape(g.key) << ',' << full(g.mcd) << ',' << full(g.gpe) << ','
        << full(g.vde) << ',' << full(g.ffe) << ',' << g.pairs << ',' << g.errored << ','
        << g.gpe_undefined << '\n';
  }
  return out.str();
}

std::string render_json(const ReportTable& report) {
  json groups = json::array();
  for (const auto& g : report.groups) groups.push_back(group_json(g));
  json pairs = json::array();
  for (const auto& p : report.pairs) pairs.push_back(pair_json(p));
  json j{{"key_name", report.key_name},
         {"conventions", conventions_json(report.conventions)},
         {"groups", std::move(groups)},
         {"pairs", std::move(pairs)}};
  return j.dump(2) + "\n";
}

}  // namespace

std::string group_key(const PairResult& r) {
  if (r.group) return *r.group;
  return std::to_string(r.shots) + "-shot";
}

ReportTable build_report(std::vector<PairResult> pairs) {
  if (pairs.empty()) fail(ErrorCode::kEmptyInput, "report has no rows");
  std::sort(pairs.begin(), pairs.end(),
            [](const PairResult& a, const PairResult& b) { return a.pair_id < b.pair_id; });

  ReportTable report;
  const bool by_group = std::any_of(pairs.begin(), pairs.end(),
                                    [](const PairResult& p) { return p.group.has_value(); });
  report.key_name = by_group ? "Group" : "Shots";

  bool have_conventions = false;
  for (const auto& p : pairs) {
    if (p.status != PairStatus::kOk) continue;
    const Conventions c = conventions_of(*p.metrics);
    if (!have_conventions) {
      report.conventions = c;
      have_conventions = true;
    } else if (!(c == report.conventions)) {
      fail(ErrorCode::kInvalidArgument,
           "pair '" + p.pair_id + "' was computed under different conventions");
    }
  }

  // Ordering key: shot count when grouping by shots, label otherwise.
  using SortKey = std::pair<int, std::string>;
  struct Bucket {
    std::string key;
    std::size_t errored = 0;
    std::size_t gpe_undefined = 0;
    std::size_t ok = 0;
    std::vector<double> mcd, gpe, vde, ffe;
  };
  std::map<SortKey, Bucket> buckets;
  for (const auto& p : pairs) {
    const std::string key = by_group ? p.group.value_or("") : group_key(p);
    Bucket& b = buckets[SortKey{by_group ? 0 : p.shots, key}];
    b.key = key;
    if (p.status != PairStatus::kOk) {
      ++b.errored;
      continue;
    }
    const auto& m = *p.metrics;
    ++b.ok;
    b.mcd.push_back(m.mcd);
    b.vde.push_back(m.vde);
    b.ffe.push_back(m.ffe);
    if (m.gpe) {
      b.gpe.push_back(*m.gpe);
    } else {
      ++b.gpe_undefined;
    }
  }
  for (auto& [sort_key, b] : buckets) {
    GroupAggregate g;
    g.key = b.key;
    g.pairs = b.ok;
    g.errored = b.errored;
    g.gpe_undefined = b.gpe_undefined;
    g.mcd = mean_of(b.mcd);
    g.gpe = mean_of(b.gpe);
    g.vde = mean_of(b.vde);
    g.ffe = mean_of(b.ffe);
    report.groups.push_back(std::move(g));
  }
  report.pairs = std::move(pairs);
  return report;
}

TableFormat parse_table_format(const std::string& name) {
  if (name == "csv") return TableFormat::kCsv;
  if (name == "markdown" || name == "md") return TableFormat::kMarkdown;
  if (name == "json") return TableFormat::kJson;
  fail(ErrorCode::kInvalidArgument, "unknown table format '" + name + "'");
}

std::string render_table(const ReportTable& report, TableFormat format) {
  require(!report.groups.empty(), ErrorCode::kEmptyInput, "report has no groups");
  switch (format) {
    case TableFormat::kCsv:
      return render_csv(report);
    case TableFormat::kMarkdown:
      return render_markdown(report);
    case TableFormat::kJson:
      return render_json(report);
  }
  fail(ErrorCode::kInvalidArgument, "unknown table format");
}

ReportTable parse_report_json(const std::string& text) {
  return guarded_parse("report JSON", [&] {
    const json j = json::parse(text);
    ReportTable r;
    r.key_name = j.at("key_name").get<std::string>();
    r.conventions = conventions_from(j.at("conventions"));
    for (const auto& g : j.at("groups")) r.groups.push_back(group_from(g));
    for (const auto& p : j.at("pairs")) r.pairs.push_back(pair_from(p));
    return r;
  });
}

std::string pairs_to_json(const std::vector<PairResult>& pairs) {
  json arr = json::array();
  for (const auto& p : pairs) arr.push_back(pair_json(p));
  return arr.dump(2) + "\n";
}

std::vector<PairResult> pairs_from_json(const std::string& text) {
  return guarded_parse("per-pair JSON", [&] {
    const json j = json::parse(text);
    if (!j.is_array()) fail(ErrorCode::kParseError, "per-pair JSON must be an array");
    std::vector<PairResult> out;
    for (const auto& p : j) out.push_back(pair_from(p));
    return out;
  });
}

std::vector<PairResult> load_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return pairs_from_json(ss.str());
  } catch (const Error& e) {
    fail(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace prosody::harness
