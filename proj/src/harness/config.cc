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

#include "prosody/harness/config.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "prosody/error.h"

namespace prosody::harness {
namespace {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& v, const std::string& where) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    fail(ErrorCode::kParseError, where + ": expected an integer, got '" + v + "'");
  }
  return out;
}

double parse_real(const std::string& v, const std::string& where) {
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size()) {
    fail(ErrorCode::kParseError, where + ": expected a number, got '" + v + "'");
  }
  return out;
}

using Setter = std::function<void(EvalConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"sample_rate", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.sample_rate = parse_int(v, w);
       }},
      {"frame_size", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.frame_size = parse_int(v, w);
       }},
      {"hop", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.hop = parse_int(v, w);
       }},
      {"n_mels", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.n_mels = parse_int(v, w);
       }},
      {"mfcc_k", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.num_coeffs = parse_int(v, w);
       }},
      {"log_offset", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.log_offset = parse_real(v, w);
       }},
      {"gpe_threshold", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.gpe_threshold = parse_real(v, w);
       }},
      {"mcd_scaling", [](EvalConfig& c, const std::string& v, const std::string& w) {
         if (v == "none") {
           c.pair.mcd_scaling = metrics::McdScaling::kNone;
         } else if (v == "db") {
           c.pair.mcd_scaling = metrics::McdScaling::kDb;
         } else {
           fail(ErrorCode::kParseError, w + ": mcd_scaling must be none or db");
         }
       }},
      {"attention_divisor", [](EvalConfig& c, const std::string& v, const std::string& w) {
         if (v == "sqrt_dk") {
           c.attention_divisor = adanorm::AttentionDivisor::kSqrtDk;
         } else if (v == "dk") {
           c.attention_divisor = adanorm::AttentionDivisor::kDk;
         } else {
           fail(ErrorCode::kParseError, w + ": attention_divisor must be sqrt_dk or dk");
         }
       }},
      {"yin.frame_size", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.yin.frame_size = parse_int(v, w);
       }},
      {"yin.hop", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.yin.hop = parse_int(v, w);
       }},
      {"yin.f_min", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.yin.f_min = parse_real(v, w);
       }},
      {"yin.f_max", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.yin.f_max = parse_real(v, w);
       }},
      {"yin.threshold", [](EvalConfig& c, const std::string& v, const std::string& w) {
         c.pair.yin.threshold = parse_real(v, w);
       }},
  };
  return table;
}

}  // namespace

bool EvalConfig::operator==(const EvalConfig& o) const {
  const auto& a = pair;
  const auto& b = o.pair;
  return a.sample_rate == b.sample_rate && a.frame_size == b.frame_size && a.hop == b.hop &&
         a.n_mels == b.n_mels && a.num_coeffs == b.num_coeffs && a.log_offset == b.log_offset &&
         a.gpe_threshold == b.gpe_threshold && a.mcd_scaling == b.mcd_scaling &&
         a.yin.frame_size == b.yin.frame_size && a.yin.hop == b.yin.hop &&
         a.yin.f_min == b.yin.f_min && a.yin.f_max == b.yin.f_max &&
         a.yin.threshold == b.yin.threshold && attention_divisor == o.attention_divisor;
}

const char* mcd_scaling_name(metrics::McdScaling s) {
  return s == metrics::McdScaling::kDb ? "db" : "none";
}

const char* attention_divisor_name(adanorm::AttentionDivisor d) {
  return d == adanorm::AttentionDivisor::kDk ? "dk" : "sqrt_dk";
}

void validate(const EvalConfig& cfg) {
  const auto& p = cfg.pair;
  require(p.sample_rate > 0, ErrorCode::kInvalidArgument, "sample_rate must be positive");
  require(p.frame_size >= 2 && p.hop >= 1, ErrorCode::kInvalidArgument,
          "frame_size must be >= 2 and hop >= 1");
  require(p.n_mels >= 1, ErrorCode::kInvalidArgument, "n_mels must be >= 1");
  require(p.num_coeffs >= 1 && p.num_coeffs <= p.n_mels, ErrorCode::kInvalidArgument,
          "mfcc_k must lie in [1, n_mels]");
  require(p.log_offset > 0.0, ErrorCode::kInvalidArgument, "log_offset must be positive");
  require(p.gpe_threshold > 0.0, ErrorCode::kInvalidArgument, "gpe_threshold must be positive");
  pitch::validate(p.yin, p.sample_rate);
  pitch::lag_range(p.yin, p.sample_rate);
}

std::string serialize_config(const EvalConfig& cfg) {
  const auto& p = cfg.pair;
  std::ostringstream out;
  out << "# prosodykit evaluation config\n"
      << "sample_rate = " << p.sample_rate << '\n'
      << "frame_size = " << p.frame_size << '\n'
      << "hop = " << p.hop << '\n'
      << "n_mels = " << p.n_mels << '\n'
      << "mfcc_k = " << p.num_coeffs << '\n'
      << "log_offset = " << format_real(p.log_offset) << '\n'
      << "gpe_threshold = " << format_real(p.gpe_threshold) << '\n'
      << "mcd_scaling = " << mcd_scaling_name(p.mcd_scaling) << '\n'
      << "attention_divisor = " << attention_divisor_name(cfg.attention_divisor) << '\n'
      << "yin.frame_size = " << p.yin.frame_size << '\n'
      << "yin.hop = " << p.yin.hop << '\n'
      << "yin.f_min = " << format_real(p.yin.f_min) << '\n'
      << "yin.f_max = " << format_real(p.yin.f_max) << '\n'
      << "yin.threshold = " << format_real(p.yin.threshold) << '\n';
  return out.str();
}

EvalConfig parse_config(const std::string& text) {
  EvalConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorCode::kParseError, where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) fail(ErrorCode::kParseError, where + ": unknown key '" + key + "'");
    it->second(cfg, value, where);
  }
  validate(cfg);
  return cfg;
}

EvalConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kUnreadableFile, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace prosody::harness
