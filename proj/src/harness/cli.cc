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

#include "prosody/harness/cli.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "prosody/adanorm/adaptive_norm.h"
#include "prosody/adanorm/kernel_check.h"
#include "prosody/adanorm/weights.h"
#include "prosody/csv.h"
#include "prosody/error.h"
#include "prosody/harness/config.h"
#include "prosody/harness/manifest.h"
#include "prosody/harness/report.h"
#include "prosody/harness/run_eval.h"
#include "prosody/pitch/yin.h"
#include "prosody/signal/audio.h"
#include "prosody/signal/features.h"
#include "prosody/speaker/gnb.h"
#include "prosody/speaker/similarity.h"

namespace prosody::harness {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kUnreadableFile, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::kUnreadableFile, "write failed for " + path.string());
}

// Writes to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    fail(ErrorCode::kUnreadableFile, "cannot create directory " + dir.string());
  }
}

EvalConfig config_or_default(const std::string& path) {
  return path.empty() ? EvalConfig{} : load_config(path);
}

signal::Waveform load_for(const std::string& path, const EvalConfig& cfg, bool config_given) {
  signal::Waveform w = signal::load_wav(path);
  if (config_given && w.sample_rate != cfg.pair.sample_rate) {
    fail(ErrorCode::kSampleRateMismatch,
         path + ": sample rate " + std::to_string(w.sample_rate) + " Hz, config expects " +
             std::to_string(cfg.pair.sample_rate) + " Hz");
  }
  return w;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
  std::string manifest;
  std::string config;
  std::string out;
  int jobs = 1;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  const EvalConfig cfg = config_or_default(a.config);
  const Manifest manifest = load_manifest(a.manifest);
  ensure_directory(a.out);
  const ReportTable report = run_eval(manifest, cfg, a.jobs);
  const fs::path dir(a.out);
  write_text(dir / "pairs.json", pairs_to_json(report.pairs));
  write_text(dir / "report.md", render_table(report, TableFormat::kMarkdown));
  write_text(dir / "report.csv", render_table(report, TableFormat::kCsv));
  write_text(dir / "report.json", render_table(report, TableFormat::kJson));
  const int code = exit_code_for(report);
  std::size_t errored = 0;
  for (const auto& p : report.pairs) errored += p.status == PairStatus::kError ? 1 : 0;
  out << "evaluated " << report.pairs.size() << " pair(s), " << errored << " errored; wrote "
      << dir.string() << "\n";
  return code;
}

// --- pitch ------------------------------------------------------------------

struct PitchArgs {
  std::string in;
  std::string out;
  std::string config;
};

int cmd_pitch(const PitchArgs& a, std::ostream& out) {
  const EvalConfig cfg = config_or_default(a.config);
  const signal::Waveform w = load_for(a.in, cfg, !a.config.empty());
  const pitch::PitchTrack track = pitch::yin_track(w, cfg.pair.yin);
  std::ostringstream csv;
  csv << "frame_index,time_sec,f0_hz,voiced,aperiodicity\n";
  for (std::size_t t = 0; t < track.size(); ++t) {
    const double time = static_cast<double>(t) * track.hop / track.sample_rate;
    csv << t << ',' << real(time) << ',' << real(track.f0[t]) << ','
        << (track.voiced[t] ? 1 : 0) << ',' << real(track.aperiodicity[t]) << '\n';
  }
  emit(a.out, csv.str(), out);
  return kExitOk;
}

// --- features ---------------------------------------------------------------

struct FeatureArgs {
  std::string in;
  std::string out;
  std::string config;
  int mfcc = 0;
  bool mel = false;
  bool energy = false;
};

std::string matrix_csv(const Matrix& m, const std::string& prefix, int first_index) {
  std::ostringstream csv;
  csv << "frame_index";
  for (std::size_t c = 0; c < m.cols(); ++c) csv << ',' << prefix << (first_index + c);
  csv << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    csv << r;
    for (std::size_t c = 0; c < m.cols(); ++c) csv << ',' << real(m(r, c));
    csv << '\n';
  }
  return csv.str();
}

int cmd_features(const FeatureArgs& a, std::ostream& out) {
  const int selected = (a.mfcc > 0 ? 1 : 0) + (a.mel ? 1 : 0) + (a.energy ? 1 : 0);
  if (selected != 1) {
    fail(ErrorCode::kInvalidArgument, "choose exactly one of --mfcc K, --mel, --energy");
  }
  const EvalConfig cfg = config_or_default(a.config);
  const signal::Waveform w = load_for(a.in, cfg, !a.config.empty());
  const auto& p = cfg.pair;
  const signal::Spectrogram spec = signal::stft_magnitude(w, p.frame_size, p.hop);
  std::string text;
  if (a.energy) {
    const std::vector<double> e = signal::frame_energy(spec);
    std::ostringstream csv;
    csv << "frame_index,energy\n";
    for (std::size_t t = 0; t < e.size(); ++t) csv << t << ',' << real(e[t]) << '\n';
    text = csv.str();
  } else {
    const signal::MelSpectrogram mel = signal::mel_log_spectrogram(spec, p.n_mels, p.log_offset);
    if (a.mel) {
      text = matrix_csv(mel.frames, "mel", 0);
    } else {
      text = matrix_csv(signal::mfcc(mel, a.mfcc).frames, "c", 1);
    }
  }
  emit(a.out, text, out);
  return kExitOk;
}

// --- simcheck ---------------------------------------------------------------

struct SimArgs {
  std::string generated;
  std::string actual;
  std::string out;
  bool gnb = false;
};

json stats_json(const speaker::DistributionStats& s) {
  return json{{"count", s.count},
              {"mean", s.mean ? json(*s.mean) : json(nullptr)},
              {"median", s.median ? json(*s.median) : json(nullptr)}};
}

int cmd_simcheck(const SimArgs& a, std::ostream& out) {
  const auto generated = speaker::load_embeddings(a.generated);
  const auto actual = speaker::load_embeddings(a.actual);
  ensure_directory(a.out);
  const fs::path dir(a.out);
  const speaker::SimilarityMatrix m = speaker::cross_similarity(generated, actual);
  write_text(dir / "matrix.csv", speaker::similarity_csv(m));
  const speaker::SimilaritySummary s = speaker::similarity_summary(m);
  json summary{{"generated", generated.size()},
               {"actual", actual.size()},
               {"same_speaker", stats_json(s.same_speaker)},
               {"different_speaker", stats_json(s.different_speaker)}};

  if (a.gnb) {
    const speaker::GnbModel model = speaker::gnb_fit(actual);
    std::ostringstream csv;
    csv << "speaker_id,utterance_id,predicted,correct";
    for (const auto& c : model.classes) csv << ",p_" << csv::escape(c);
    csv << '\n';
    std::size_t correct = 0;
    std::size_t known = 0;
    for (const auto& e : generated) {
      const std::vector<double> post = speaker::gnb_predict(model, e);
      const auto best = static_cast<std::size_t>(
          std::max_element(post.begin(), post.end()) - post.begin());
      const bool hit = model.classes[best] == e.speaker_id;
      const bool in_model =
          std::binary_search(model.classes.begin(), model.classes.end(), e.speaker_id);
      known += in_model ? 1 : 0;
      correct += hit ? 1 : 0;
      csv << csv::escape(e.speaker_id) << ',' << csv::escape(e.utterance_id) << ','
          << csv::escape(model.classes[best]) << ',' << (hit ? 1 : 0);
      for (double p : post) csv << ',' << real(p);
      csv << '\n';
    }
    write_text(dir / "gnb.csv", csv.str());
    summary["gnb"] = json{{"classes", model.classes.size()},
                          {"predictions", generated.size()},
                          {"known_speaker_predictions", known},
                          {"correct", correct},
                          {"accuracy", known > 0 ? json(static_cast<double>(correct) / known)
                                                 : json(nullptr)}};
  }
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  out << "compared " << generated.size() << " generated against " << actual.size()
      << " actual embedding(s); wrote " << dir.string() << "\n";
  return kExitOk;
}

// --- kernel-check -----------------------------------------------------------

int cmd_kernel_check(std::uint64_t seed, int trials, std::ostream& out) {
  require(trials > 0, ErrorCode::kInvalidArgument, "--trials must be positive");
  const auto results = adanorm::run_kernel_checks(adanorm::KernelCheckOptions{seed, trials});
  out << adanorm::format_check_table(results);
  const bool ok = std::all_of(results.begin(), results.end(),
                              [](const adanorm::KernelCheckResult& r) { return r.passed; });
  return ok ? kExitOk : kExitValidation;
}

// --- morph-tracks -----------------------------------------------------------

struct MorphArgs {
  std::string pitch;
  std::string energy;
  double alpha_f0 = 1.0;
  double alpha_e = 1.0;
  std::string out;
};

// Reads one numeric column. With a header, the first of `names` present is
// used; otherwise the last column of each row.
std::vector<double> read_track(const std::string& path, const std::vector<std::string>& names) {
  const auto records = csv::read_file(path);
  if (records.empty()) fail(ErrorCode::kEmptyInput, path + ": track file is empty");
  std::size_t first = 0;
  std::size_t col = records.front().size() - 1;
  double probe = 0.0;
  if (!csv::parse_double(records.front().back(), &probe)) {
    first = 1;
    const auto& header = records.front();
    bool found = false;
    for (const auto& name : names) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it != header.end()) {
        col = static_cast<std::size_t>(it - header.begin());
        found = true;
        break;
      }
    }
    if (!found && header.size() > 2) {
      fail(ErrorCode::kParseError, path + ": no column named " + names.front());
    }
  }
  std::vector<double> values;
  for (std::size_t r = first; r < records.size(); ++r) {
    double v = 0.0;
    if (col >= records[r].size() || !csv::parse_double(records[r][col], &v)) {
      fail(ErrorCode::kParseError, path + ":" + std::to_string(r + 1) + ": not a number");
    }
    values.push_back(v);
  }
  return values;
}

int cmd_morph(const MorphArgs& a, std::ostream& out) {
  const auto pitch = read_track(a.pitch, {"f0_hz", "pitch"});
  const auto energy = read_track(a.energy, {"energy"});
  const auto [p, e] = adanorm::scale_tracks(pitch, energy, a.alpha_f0, a.alpha_e);
  std::ostringstream csv;
  csv << "frame_index,pitch,energy\n";
  for (std::size_t t = 0; t < p.size(); ++t) {
    csv << t << ',' << real(p[t]) << ',' << real(e[t]) << '\n';
  }
  emit(a.out, csv.str(), out);
  return kExitOk;
}

// --- report -----------------------------------------------------------------

int cmd_report(const std::string& pairs, const std::string& format, const std::string& dest,
               std::ostream& out) {
  const TableFormat f = parse_table_format(format);
  const ReportTable report = build_report(load_pairs(pairs));
  emit(dest, render_table(report, f), out);
  return kExitOk;
}

// --- weights ----------------------------------------------------------------

int cmd_weights(const std::string& kind, std::uint64_t seed, const std::string& prefix,
                std::ostream& out) {
  adanorm::WeightBundle bundle;
  if (kind == "fft-conv" || kind == "fft-attention") {
    adanorm::FftBlockWeights w(adanorm::FftBlockConfig{}, adanorm::NormKernelConfig{},
                               kind == "fft-conv" ? adanorm::NormKind::kConv
                                                  : adanorm::NormKind::kAttention);
    adanorm::init_uniform(w, seed);
    bundle = adanorm::to_bundle(w, "fft_block");
  } else if (kind == "variance-predictor") {
    adanorm::VariancePredictorWeights w(adanorm::VariancePredictorConfig{});
    adanorm::init_uniform(w, seed);
    bundle = adanorm::to_bundle(w, "variance_predictor");
  } else {
    fail(ErrorCode::kInvalidArgument,
         "unknown --kind '" + kind + "' (fft-conv, fft-attention, variance-predictor)");
  }
  const fs::path bin = prefix + ".bin";
  const fs::path manifest = prefix + ".csv";
  adanorm::write_bundle(bin, manifest, bundle);
  std::size_t values = 0;
  for (const auto& t : bundle) values += t.data.size();
  out << "wrote " << bundle.size() << " tensor(s), " << values << " value(s) to "
      << bin.string() << "\n";
  return kExitOk;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"prosodykit: prosody metrics, pitch tracking and adaptive-norm kernels"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Batch GPE/VDE/FFE/MCD over a manifest");
  eval->add_option("--manifest", eval_args.manifest, "Manifest CSV")->required();
  eval->add_option("--config", eval_args.config, "Config file (key = value)");
  eval->add_option("--out", eval_args.out, "Output directory")->required();
  eval->add_option("--jobs", eval_args.jobs, "Worker threads")->check(CLI::PositiveNumber);

  PitchArgs pitch_args;
  auto* pitch = app.add_subcommand("pitch", "YIN pitch track as CSV");
  pitch->add_option("--in", pitch_args.in, "Input WAV")->required();
  pitch->add_option("--out", pitch_args.out, "Output CSV (default stdout)");
  pitch->add_option("--config", pitch_args.config, "Config file");

  FeatureArgs feat_args;
  auto* features = app.add_subcommand("features", "Feature dump as CSV");
  features->add_option("--in", feat_args.in, "Input WAV")->required();
  features->add_option("--out", feat_args.out, "Output CSV (default stdout)");
  features->add_option("--config", feat_args.config, "Config file");
  auto* opt_mfcc = features->add_option("--mfcc", feat_args.mfcc, "MFCC coefficients 1..K");
  auto* opt_mel = features->add_flag("--mel", feat_args.mel, "Log-mel spectrogram");
  auto* opt_energy = features->add_flag("--energy", feat_args.energy, "Frame energy");
  opt_mfcc->excludes(opt_mel)->excludes(opt_energy);
  opt_mel->excludes(opt_energy);

  SimArgs sim_args;
  auto* simcheck = app.add_subcommand("simcheck", "Speaker-embedding similarity analysis");
  simcheck->add_option("--generated", sim_args.generated, "Generated embeddings CSV")
      ->required();
  simcheck->add_option("--actual", sim_args.actual, "Actual embeddings CSV")->required();
  simcheck->add_option("--out", sim_args.out, "Output directory")->required();
  simcheck->add_flag("--gnb", sim_args.gnb, "Fit naive Bayes on actual, classify generated");

  std::uint64_t check_seed = 0;
  int check_trials = 100;
  auto* kernel = app.add_subcommand("kernel-check", "Adaptive-norm invariant and gradient suite");
  kernel->add_option("--seed", check_seed, "Random seed");
  kernel->add_option("--trials", check_trials, "Trials per randomized check");

  MorphArgs morph_args;
  auto* morph = app.add_subcommand("morph-tracks", "Scale pitch and energy tracks");
  morph->add_option("--pitch", morph_args.pitch, "Pitch track CSV")->required();
  morph->add_option("--energy", morph_args.energy, "Energy track CSV")->required();
  morph->add_option("--alpha-f0", morph_args.alpha_f0, "Pitch factor")->required();
  morph->add_option("--alpha-e", morph_args.alpha_e, "Energy factor")->required();
  morph->add_option("--out", morph_args.out, "Output CSV (default stdout)");

  std::string report_pairs;
  std::string report_format = "markdown";
  std::string report_out;
  auto* report = app.add_subcommand("report", "Render a table from per-pair JSON");
  report->add_option("--pairs", report_pairs, "Per-pair JSON")->required();
  report->add_option("--format", report_format, "markdown, csv or json");
  report->add_option("--out", report_out, "Output file (default stdout)");

  std::string weights_kind = "fft-conv";
  std::uint64_t weights_seed = 0;
  std::string weights_out;
  auto* weights = app.add_subcommand("weights", "Write a seeded weight bundle");
  weights->add_option("--kind", weights_kind, "fft-conv, fft-attention or variance-predictor");
  weights->add_option("--seed", weights_seed, "Random seed");
  weights->add_option("--out", weights_out, "Output prefix (.bin and .csv)")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "prosodykit: " << one_line(e.what()) << "\n";
    return kExitValidation;
  }

  try {
    if (*eval) return cmd_eval(eval_args, out);
    if (*pitch) return cmd_pitch(pitch_args, out);
    if (*features) return cmd_features(feat_args, out);
    if (*simcheck) return cmd_simcheck(sim_args, out);
    if (*kernel) return cmd_kernel_check(check_seed, check_trials, out);
    if (*morph) return cmd_morph(morph_args, out);
    if (*report) return cmd_report(report_pairs, report_format, report_out, out);
    if (*weights) return cmd_weights(weights_kind, weights_seed, weights_out, out);
  } catch (const Error& e) {
    err << "prosodykit: " << error_code_name(e.code()) << ": " << one_line(e.what()) << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "prosodykit: " << one_line(e.what()) << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace prosody::harness
