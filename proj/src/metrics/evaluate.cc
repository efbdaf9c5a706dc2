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

#include "prosody/metrics/evaluate.h"

#include <string>

#include "prosody/error.h"
#include "prosody/signal/padding.h"

namespace prosody::metrics {
namespace {

signal::MelSpectrogram log_mel_of(const signal::Waveform& w, const PairConfig& cfg) {
  const signal::Spectrogram spec = signal::stft_magnitude(w, cfg.frame_size, cfg.hop);
  return signal::mel_log_spectrogram(spec, cfg.n_mels, cfg.log_offset);
}

}  // namespace

PairAnalysis analyze_pair(const signal::Waveform& ref, const signal::Waveform& pred,
                          const PairConfig& cfg) {
  for (const signal::Waveform* w : {&ref, &pred}) {
    if (w->sample_rate != cfg.sample_rate) {
      fail(ErrorCode::kSampleRateMismatch,
           "audio sample rate " + std::to_string(w->sample_rate) + " Hz differs from configured " +
               std::to_string(cfg.sample_rate) + " Hz");
    }
  }

  signal::Waveform a = ref;
  signal::Waveform b = pred;
  signal::pad_to_match(a.samples, b.samples);

  PairAnalysis out;
  out.ref_pitch = pitch::yin_track(a, cfg.yin);
  out.pred_pitch = pitch::yin_track(b, cfg.yin);

  signal::MelSpectrogram mel_a = log_mel_of(a, cfg);
  signal::MelSpectrogram mel_b = log_mel_of(b, cfg);
  // Equal sample counts already give equal frame counts; this is a no-op
  // unless the two paths ever diverge.
  signal::pad_to_match(mel_a.frames, mel_b.frames, signal::PadDomain::kLogSpectrogram,
                       cfg.log_offset);
  out.ref_cepstra = signal::mfcc(mel_a, cfg.num_coeffs);
  out.pred_cepstra = signal::mfcc(mel_b, cfg.num_coeffs);

  const TrackPair pair{out.ref_pitch, out.pred_pitch};
  const FrameErrorCounts counts = count_frame_errors(pair, cfg.gpe_threshold);

  MetricsReport& r = out.report;
  r.gpe = gpe(pair, cfg.gpe_threshold);
  r.vde = vde(pair);
  r.ffe = ffe(pair, cfg.gpe_threshold);
  r.mcd = mcd(out.ref_cepstra, out.pred_cepstra, cfg.num_coeffs, cfg.mcd_scaling);
  r.frames_total = counts.total;
  r.frames_both_voiced = counts.both_voiced;
  r.gross_pitch_frames = counts.gross_pitch;
  r.voicing_error_frames = counts.voicing;
  r.gpe_threshold = cfg.gpe_threshold;
  r.num_coeffs = cfg.num_coeffs;
  r.mcd_scaling = cfg.mcd_scaling;
  return out;
}

}  // namespace prosody::metrics
