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

#ifndef PROSODY_SIGNAL_PADDING_H_
#define PROSODY_SIGNAL_PADDING_H_

#include <cmath>
#include <vector>

#include "prosody/matrix.h"
#include "prosody/signal/features.h"

namespace prosody::signal {

enum class PadDomain { kTime, kLogSpectrogram };

// Value used to extend a sequence in the given domain: 0 for waveforms,
// ln(offset) for log-magnitude frames (the log of silence).
inline double pad_value(PadDomain domain, double offset = kLogOffset) {
  return domain == PadDomain::kTime ? 0.0 : std::log(offset);
}

// Extends the shorter waveform at the end with zeros.
void pad_to_match(std::vector<double>& a, std::vector<double>& b);

// Extends the shorter frame matrix with rows filled by pad_value(domain).
// Throws kShapeMismatch when column counts differ.
void pad_to_match(Matrix& a, Matrix& b, PadDomain domain = PadDomain::kLogSpectrogram,
                  double offset = kLogOffset);

}  // namespace prosody::signal

#endif  // PROSODY_SIGNAL_PADDING_H_
