// Copyright 2026 The BAE Engine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BAE_WAVEFORM_H_
#define BAE_WAVEFORM_H_

#include <vector>

namespace bae {

inline constexpr int kPipelineSampleRate = 48000;

// Mono PCM audio. Samples are dimensionless amplitudes, nominally in [-1, 1];
// the processing pipeline is fixed at 48 kHz.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = kPipelineSampleRate;

  double DurationSeconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

}  // namespace bae

#endif  // BAE_WAVEFORM_H_
