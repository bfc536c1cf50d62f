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

#ifndef BAE_WAV_IO_H_
#define BAE_WAV_IO_H_

#include <stdexcept>
#include <string>

#include "bae/waveform.h"

namespace bae {

enum class WavSampleFormat {
  kPcm16,    // 16-bit signed integer PCM
  kFloat32,  // 32-bit IEEE float
};

struct WavReadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WavWriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads a mono little-endian WAV file (16-bit PCM or 32-bit float).
// Rejects multichannel files, other sample formats, and non-finite float
// samples. If `format_out` is non-null it receives the on-disk format.
Waveform ReadWav(const std::string& path,
                 WavSampleFormat* format_out = nullptr);

// Writes mono little-endian WAV. PCM16 clamps to [-1, 1] and rounds.
void WriteWav(const std::string& path, const Waveform& wave,
              WavSampleFormat format);

}  // namespace bae

#endif  // BAE_WAV_IO_H_
