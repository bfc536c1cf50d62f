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

#ifndef BAE_STREAM_H_
#define BAE_STREAM_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "bae/engine.h"
#include "bae/stft.h"

namespace bae {

// Block-synchronous processing chain: analysis window -> per-frame engine ->
// overlap-add synthesis. One hop-sized block in, at most one hop-sized block
// of reconstruction out. The first fft_size - hop input samples produce no
// output, so a pipeline built on top of this has a fixed content latency of
// 2 * (fft_size - hop) samples (analysis + synthesis).
class StreamSession {
 public:
  explicit StreamSession(const Engine& engine);

  int hop() const { return stft_.hop(); }
  int LatencySamples() const {
    return 2 * (engine_.config().fft_size - hop());
  }

  // `block` must hold exactly hop() samples.
  std::optional<std::vector<double>> PushBlock(const double* block,
                                               int block_len);

  void Reset();

  // Bytes of temporal state held by this session; constant over the life of
  // a stream (memory use does not grow with input length).
  size_t StateBytes() const;

 private:
  const Engine& engine_;
  StftStream stft_;
  IstftStream istft_;
  StreamState state_;
  std::vector<std::complex<double>> frame_out_;
};

}  // namespace bae

#endif  // BAE_STREAM_H_
