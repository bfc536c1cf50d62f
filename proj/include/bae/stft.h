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

#ifndef BAE_STFT_H_
#define BAE_STFT_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "bae/fft.h"
#include "bae/waveform.h"

namespace bae {

inline constexpr int kFftSize = 1536;
inline constexpr int kHopSize = 768;
inline constexpr int kNumBins = kFftSize / 2 + 1;  // 769

// Periodic (DFT-even) Hann window; sums to exactly 1 at 50% overlap, which
// makes windowed overlap-add reconstruction exact on the interior.
std::vector<double> HannWindowPeriodic(int length);

// T x F complex short-time spectrum. Frame t covers samples
// [t*hop, t*hop + fft_size); the final frame is zero-padded.
struct ComplexSpectrogram {
  std::vector<std::complex<double>> values;  // row-major [frame][bin]
  int num_frames = 0;
  int num_bins = 0;
  int fft_size = 0;
  int frame_hop = 0;

  std::complex<double>* Frame(int t) {
    return values.data() + static_cast<size_t>(t) * num_bins;
  }
  const std::complex<double>* Frame(int t) const {
    return values.data() + static_cast<size_t>(t) * num_bins;
  }
};

// Hann-windowed analysis. Requires even fft_size, hop == fft_size / 2, and
// wave.samples.size() >= fft_size (shorter input is an error, not a
// single padded frame). Frame count is ceil((len - fft_size) / hop) + 1.
ComplexSpectrogram Stft(const Waveform& wave, int fft_size = kFftSize,
                        int hop = kHopSize);

// Windowed overlap-add synthesis with per-sample window-energy
// normalization. Output has (T - 1) * hop + fft_size samples; reconstruction
// matches the input on the fully overlapped interior.
Waveform Istft(const ComplexSpectrogram& spec);

// Streaming analysis: push hop-sized blocks, get one spectral frame per push
// once the window is full (after 2 pushes). Algorithmic latency is
// fft_size - hop samples.
class StftStream {
 public:
  explicit StftStream(int fft_size = kFftSize, int hop = kHopSize);

  // `block` must hold exactly hop samples.
  std::optional<std::vector<std::complex<double>>> Push(const double* block,
                                                        int block_len);

  int fft_size() const { return fft_size_; }
  int hop() const { return hop_; }
  void Reset();

 private:
  int fft_size_;
  int hop_;
  int blocks_seen_ = 0;
  RealFft fft_;
  std::vector<double> window_;
  std::vector<double> buffer_;     // last fft_size input samples
  std::vector<double> windowed_;   // scratch
};

// Streaming synthesis counterpart: push one frame, receive hop output
// samples. Sample-for-sample identical to offline Istft.
class IstftStream {
 public:
  explicit IstftStream(int fft_size = kFftSize, int hop = kHopSize);

  // `frame` must hold fft_size/2 + 1 bins; returns hop samples.
  std::vector<double> Push(const std::complex<double>* frame, int num_bins);

  void Reset();

 private:
  int fft_size_;
  int hop_;
  RealFft fft_;
  std::vector<double> window_;
  std::vector<double> accum_;   // overlap-add numerator, fft_size long
  std::vector<double> weight_;  // accumulated squared window
  std::vector<double> frame_time_;
};

}  // namespace bae

#endif  // BAE_STFT_H_
