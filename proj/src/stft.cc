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

#include "bae/stft.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bae {
namespace {

constexpr double kWeightFloor = 1e-12;

void CheckStftParams(int fft_size, int hop) {
  if (fft_size <= 0 || fft_size % 2 != 0) {
    throw std::invalid_argument("stft: fft_size must be positive and even");
  }
  if (hop != fft_size / 2) {
    throw std::invalid_argument("stft: hop must be fft_size / 2");
  }
}

}  // namespace

std::vector<double> HannWindowPeriodic(int length) {
  std::vector<double> w(length);
  for (int n = 0; n < length; ++n) {
    w[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * n / length);
  }
  return w;
}

ComplexSpectrogram Stft(const Waveform& wave, int fft_size, int hop) {
  CheckStftParams(fft_size, hop);
  const int len = static_cast<int>(wave.samples.size());
  if (len < fft_size) {
    throw std::invalid_argument(
        "stft: input shorter than one frame (" + std::to_string(len) + " < " +
        std::to_string(fft_size) + " samples)");
  }
  const int num_frames = (len - fft_size + hop - 1) / hop + 1;

  ComplexSpectrogram spec;
  spec.num_frames = num_frames;
  spec.num_bins = fft_size / 2 + 1;
  spec.fft_size = fft_size;
  spec.frame_hop = hop;
  spec.values.resize(static_cast<size_t>(num_frames) * spec.num_bins);

  RealFft fft(fft_size);
  const std::vector<double> window = HannWindowPeriodic(fft_size);
  std::vector<double> frame(fft_size);
  for (int t = 0; t < num_frames; ++t) {
    const int start = t * hop;
    const int avail = std::min(fft_size, len - start);
    for (int n = 0; n < avail; ++n) {
      frame[n] = wave.samples[start + n] * window[n];
    }
    std::fill(frame.begin() + avail, frame.end(), 0.0);
    fft.Forward(frame.data(), spec.Frame(t));
  }
  return spec;
}

Waveform Istft(const ComplexSpectrogram& spec) {
  CheckStftParams(spec.fft_size, spec.frame_hop);
  if (spec.num_frames <= 0 || spec.num_bins != spec.fft_size / 2 + 1 ||
      spec.values.size() !=
          static_cast<size_t>(spec.num_frames) * spec.num_bins) {
    throw std::invalid_argument("istft: inconsistent spectrogram dimensions");
  }
  const int fft_size = spec.fft_size;
  const int hop = spec.frame_hop;
  const int out_len = (spec.num_frames - 1) * hop + fft_size;

  RealFft fft(fft_size);
  const std::vector<double> window = HannWindowPeriodic(fft_size);
  std::vector<double> accum(out_len, 0.0);
  std::vector<double> weight(out_len, 0.0);
  std::vector<double> frame(fft_size);
  for (int t = 0; t < spec.num_frames; ++t) {
    fft.Inverse(spec.Frame(t), frame.data());
    const int start = t * hop;
    for (int n = 0; n < fft_size; ++n) {
      accum[start + n] += window[n] * frame[n];
      weight[start + n] += window[n] * window[n];
    }
  }

  Waveform out;
  out.sample_rate = kPipelineSampleRate;
  out.samples.resize(out_len);
  for (int n = 0; n < out_len; ++n) {
    out.samples[n] = weight[n] > kWeightFloor ? accum[n] / weight[n] : 0.0;
  }
  return out;
}

StftStream::StftStream(int fft_size, int hop)
    : fft_size_(fft_size),
      hop_(hop),
      fft_(fft_size),
      window_(HannWindowPeriodic(fft_size)),
      buffer_(fft_size, 0.0),
      windowed_(fft_size) {
  CheckStftParams(fft_size, hop);
}

void StftStream::Reset() {
  blocks_seen_ = 0;
  std::fill(buffer_.begin(), buffer_.end(), 0.0);
}

std::optional<std::vector<std::complex<double>>> StftStream::Push(
    const double* block, int block_len) {
  if (block_len != hop_) {
    throw std::invalid_argument("stft stream: block size must equal the hop");
  }
  std::copy(buffer_.begin() + hop_, buffer_.end(), buffer_.begin());
  std::copy(block, block + hop_, buffer_.end() - hop_);
  ++blocks_seen_;
  if (blocks_seen_ < fft_size_ / hop_) return std::nullopt;

  for (int n = 0; n < fft_size_; ++n) windowed_[n] = buffer_[n] * window_[n];
  std::vector<std::complex<double>> frame(fft_size_ / 2 + 1);
  fft_.Forward(windowed_.data(), frame.data());
  return frame;
}

IstftStream::IstftStream(int fft_size, int hop)
    : fft_size_(fft_size),
      hop_(hop),
      fft_(fft_size),
      window_(HannWindowPeriodic(fft_size)),
      accum_(fft_size, 0.0),
      weight_(fft_size, 0.0),
      frame_time_(fft_size) {
  CheckStftParams(fft_size, hop);
}

void IstftStream::Reset() {
  std::fill(accum_.begin(), accum_.end(), 0.0);
  std::fill(weight_.begin(), weight_.end(), 0.0);
}

std::vector<double> IstftStream::Push(const std::complex<double>* frame,
                                      int num_bins) {
  if (num_bins != fft_size_ / 2 + 1) {
    throw std::invalid_argument("istft stream: frame bin count mismatch");
  }
  fft_.Inverse(frame, frame_time_.data());
  for (int n = 0; n < fft_size_; ++n) {
    accum_[n] += window_[n] * frame_time_[n];
    weight_[n] += window_[n] * window_[n];
  }

  std::vector<double> out(hop_);
  for (int n = 0; n < hop_; ++n) {
    out[n] = weight_[n] > kWeightFloor ? accum_[n] / weight_[n] : 0.0;
  }
  std::copy(accum_.begin() + hop_, accum_.end(), accum_.begin());
  std::fill(accum_.end() - hop_, accum_.end(), 0.0);
  std::copy(weight_.begin() + hop_, weight_.end(), weight_.begin());
  std::fill(weight_.end() - hop_, weight_.end(), 0.0);
  return out;
}

}  // namespace bae
