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

#include "bae/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bae/fft.h"
#include "bae/stft.h"

namespace bae {
namespace {

constexpr double kLsdEps = 1e-10;
constexpr double kMrStftEps = 1e-7;
constexpr int kLsdFft = 2048;
constexpr int kLsdHop = 512;
constexpr double kSegSnrFloorDb = -10.0;
constexpr double kSegSnrCeilDb = 35.0;
constexpr double kSegSnrSilence = 1e-8;

void CheckPair(const Waveform& a, const Waveform& b) {
  if (a.samples.size() != b.samples.size()) {
    throw std::invalid_argument("metrics: signal length mismatch");
  }
  if (a.sample_rate != b.sample_rate) {
    throw std::invalid_argument("metrics: sample rate mismatch");
  }
}

// Magnitude frames with a Hann window of win_length zero-padded to
// fft_size. The tail frame is zero-padded; signals shorter than one window
// produce a single padded frame.
std::vector<std::vector<double>> MagnitudeFrames(const Waveform& wave,
                                                 int fft_size, int hop,
                                                 int win_length) {
  const int len = static_cast<int>(wave.samples.size());
  const int num_frames =
      len <= win_length ? 1 : (len - win_length + hop - 1) / hop + 1;
  RealFft fft(fft_size);
  const std::vector<double> window = HannWindowPeriodic(win_length);
  std::vector<double> frame(fft_size);
  std::vector<std::complex<double>> spec(fft.num_bins());
  std::vector<std::vector<double>> mags(num_frames);
  for (int t = 0; t < num_frames; ++t) {
    std::fill(frame.begin(), frame.end(), 0.0);
    const int start = t * hop;
    const int avail = std::min(win_length, len - start);
    for (int i = 0; i < avail; ++i) {
      frame[i] = wave.samples[start + i] * window[i];
    }
    fft.Forward(frame.data(), spec.data());
    mags[t].resize(spec.size());
    for (size_t k = 0; k < spec.size(); ++k) mags[t][k] = std::abs(spec[k]);
  }
  return mags;
}

}  // namespace

double Lsd(const Waveform& reference, const Waveform& degraded) {
  CheckPair(reference, degraded);
  const auto ref = MagnitudeFrames(reference, kLsdFft, kLsdHop, kLsdFft);
  const auto deg = MagnitudeFrames(degraded, kLsdFft, kLsdHop, kLsdFft);
  double total = 0.0;
  for (size_t t = 0; t < ref.size(); ++t) {
    double acc = 0.0;
    for (size_t k = 0; k < ref[t].size(); ++k) {
      const double d = std::log10(ref[t][k] * ref[t][k] + kLsdEps) -
                       std::log10(deg[t][k] * deg[t][k] + kLsdEps);
      acc += d * d;
    }
    total += std::sqrt(acc / ref[t].size());
  }
  return total / ref.size();
}

double SegSnr(const Waveform& reference, const Waveform& degraded) {
  CheckPair(reference, degraded);
  const int seg_len = reference.sample_rate * 32 / 1000;  // 32 ms
  const int num_segments =
      static_cast<int>(reference.samples.size()) / seg_len;
  double total = 0.0;
  int used = 0;
  for (int s = 0; s < num_segments; ++s) {
    double signal = 0.0;
    double error = 0.0;
    for (int i = s * seg_len; i < (s + 1) * seg_len; ++i) {
      signal += reference.samples[i] * reference.samples[i];
      const double e = reference.samples[i] - degraded.samples[i];
      error += e * e;
    }
    if (signal < kSegSnrSilence) continue;
    double db;
    if (error <= 0.0) {
      db = kSegSnrCeilDb;
    } else {
      db = 10.0 * std::log10(signal / error);
      db = std::clamp(db, kSegSnrFloorDb, kSegSnrCeilDb);
    }
    total += db;
    ++used;
  }
  return used > 0 ? total / used : 0.0;
}

double WavLoss(const Waveform& reference, const Waveform& degraded) {
  CheckPair(reference, degraded);
  if (reference.samples.empty()) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < reference.samples.size(); ++i) {
    total += std::abs(reference.samples[i] - degraded.samples[i]);
  }
  return total / reference.samples.size();
}

MrStftBreakdown MrStftLossBreakdown(const Waveform& reference,
                                    const Waveform& degraded,
                                    const MultiResConfig& config) {
  CheckPair(reference, degraded);
  if (config.fft_sizes.size() != config.hops.size() ||
      config.fft_sizes.size() != config.win_lengths.size()) {
    throw std::invalid_argument("mrstft: config list length mismatch");
  }
  MrStftBreakdown out;
  for (size_t r = 0; r < config.fft_sizes.size(); ++r) {
    if (config.win_lengths[r] > config.fft_sizes[r]) {
      throw std::invalid_argument("mrstft: window longer than FFT");
    }
    const auto ref = MagnitudeFrames(reference, config.fft_sizes[r],
                                     config.hops[r], config.win_lengths[r]);
    const auto deg = MagnitudeFrames(degraded, config.fft_sizes[r],
                                     config.hops[r], config.win_lengths[r]);
    double diff_sq = 0.0;
    double ref_sq = 0.0;
    double log_l1 = 0.0;
    size_t count = 0;
    for (size_t t = 0; t < ref.size(); ++t) {
      for (size_t k = 0; k < ref[t].size(); ++k) {
        const double d = ref[t][k] - deg[t][k];
        diff_sq += d * d;
        ref_sq += ref[t][k] * ref[t][k];
        log_l1 += std::abs(std::log(ref[t][k] + kMrStftEps) -
                           std::log(deg[t][k] + kMrStftEps));
        ++count;
      }
    }
    const double sc =
        ref_sq > 0.0 ? std::sqrt(diff_sq) / std::sqrt(ref_sq) : 0.0;
    const double lm = count > 0 ? log_l1 / count : 0.0;
    out.spectral_convergence.push_back(sc);
    out.log_magnitude.push_back(lm);
    out.total += sc + lm;
  }
  return out;
}

double MrStftLoss(const Waveform& reference, const Waveform& degraded,
                  const MultiResConfig& config) {
  return MrStftLossBreakdown(reference, degraded, config).total;
}

double AdvLossD(const std::vector<double>& scores_real,
                const std::vector<double>& scores_fake) {
  if (scores_real.empty() || scores_fake.empty()) {
    throw std::invalid_argument("adv loss: empty score list");
  }
  double real_term = 0.0;
  for (double s : scores_real) real_term += (s - 1.0) * (s - 1.0);
  double fake_term = 0.0;
  for (double s : scores_fake) fake_term += (s + 1.0) * (s + 1.0);
  return real_term / scores_real.size() + fake_term / scores_fake.size();
}

double AdvLossG(const std::vector<double>& scores_fake,
                const std::vector<double>& scores_real) {
  if (scores_real.empty() || scores_fake.empty()) {
    throw std::invalid_argument("adv loss: empty score list");
  }
  double fake_term = 0.0;
  for (double s : scores_fake) fake_term += (s - 1.0) * (s - 1.0);
  double real_term = 0.0;
  for (double s : scores_real) real_term += (s + 1.0) * (s + 1.0);
  return fake_term / scores_fake.size() + real_term / scores_real.size();
}

double FeatMatchLoss(const std::vector<std::vector<double>>& features_real,
                     const std::vector<std::vector<double>>& features_fake) {
  if (features_real.size() != features_fake.size() || features_real.empty()) {
    throw std::invalid_argument("feat match: layer count mismatch or empty");
  }
  double total = 0.0;
  for (size_t l = 0; l < features_real.size(); ++l) {
    if (features_real[l].size() != features_fake[l].size() ||
        features_real[l].empty()) {
      throw std::invalid_argument("feat match: feature map size mismatch");
    }
    double acc = 0.0;
    for (size_t i = 0; i < features_real[l].size(); ++i) {
      acc += std::abs(features_real[l][i] - features_fake[l][i]);
    }
    total += acc / features_real[l].size();
  }
  return total / features_real.size();
}

double TotalGeneratorLoss(double wav, double mrstft, double adv_g,
                          double feat, const LossWeights& weights) {
  return weights.lambda_wav * wav + weights.lambda_stft * mrstft + adv_g +
         weights.lambda_feat * feat;
}

}  // namespace bae
