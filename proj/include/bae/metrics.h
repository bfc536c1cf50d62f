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

#ifndef BAE_METRICS_H_
#define BAE_METRICS_H_

#include <array>
#include <vector>

#include "bae/waveform.h"

namespace bae {

// Analysis parameters of the multi-resolution spectral loss.
struct MultiResConfig {
  std::vector<int> fft_sizes{512, 1024, 2048};
  std::vector<int> hops{50, 120, 240};
  std::vector<int> win_lengths{240, 600, 1200};
};

// Weights of the combined generator objective.
struct LossWeights {
  double lambda_wav = 100.0;
  double lambda_stft = 0.5;
  double lambda_feat = 10.0;
};

// Log-spectral distance: 2048-point analysis, hop 512, Hann window;
// per frame sqrt(mean_bins((log10(|S|^2+eps) - log10(|S'|^2+eps))^2)),
// averaged over frames; eps = 1e-10. Requires equal lengths and rates.
double Lsd(const Waveform& reference, const Waveform& degraded);

// Segmental SNR over 32 ms non-overlapping segments, each clipped to
// [-10, 35] dB; segments with reference energy below 1e-8 are skipped.
// Returns 0 if no segment qualifies.
double SegSnr(const Waveform& reference, const Waveform& degraded);

// Mean absolute sample difference.
double WavLoss(const Waveform& reference, const Waveform& degraded);

struct MrStftBreakdown {
  std::vector<double> spectral_convergence;  // per resolution
  std::vector<double> log_magnitude;         // per resolution
  double total = 0.0;
};

// Sum over resolutions of spectral convergence (||S|-|S'||_F / ||S||_F)
// plus L1 log-magnitude distance (natural log, eps = 1e-7). Windows are
// Hann of win_length, zero-padded to the FFT size.
double MrStftLoss(const Waveform& reference, const Waveform& degraded,
                  const MultiResConfig& config = MultiResConfig());
MrStftBreakdown MrStftLossBreakdown(
    const Waveform& reference, const Waveform& degraded,
    const MultiResConfig& config = MultiResConfig());

// Least-squares adversarial objectives over pooled discriminator scores,
// expectations taken as arithmetic means:
//   discriminator: mean((D(s)-1)^2) + mean((D(s~)+1)^2)
//   generator:     mean((D(s~)-1)^2) + mean((D(s)+1)^2)
double AdvLossD(const std::vector<double>& scores_real,
                const std::vector<double>& scores_fake);
double AdvLossG(const std::vector<double>& scores_fake,
                const std::vector<double>& scores_real);

// Mean over layers of the mean absolute feature difference.
double FeatMatchLoss(const std::vector<std::vector<double>>& features_real,
                     const std::vector<std::vector<double>>& features_fake);

// lambda_wav * wav + lambda_stft * mrstft + adv_g + lambda_feat * feat.
double TotalGeneratorLoss(double wav, double mrstft, double adv_g,
                          double feat, const LossWeights& weights);

}  // namespace bae

#endif  // BAE_METRICS_H_
