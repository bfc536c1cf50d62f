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

#include "bae/erb.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace bae {

double ErbRate(double frequency_hz) {
  return 21.4 * std::log10(1.0 + 0.00437 * frequency_hz);
}

double ErbRateInverse(double erb_rate) {
  return (std::pow(10.0, erb_rate / 21.4) - 1.0) / 0.00437;
}

ErbFilterBank BuildErbBank(int num_bands, int num_bins, int sample_rate) {
  if (num_bands < 2 || num_bins <= num_bands) {
    throw std::invalid_argument("erb: need 2 <= num_bands < num_bins");
  }
  const double nyquist = sample_rate / 2.0;
  const double bin_hz = nyquist / (num_bins - 1);
  const double max_rate = ErbRate(nyquist);

  // Ideal centers are equally spaced on the ERB-rate scale; below ~600 Hz
  // the spacing drops under one FFT bin, so centers are snapped to distinct
  // bins (keeps every triangular row non-empty).
  std::vector<int> center_bin(num_bands);
  for (int i = 0; i < num_bands; ++i) {
    const double hz = ErbRateInverse(max_rate * i / (num_bands - 1));
    int bin = static_cast<int>(std::lround(hz / bin_hz));
    if (i > 0) bin = std::max(bin, center_bin[i - 1] + 1);
    center_bin[i] = std::min(bin, num_bins - 1 - (num_bands - 1 - i));
  }

  ErbFilterBank bank;
  bank.matrix = Eigen::MatrixXd::Zero(num_bands, num_bins);
  bank.band_centers_bin = center_bin;
  bank.band_centers_hz.resize(num_bands);
  for (int i = 0; i < num_bands; ++i) {
    bank.band_centers_hz[i] = center_bin[i] * bin_hz;
    const int left = i > 0 ? center_bin[i - 1] : center_bin[i];
    const int peak = center_bin[i];
    const int right = i + 1 < num_bands ? center_bin[i + 1] : center_bin[i];
    for (int k = left; k <= right; ++k) {
      double w;
      if (k == peak) {
        w = 1.0;
      } else if (k < peak) {
        w = static_cast<double>(k - left) / (peak - left);
      } else {
        w = static_cast<double>(right - k) / (right - peak);
      }
      if (w > 0.0) bank.matrix(i, k) = w;
    }
    bank.matrix.row(i) /= bank.matrix.row(i).sum();
  }
  return bank;
}

Eigen::VectorXd ErbAnalyzeFrame(const ErbFilterBank& bank,
                                const Eigen::VectorXd& magnitudes) {
  if (magnitudes.size() != bank.matrix.cols()) {
    throw std::invalid_argument("erb: magnitude frame size mismatch");
  }
  return bank.matrix * magnitudes;
}

std::vector<double> ErbAnalyze(const ErbFilterBank& bank,
                               const std::vector<double>& magnitudes,
                               int num_frames, int num_bins) {
  if (num_bins != bank.num_bins() ||
      magnitudes.size() != static_cast<size_t>(num_frames) * num_bins) {
    throw std::invalid_argument("erb: spectrogram dimension mismatch");
  }
  std::vector<double> bands(static_cast<size_t>(num_frames) *
                            bank.num_bands());
  Eigen::VectorXd frame(num_bins);
  for (int t = 0; t < num_frames; ++t) {
    for (int k = 0; k < num_bins; ++k) {
      frame[k] = magnitudes[static_cast<size_t>(t) * num_bins + k];
    }
    Eigen::VectorXd b = bank.matrix * frame;
    for (int i = 0; i < bank.num_bands(); ++i) {
      bands[static_cast<size_t>(t) * bank.num_bands() + i] = b[i];
    }
  }
  return bands;
}

void WriteErbBankText(const ErbFilterBank& bank, std::ostream& os) {
  for (int i = 0; i < bank.num_bands(); ++i) {
    for (int k = 0; k < bank.num_bins(); ++k) {
      if (k > 0) os << ' ';
      os << bank.matrix(i, k);
    }
    os << '\n';
  }
}

}  // namespace bae
