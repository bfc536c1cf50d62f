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

#ifndef BAE_ERB_H_
#define BAE_ERB_H_

#include <Eigen/Dense>

#include <iosfwd>
#include <vector>

namespace bae {

inline constexpr int kErbBands = 128;

// Glasberg-Moore ERB-rate scale.
double ErbRate(double frequency_hz);
double ErbRateInverse(double erb_rate);

// Triangular filterbank that compresses a linear magnitude spectrum into
// perceptually spaced bands. Band centers are equally spaced on the
// ERB-rate scale between 0 Hz and Nyquist, snapped to distinct FFT bins so
// that every row has support; each row sums to 1.
struct ErbFilterBank {
  Eigen::MatrixXd matrix;               // num_bands x num_bins
  std::vector<double> band_centers_hz;  // strictly increasing
  std::vector<int> band_centers_bin;

  int num_bands() const { return static_cast<int>(matrix.rows()); }
  int num_bins() const { return static_cast<int>(matrix.cols()); }
};

ErbFilterBank BuildErbBank(int num_bands, int num_bins, int sample_rate);

// Per-frame band analysis: bands = matrix * magnitudes.
Eigen::VectorXd ErbAnalyzeFrame(const ErbFilterBank& bank,
                                const Eigen::VectorXd& magnitudes);

// T x num_bands analysis of a T x num_bins magnitude spectrogram
// (row-major flat storage).
std::vector<double> ErbAnalyze(const ErbFilterBank& bank,
                               const std::vector<double>& magnitudes,
                               int num_frames, int num_bins);

// Plain-text dump of the filter matrix, one row per band.
void WriteErbBankText(const ErbFilterBank& bank, std::ostream& os);

}  // namespace bae

#endif  // BAE_ERB_H_
