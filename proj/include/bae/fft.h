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

#ifndef BAE_FFT_H_
#define BAE_FFT_H_

#include <complex>
#include <cstddef>
#include <vector>

namespace bae {

// Real-input FFT of a fixed size, double precision. Plans are cached per
// size behind a mutex; Forward/Inverse on a given size are safe to call
// concurrently from multiple threads.
//
// Forward: n real samples -> n/2 + 1 complex bins (unnormalized).
// Inverse: n/2 + 1 complex bins -> n real samples, scaled by 1/n so that
// Inverse(Forward(x)) == x up to rounding.
class RealFft {
 public:
  explicit RealFft(int size);

  int size() const { return size_; }
  int num_bins() const { return size_ / 2 + 1; }

  void Forward(const double* in, std::complex<double>* out) const;
  void Inverse(const std::complex<double>* in, double* out) const;

  std::vector<std::complex<double>> Forward(
      const std::vector<double>& in) const;
  std::vector<double> Inverse(
      const std::vector<std::complex<double>>& in) const;

 private:
  int size_;
  void* forward_plan_;  // fftw_plan
  void* inverse_plan_;  // fftw_plan
};

}  // namespace bae

#endif  // BAE_FFT_H_
