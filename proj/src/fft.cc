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

#include "bae/fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace bae {
namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

// The FFTW planner is not thread-safe; executing a finished plan through the
// new-array interface is. Plans are created with FFTW_UNALIGNED so they can
// run on any caller-provided buffer.
PlanPair GetPlans(int size) {
  static std::mutex mu;
  static std::map<int, PlanPair>* cache = new std::map<int, PlanPair>();
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache->find(size);
  if (it != cache->end()) return it->second;

  std::vector<double> real(size);
  std::vector<std::complex<double>> spec(size / 2 + 1);
  PlanPair plans;
  plans.forward = fftw_plan_dft_r2c_1d(
      size, real.data(), reinterpret_cast<fftw_complex*>(spec.data()),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.inverse = fftw_plan_dft_c2r_1d(
      size, reinterpret_cast<fftw_complex*>(spec.data()), real.data(),
      FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plans.forward == nullptr || plans.inverse == nullptr) {
    throw std::runtime_error("fft: planning failed for size " +
                             std::to_string(size));
  }
  (*cache)[size] = plans;
  return plans;
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size <= 0 || size % 2 != 0) {
    throw std::invalid_argument("fft: size must be positive and even");
  }
  PlanPair plans = GetPlans(size);
  forward_plan_ = plans.forward;
  inverse_plan_ = plans.inverse;
}

void RealFft::Forward(const double* in, std::complex<double>* out) const {
  // r2c preserves its input in the out-of-place form; FFTW wants a non-const
  // pointer regardless.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_),
                       const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void RealFft::Inverse(const std::complex<double>* in, double* out) const {
  // c2r destroys its input, so work on a copy.
  std::vector<std::complex<double>> scratch(in, in + num_bins());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
  const double scale = 1.0 / size_;
  for (int i = 0; i < size_; ++i) out[i] *= scale;
}

std::vector<std::complex<double>> RealFft::Forward(
    const std::vector<double>& in) const {
  if (static_cast<int>(in.size()) != size_) {
    throw std::invalid_argument("fft: input length mismatch");
  }
  std::vector<std::complex<double>> out(num_bins());
  Forward(in.data(), out.data());
  return out;
}

std::vector<double> RealFft::Inverse(
    const std::vector<std::complex<double>>& in) const {
  if (static_cast<int>(in.size()) != num_bins()) {
    throw std::invalid_argument("fft: spectrum length mismatch");
  }
  std::vector<double> out(size_);
  Inverse(in.data(), out.data());
  return out;
}

}  // namespace bae
