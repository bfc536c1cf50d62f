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

#include "bae/phase.h"

#include <cmath>
#include <stdexcept>

namespace bae {

std::vector<double> FlipPhase(const std::vector<double>& phase,
                              int base_bins) {
  const int num_bins = static_cast<int>(phase.size());
  if (base_bins <= 0 || num_bins <= base_bins ||
      (num_bins - 1) % base_bins != 0) {
    throw std::invalid_argument(
        "flip_phase: base_bins must divide num_bins - 1");
  }
  std::vector<double> out = phase;
  const int segments = (num_bins - 1) / base_bins;
  for (int m = 1; m < segments; ++m) {
    for (int k = m * base_bins + 1; k <= (m + 1) * base_bins; ++k) {
      double v = -out[2 * m * base_bins - k];
      // Inputs are in (-pi, pi], so negation can only land on -pi itself.
      if (v == -M_PI) v = M_PI;
      out[k] = v;
    }
  }
  return out;
}

}  // namespace bae
