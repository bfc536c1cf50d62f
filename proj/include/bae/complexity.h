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

#ifndef BAE_COMPLEXITY_H_
#define BAE_COMPLEXITY_H_

#include <cstdint>

#include "bae/model.h"

namespace bae {

// Analytical cost of one configuration: parameter count as the sum of all
// weight-tensor element counts, and multiply-accumulates per frame summed
// over layers (conv: out * in/groups * taps; GRU: 3 * (in*h + h^2) / groups;
// FC: in * out; per-bin gates: one multiply per bin). The frame rate is
// sample_rate / hop = 62.5 frames/s.
struct ComplexityReport {
  uint64_t params = 0;
  uint64_t macs_per_frame = 0;
  double frames_per_second = 62.5;

  double macs_per_second() const { return macs_per_frame * frames_per_second; }
  double params_millions() const { return params / 1e6; }
  double gmacs_per_second() const { return macs_per_second() / 1e9; }
};

ComplexityReport CountComplexity(const ModelConfig& config);

}  // namespace bae

#endif  // BAE_COMPLEXITY_H_
