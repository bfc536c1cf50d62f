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

#ifndef BAE_PHASE_H_
#define BAE_PHASE_H_

#include <vector>

namespace bae {

// Number of trusted low-band bins for phase extension: bin 128 is 4 kHz at
// the 1536-point / 48 kHz analysis grid (31.25 Hz per bin).
inline constexpr int kPhaseBaseBins = 128;

// Extends a low-band phase frame to the full band by recursive
// mirror-and-negate: bins 0..base_bins are copied unchanged; for each
// segment m = 1..(num_bins-1)/base_bins and each k in (m*B, (m+1)*B],
// out[k] = -out[2*m*B - k], reading already-extended values. This is the
// image spectrum a zero-insertion upsampler would produce, applied
// repeatedly until the full range is covered. Results stay in (-pi, pi].
//
// base_bins must divide phase.size() - 1.
std::vector<double> FlipPhase(const std::vector<double>& phase,
                              int base_bins = kPhaseBaseBins);

}  // namespace bae

#endif  // BAE_PHASE_H_
