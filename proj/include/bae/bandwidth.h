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

#ifndef BAE_BANDWIDTH_H_
#define BAE_BANDWIDTH_H_

#include <string>
#include <vector>

#include "bae/waveform.h"

namespace bae {

// Linear-phase FIR low-pass, 511-tap Kaiser-windowed sinc (beta 6.0):
// -6 dB at the cutoff, stop band below -60 dB within 10% past the cutoff.
// The integer group delay (255 samples) is compensated, so the output is
// sample-aligned with the input. cutoff_hz must be in (0, 24000].
Waveform Lowpass(const Waveform& wave, double cutoff_hz);

// Returns the filter taps (for inspection/tests).
std::vector<double> DesignLowpassFir(double cutoff_hz, int num_taps,
                                     int sample_rate);

struct BandwidthSegment {
  double start_seconds = 0.0;
  double cutoff_hz = 0.0;
};

// Piecewise low-pass with 10 ms linear crossfades at segment boundaries.
// The schedule must be non-empty, sorted by start time, begin at 0, and
// contain valid cutoffs.
Waveform Fluctuate(const Waveform& wave,
                   const std::vector<BandwidthSegment>& schedule);

// Parses a plain-text schedule: one "start_seconds cutoff_hz" pair per line;
// blank lines and lines starting with '#' are ignored.
std::vector<BandwidthSegment> ParseScheduleFile(const std::string& path);

// Effective bandwidth estimate: Welch-averaged power spectrum, smoothed over
// the third-octave band starting at each frequency, thresholded 50 dB below
// the peak band. Returns the highest frequency still above the threshold,
// or 0 for (near-)silence.
double EstimateBandwidth(const Waveform& wave);

}  // namespace bae

#endif  // BAE_BANDWIDTH_H_
