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

#include "bae/bandwidth.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bae/fft.h"
#include "bae/stft.h"

namespace bae {
namespace {

constexpr int kFirTaps = 511;       // even order -> integer group delay
constexpr double kKaiserBeta = 6.0;
constexpr int kCrossfadeSamples = 480;  // 10 ms at 48 kHz

constexpr int kWelchFft = 4096;
constexpr int kWelchHop = 2048;
constexpr double kLevelThreshold = 1e-5;  // 50 dB below the peak band

double BesselI0(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 64; ++k) {
    const double f = x / (2.0 * k);
    term *= f * f;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return sum;
}

void CheckCutoff(double cutoff_hz) {
  if (!(cutoff_hz > 0.0) || cutoff_hz > kPipelineSampleRate / 2.0) {
    throw std::invalid_argument("lowpass: cutoff must be in (0, 24000] Hz");
  }
}

// Direct-form convolution with the linear-phase kernel, output aligned to
// the input (edges see zeros).
std::vector<double> FilterAligned(const std::vector<double>& x,
                                  const std::vector<double>& h) {
  const int n = static_cast<int>(x.size());
  const int taps = static_cast<int>(h.size());
  const int delay = (taps - 1) / 2;
  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    const int center = i + delay;
    const int k_lo = std::max(0, center - (n - 1));
    const int k_hi = std::min(taps - 1, center);
    for (int k = k_lo; k <= k_hi; ++k) {
      acc += h[k] * x[center - k];
    }
    y[i] = acc;
  }
  return y;
}

}  // namespace

std::vector<double> DesignLowpassFir(double cutoff_hz, int num_taps,
                                     int sample_rate) {
  if (num_taps < 3 || num_taps % 2 == 0) {
    throw std::invalid_argument("lowpass: tap count must be odd and >= 3");
  }
  const double fc = cutoff_hz / sample_rate;  // normalized, <= 0.5
  const int center = (num_taps - 1) / 2;
  const double denom = BesselI0(kKaiserBeta);
  std::vector<double> h(num_taps);
  double sum = 0.0;
  for (int n = 0; n < num_taps; ++n) {
    const int m = n - center;
    const double sinc =
        m == 0 ? 2.0 * fc : std::sin(2.0 * M_PI * fc * m) / (M_PI * m);
    const double t = static_cast<double>(n - center) / center;
    const double window = BesselI0(kKaiserBeta * std::sqrt(1.0 - t * t)) /
                          denom;
    h[n] = sinc * window;
    sum += h[n];
  }
  for (double& v : h) v /= sum;  // exact unity at DC
  return h;
}

Waveform Lowpass(const Waveform& wave, double cutoff_hz) {
  CheckCutoff(cutoff_hz);
  const std::vector<double> h =
      DesignLowpassFir(cutoff_hz, kFirTaps, wave.sample_rate);
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples = FilterAligned(wave.samples, h);
  return out;
}

Waveform Fluctuate(const Waveform& wave,
                   const std::vector<BandwidthSegment>& schedule) {
  if (schedule.empty()) {
    throw std::invalid_argument("fluctuate: empty schedule");
  }
  if (schedule.front().start_seconds != 0.0) {
    throw std::invalid_argument("fluctuate: schedule must start at 0");
  }
  for (size_t i = 0; i < schedule.size(); ++i) {
    CheckCutoff(schedule[i].cutoff_hz);
    if (i > 0 &&
        schedule[i].start_seconds <= schedule[i - 1].start_seconds) {
      throw std::invalid_argument(
          "fluctuate: schedule starts must be strictly increasing");
    }
  }

  const int n = static_cast<int>(wave.samples.size());
  Waveform out;
  out.sample_rate = wave.sample_rate;
  out.samples.assign(n, 0.0);

  // Filter a padded span per segment, then blend linearly across 10 ms at
  // each boundary to avoid clicks.
  std::vector<double> prev_tail;  // filtered overlap from previous segment
  for (size_t s = 0; s < schedule.size(); ++s) {
    const int start = std::min(
        n, static_cast<int>(std::llround(schedule[s].start_seconds *
                                         wave.sample_rate)));
    const int end =
        s + 1 < schedule.size()
            ? std::min(n, static_cast<int>(std::llround(
                              schedule[s + 1].start_seconds *
                              wave.sample_rate)))
            : n;
    if (start >= end) continue;

    const int pad = kFirTaps;
    const int span_lo = std::max(0, start - pad);
    const int span_hi = std::min(n, end + kCrossfadeSamples + pad);
    std::vector<double> span(wave.samples.begin() + span_lo,
                             wave.samples.begin() + span_hi);
    const std::vector<double> h =
        DesignLowpassFir(schedule[s].cutoff_hz, kFirTaps, wave.sample_rate);
    const std::vector<double> filtered = FilterAligned(span, h);

    for (int i = start; i < end; ++i) {
      double v = filtered[i - span_lo];
      const int into = i - start;
      if (s > 0 && into < kCrossfadeSamples &&
          into < static_cast<int>(prev_tail.size())) {
        const double w = (into + 1.0) / (kCrossfadeSamples + 1.0);
        v = (1.0 - w) * prev_tail[into] + w * v;
      }
      out.samples[i] = v;
    }

    prev_tail.clear();
    for (int i = end; i < std::min(n, end + kCrossfadeSamples); ++i) {
      prev_tail.push_back(filtered[i - span_lo]);
    }
  }
  return out;
}

std::vector<BandwidthSegment> ParseScheduleFile(const std::string& path) {
  std::ifstream file(path);
  if (!file) {
    throw std::invalid_argument("schedule: cannot open " + path);
  }
  std::vector<BandwidthSegment> schedule;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream is(line);
    BandwidthSegment seg;
    if (!(is >> seg.start_seconds >> seg.cutoff_hz)) {
      throw std::invalid_argument("schedule: malformed line " +
                                  std::to_string(line_no) + " in " + path);
    }
    schedule.push_back(seg);
  }
  return schedule;
}

double EstimateBandwidth(const Waveform& wave) {
  const int n = static_cast<int>(wave.samples.size());
  if (n < kWelchFft) {
    // Zero-pad very short input to one analysis window.
    Waveform padded = wave;
    padded.samples.resize(kWelchFft, 0.0);
    return EstimateBandwidth(padded);
  }

  RealFft fft(kWelchFft);
  const std::vector<double> window = HannWindowPeriodic(kWelchFft);
  const int bins = fft.num_bins();
  std::vector<double> psd(bins, 0.0);
  std::vector<double> frame(kWelchFft);
  std::vector<std::complex<double>> spec(bins);
  int frames = 0;
  for (int start = 0; start + kWelchFft <= n; start += kWelchHop, ++frames) {
    for (int i = 0; i < kWelchFft; ++i) {
      frame[i] = wave.samples[start + i] * window[i];
    }
    fft.Forward(frame.data(), spec.data());
    for (int k = 0; k < bins; ++k) psd[k] += std::norm(spec[k]);
  }
  for (double& v : psd) v /= frames;

  // Smooth over the third-octave band starting at each bin, so the reported
  // frequency is the band's lower edge rather than its center.
  const double ratio = std::pow(2.0, 1.0 / 3.0);
  std::vector<double> smoothed(bins, 0.0);
  for (int k = 0; k < bins; ++k) {
    const int hi = std::min(bins - 1,
                            std::max(k, static_cast<int>(k * ratio)));
    double sum = 0.0;
    for (int j = k; j <= hi; ++j) sum += psd[j];
    smoothed[k] = sum / (hi - k + 1);
  }

  const double peak = *std::max_element(smoothed.begin(), smoothed.end());
  if (peak <= 1e-20) return 0.0;
  const double threshold = peak * kLevelThreshold;
  const double bin_hz =
      static_cast<double>(wave.sample_rate) / kWelchFft;
  for (int k = bins - 1; k >= 0; --k) {
    if (smoothed[k] >= threshold) return k * bin_hz;
  }
  return 0.0;
}

}  // namespace bae
