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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bae/fft.h"
#include "doctest.h"
#include "support/test_signals.h"

namespace bae {
namespace {

// Mean power density in [lo, hi) Hz, measured with a long FFT.
double BandDensity(const Waveform& wave, double lo, double hi) {
  const int fft_size = 8192;
  RealFft fft(fft_size);
  std::vector<double> psd(fft.num_bins(), 0.0);
  std::vector<double> frame(fft_size);
  int frames = 0;
  for (size_t start = 0; start + fft_size <= wave.samples.size();
       start += fft_size / 2, ++frames) {
    for (int i = 0; i < fft_size; ++i) {
      frame[i] = wave.samples[start + i] *
                 (0.5 - 0.5 * std::cos(2.0 * M_PI * i / fft_size));
    }
    const auto spec = fft.Forward(frame);
    for (size_t k = 0; k < spec.size(); ++k) psd[k] += std::norm(spec[k]);
  }
  const double bin_hz = 48000.0 / fft_size;
  double sum = 0.0;
  int count = 0;
  for (size_t k = 0; k < psd.size(); ++k) {
    const double f = k * bin_hz;
    if (f >= lo && f < hi) {
      sum += psd[k] / frames;
      ++count;
    }
  }
  return count > 0 ? sum / count : 0.0;
}

TEST_CASE("full-band cutoff is a pass-through") {
  const Waveform x = testing::GaussianNoise(48000, 50);
  const Waveform y = Lowpass(x, 24000.0);
  double max_err = 0.0;
  for (size_t i = 0; i < x.samples.size(); ++i) {
    max_err = std::max(max_err, std::abs(x.samples[i] - y.samples[i]));
  }
  // Within 0.1 dB everywhere (the kernel degenerates to a unit impulse).
  CHECK(max_err < 1e-9);
}

TEST_CASE("stop band sits at least 60 dB under the passband density") {
  const Waveform x = testing::GaussianNoise(4 * 48000, 51);
  const Waveform y = Lowpass(x, 4000.0);
  const double pass = BandDensity(y, 200.0, 3600.0);
  const double stop = BandDensity(y, 4400.0, 24000.0);
  CHECK(10.0 * std::log10(stop / pass) < -60.0);
}

TEST_CASE("a 10 kHz tone dies through a 4 kHz cutoff") {
  const Waveform tone = testing::SineSignal(48000, 10000.0);
  const Waveform out = Lowpass(tone, 4000.0);
  double in_rms = 0.0, out_rms = 0.0;
  for (size_t i = 0; i < tone.samples.size(); ++i) {
    in_rms += tone.samples[i] * tone.samples[i];
    out_rms += out.samples[i] * out.samples[i];
  }
  CHECK(std::sqrt(out_rms / in_rms) < 1e-3);
}

TEST_CASE("the filter response is -6 dB at the cutoff") {
  const Waveform tone = testing::SineSignal(2 * 48000, 8000.0);
  const Waveform out = Lowpass(tone, 8000.0);
  double in_rms = 0.0, out_rms = 0.0;
  // Skip filter edges.
  for (int i = 4000; i < 2 * 48000 - 4000; ++i) {
    in_rms += tone.samples[i] * tone.samples[i];
    out_rms += out.samples[i] * out.samples[i];
  }
  const double gain_db = 10.0 * std::log10(out_rms / in_rms);
  CHECK(gain_db == doctest::Approx(-6.02).epsilon(0.02));
}

TEST_CASE("filtering is linear and time-invariant") {
  const Waveform a = testing::GaussianNoise(24000, 52);
  const Waveform b = testing::GaussianNoise(24000, 53);
  Waveform mix;
  mix.samples.resize(24000);
  for (int i = 0; i < 24000; ++i) {
    mix.samples[i] = 0.6 * a.samples[i] - 1.7 * b.samples[i];
  }
  const Waveform fa = Lowpass(a, 6000.0);
  const Waveform fb = Lowpass(b, 6000.0);
  const Waveform fm = Lowpass(mix, 6000.0);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < 24000; ++i) {
    const double want = 0.6 * fa.samples[i] - 1.7 * fb.samples[i];
    num += (fm.samples[i] - want) * (fm.samples[i] - want);
    den += want * want;
  }
  CHECK(std::sqrt(num / den) < 1e-9);
}

TEST_CASE("group delay is compensated exactly") {
  Waveform impulse;
  impulse.samples.assign(4096, 0.0);
  impulse.samples[2000] = 1.0;
  const Waveform out = Lowpass(impulse, 6000.0);
  int argmax = 0;
  for (int i = 1; i < 4096; ++i) {
    if (std::abs(out.samples[i]) > std::abs(out.samples[argmax])) argmax = i;
  }
  CHECK(argmax == 2000);
}

TEST_CASE("lowpass rejects invalid cutoffs") {
  const Waveform x = testing::GaussianNoise(4800, 54);
  CHECK_THROWS_AS(Lowpass(x, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Lowpass(x, -100.0), std::invalid_argument);
  CHECK_THROWS_AS(Lowpass(x, 24001.0), std::invalid_argument);
}

TEST_CASE("single-entry schedule equals a plain lowpass") {
  const Waveform x = testing::GaussianNoise(24000, 55);
  const Waveform direct = Lowpass(x, 9000.0);
  const Waveform scheduled = Fluctuate(x, {{0.0, 9000.0}});
  for (int i = 0; i < 24000; ++i) {
    CHECK(scheduled.samples[i] == doctest::Approx(direct.samples[i])
                                      .epsilon(1e-12));
  }
}

TEST_CASE("two-segment schedule band-limits each half") {
  const Waveform x = testing::GaussianNoise(4 * 48000, 56);
  const Waveform out = Fluctuate(x, {{0.0, 4000.0}, {2.0, 12000.0}});
  Waveform first_half, second_half;
  first_half.samples.assign(out.samples.begin(),
                            out.samples.begin() + 2 * 48000);
  second_half.samples.assign(out.samples.begin() + 2 * 48000,
                             out.samples.end());
  // First half: no energy above 4.4 kHz; second half: active to ~12 kHz.
  const double stop1 = BandDensity(first_half, 4800.0, 24000.0);
  const double pass1 = BandDensity(first_half, 200.0, 3600.0);
  CHECK(10.0 * std::log10(stop1 / pass1) < -55.0);
  const double mid2 = BandDensity(second_half, 8000.0, 11500.0);
  const double stop2 = BandDensity(second_half, 13000.0, 24000.0);
  CHECK(mid2 > 100.0 * stop2);
}

TEST_CASE("fluctuate validates its schedule") {
  const Waveform x = testing::GaussianNoise(9600, 57);
  CHECK_THROWS_AS(Fluctuate(x, {}), std::invalid_argument);
  CHECK_THROWS_AS(Fluctuate(x, {{0.5, 4000.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Fluctuate(x, {{0.0, 4000.0}, {0.0, 8000.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Fluctuate(x, {{0.0, 4000.0}, {0.1, -1.0}}),
                  std::invalid_argument);
}

TEST_CASE("schedule files parse and reject garbage") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "bae_sched.txt").string();
  {
    std::ofstream f(path);
    f << "# comment\n0.0 8000\n\n1.5 16000\n";
  }
  const auto schedule = ParseScheduleFile(path);
  REQUIRE(schedule.size() == 2);
  CHECK(schedule[0].start_seconds == 0.0);
  CHECK(schedule[0].cutoff_hz == 8000.0);
  CHECK(schedule[1].start_seconds == 1.5);
  {
    std::ofstream f(path);
    f << "0.0 abc\n";
  }
  CHECK_THROWS_AS(ParseScheduleFile(path), std::invalid_argument);
  std::remove(path.c_str());
}

TEST_CASE("bandwidth estimates recover programmed cutoffs within 250 Hz") {
  const Waveform noise = testing::GaussianNoise(4 * 48000, 58);
  for (double cutoff : {4000.0, 8000.0, 12000.0, 16000.0, 20000.0}) {
    const double estimate = EstimateBandwidth(Lowpass(noise, cutoff));
    CHECK(estimate >= cutoff - 250.0);
    CHECK(estimate <= cutoff + 250.0);
  }
}

TEST_CASE("full-band noise estimates near Nyquist and silence at zero") {
  const Waveform noise = testing::GaussianNoise(2 * 48000, 59);
  CHECK(EstimateBandwidth(noise) >= 23000.0);
  Waveform silence;
  silence.samples.assign(48000, 0.0);
  CHECK(EstimateBandwidth(silence) == 0.0);
}

}  // namespace
}  // namespace bae
