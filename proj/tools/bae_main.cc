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

// Command-line front end: offline extension, raw-PCM streaming, bandwidth
// degradation, objective metrics, complexity and throughput reporting.
//
// Exit codes: 0 success, 1 usage error, 2 I/O or audio-format error,
// 3 weight-file error.

#include <chrono>
#include <cstdio>
#include <deque>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bae/bandwidth.h"
#include "bae/complexity.h"
#include "bae/engine.h"
#include "bae/metrics.h"
#include "bae/stream.h"
#include "bae/wav_io.h"
#include "bae/weights_io.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitWeights = 3;

struct CliError {
  int code;
  std::string message;
};

bae::Variant ParseVariant(const std::string& name) {
  if (name == "lite") return bae::Variant::kLite;
  if (name == "full") return bae::Variant::kFull;
  throw CliError{kExitUsage, "unknown variant: " + name};
}

bae::Waveform ReadInputWav(const std::string& path,
                           bae::WavSampleFormat* format) {
  bae::Waveform wave;
  try {
    wave = bae::ReadWav(path, format);
  } catch (const bae::WavReadError& e) {
    throw CliError{kExitIo, e.what()};
  }
  if (wave.sample_rate != bae::kPipelineSampleRate) {
    throw CliError{kExitIo, path + ": expected 48 kHz audio, got " +
                               std::to_string(wave.sample_rate) + " Hz"};
  }
  return wave;
}

bae::Engine LoadEngine(const std::string& weights_path,
                       const std::optional<std::string>& variant_override) {
  try {
    bae::LoadedModel model = bae::LoadWeights(weights_path);
    if (variant_override.has_value()) {
      model.config.variant = ParseVariant(*variant_override);
    }
    return bae::Engine(model.config, model.weights);
  } catch (const bae::WeightsError& e) {
    throw CliError{kExitWeights, e.what()};
  } catch (const std::out_of_range& e) {
    throw CliError{kExitWeights, e.what()};
  } catch (const std::invalid_argument& e) {
    throw CliError{kExitWeights, e.what()};
  }
}

int RunExtend(const std::string& input, const std::string& output,
              const std::string& weights,
              const std::optional<std::string>& variant) {
  const bae::Engine engine = LoadEngine(weights, variant);
  bae::WavSampleFormat format;
  const bae::Waveform in = ReadInputWav(input, &format);
  bae::Waveform out;
  try {
    out = engine.ProcessWaveform(in);
  } catch (const std::invalid_argument& e) {
    throw CliError{kExitIo, e.what()};
  }
  try {
    bae::WriteWav(output, out, format);
  } catch (const bae::WavWriteError& e) {
    throw CliError{kExitIo, e.what()};
  }
  return 0;
}

// Raw float32 48 kHz PCM, stdin to stdout. Output has exactly as many
// samples as the input; content is delayed by the fixed pipeline latency
// (zeros lead in, the final samples in flight at EOF are dropped).
int RunStream(const std::string& weights) {
  const bae::Engine engine = LoadEngine(weights, std::nullopt);
  bae::StreamSession session(engine);
  const int hop = session.hop();
  const int latency = session.LatencySamples();
  std::fprintf(stderr, "stream: latency %d samples (%.1f ms)\n", latency,
               1000.0 * latency / bae::kPipelineSampleRate);

  std::deque<double> pending;  // latency preamble + reconstruction
  for (int i = 0; i < latency; ++i) pending.push_back(0.0);

  std::vector<float> in_block(hop);
  std::vector<double> block(hop);
  std::vector<float> out_block;
  uint64_t consumed = 0;
  uint64_t produced = 0;

  auto emit = [&](uint64_t target) {
    out_block.clear();
    while (produced < target && !pending.empty()) {
      out_block.push_back(static_cast<float>(pending.front()));
      pending.pop_front();
      ++produced;
    }
    if (!out_block.empty()) {
      std::fwrite(out_block.data(), sizeof(float), out_block.size(), stdout);
    }
  };

  for (;;) {
    const size_t got = std::fread(in_block.data(), sizeof(float), hop, stdin);
    if (got == 0) break;
    consumed += got;
    for (size_t i = 0; i < got; ++i) block[i] = in_block[i];
    std::fill(block.begin() + got, block.end(), 0.0);
    auto chunk = session.PushBlock(block.data(), hop);
    if (chunk.has_value()) {
      pending.insert(pending.end(), chunk->begin(), chunk->end());
    }
    emit(consumed);
    if (got < static_cast<size_t>(hop)) break;
  }
  // Flush: feed silence until every input sample has a counterpart out.
  std::fill(block.begin(), block.end(), 0.0);
  while (produced < consumed) {
    auto chunk = session.PushBlock(block.data(), hop);
    if (chunk.has_value()) {
      pending.insert(pending.end(), chunk->begin(), chunk->end());
    }
    emit(consumed);
  }
  std::fflush(stdout);
  return 0;
}

int RunDegrade(const std::string& input, const std::string& output,
               const std::optional<double>& cutoff,
               const std::optional<std::string>& schedule_path) {
  if (cutoff.has_value() == schedule_path.has_value()) {
    throw CliError{kExitUsage,
                   "degrade: exactly one of --cutoff/--schedule is required"};
  }
  bae::WavSampleFormat format;
  const bae::Waveform in = ReadInputWav(input, &format);
  bae::Waveform out;
  try {
    if (cutoff.has_value()) {
      out = bae::Lowpass(in, *cutoff);
    } else {
      out = bae::Fluctuate(in, bae::ParseScheduleFile(*schedule_path));
    }
  } catch (const std::invalid_argument& e) {
    throw CliError{kExitUsage, e.what()};
  }
  try {
    bae::WriteWav(output, out, format);
  } catch (const bae::WavWriteError& e) {
    throw CliError{kExitIo, e.what()};
  }
  return 0;
}

int RunEval(const std::string& reference, const std::string& degraded,
            const std::string& metrics_csv, bool json) {
  const bae::Waveform ref = ReadInputWav(reference, nullptr);
  const bae::Waveform deg = ReadInputWav(degraded, nullptr);

  std::vector<std::string> selected;
  std::stringstream ss(metrics_csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) selected.push_back(item);
  }

  nlohmann::json results;
  try {
    for (const std::string& name : selected) {
      if (name == "lsd") {
        results["lsd"] = bae::Lsd(ref, deg);
      } else if (name == "segsnr") {
        results["segsnr"] = bae::SegSnr(ref, deg);
      } else if (name == "mrstft") {
        results["mrstft"] = bae::MrStftLoss(ref, deg);
      } else if (name == "wav") {
        results["wav"] = bae::WavLoss(ref, deg);
      } else {
        throw CliError{kExitUsage, "eval: unknown metric " + name};
      }
    }
  } catch (const std::invalid_argument& e) {
    throw CliError{kExitIo, e.what()};
  }

  if (json) {
    std::cout << results.dump() << "\n";
  } else {
    for (const std::string& name : selected) {
      std::cout << name << "=" << results[name].get<double>() << "\n";
    }
  }
  return 0;
}

int RunBench(const std::string& weights, double seconds) {
  const bae::Engine engine = LoadEngine(weights, std::nullopt);
  const bae::ComplexityReport report =
      bae::CountComplexity(engine.config());

  bae::Waveform noise;
  noise.samples.resize(
      static_cast<size_t>(seconds * bae::kPipelineSampleRate));
  bae::SplitMix64 rng(12345);
  for (double& s : noise.samples) s = rng.NextUnit() * 0.2 - 0.1;

  const auto start = std::chrono::steady_clock::now();
  const bae::Waveform out = engine.ProcessWaveform(noise);
  const auto stop = std::chrono::steady_clock::now();
  const double elapsed = std::chrono::duration<double>(stop - start).count();
  const double rtf = elapsed / noise.DurationSeconds();

  std::cout << "variant=" << bae::VariantName(engine.config().variant)
            << "\n";
  std::cout << "params=" << report.params << "\n";
  std::cout << "macs_per_second=" << static_cast<uint64_t>(
      report.macs_per_second()) << "\n";
  std::cout << "gmacs_per_second=" << report.gmacs_per_second() << "\n";
  std::cout << "audio_seconds=" << noise.DurationSeconds() << "\n";
  std::cout << "process_seconds=" << elapsed << "\n";
  std::cout << "rtf=" << rtf << "\n";
  return out.samples.empty() ? 1 : 0;
}

int RunCount(const std::string& variant) {
  const bae::ModelConfig config =
      bae::ModelConfig::Defaults(ParseVariant(variant));
  const bae::ComplexityReport report = bae::CountComplexity(config);
  std::cout << "variant=" << variant << "\n";
  std::cout << "params=" << report.params << "\n";
  std::cout << "params_millions=" << report.params_millions() << "\n";
  std::cout << "macs_per_frame=" << report.macs_per_frame << "\n";
  std::cout << "macs_per_second=" << static_cast<uint64_t>(
      report.macs_per_second()) << "\n";
  std::cout << "gmacs_per_second=" << report.gmacs_per_second() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming blind bandwidth extension for 48 kHz speech"};
  app.require_subcommand(1);

  std::string input, output, weights, reference, degraded;
  std::string metrics_csv = "lsd,segsnr,mrstft,wav";
  std::string count_variant = "full";
  std::optional<std::string> variant;
  std::optional<double> cutoff;
  std::optional<std::string> schedule;
  double seconds = 10.0;
  bool json = false;

  CLI::App* extend = app.add_subcommand("extend", "process a WAV file");
  extend->add_option("--input", input)->required();
  extend->add_option("--output", output)->required();
  extend->add_option("--weights", weights)->required();
  extend->add_option("--variant", variant)
      ->check(CLI::IsMember({"full", "lite"}));

  CLI::App* stream = app.add_subcommand(
      "stream", "raw float32 48 kHz PCM, stdin to stdout");
  stream->add_option("--weights", weights)->required();

  CLI::App* degrade =
      app.add_subcommand("degrade", "band-limit a WAV file");
  degrade->add_option("--input", input)->required();
  degrade->add_option("--output", output)->required();
  degrade->add_option("--cutoff", cutoff);
  degrade->add_option("--schedule", schedule);

  CLI::App* eval = app.add_subcommand("eval", "objective quality metrics");
  eval->add_option("--reference", reference)->required();
  eval->add_option("--degraded", degraded)->required();
  eval->add_option("--metrics", metrics_csv);
  eval->add_flag("--json", json);

  CLI::App* bench =
      app.add_subcommand("bench", "complexity and real-time factor");
  bench->add_option("--weights", weights)->required();
  bench->add_option("--seconds", seconds);

  CLI::App* count =
      app.add_subcommand("count", "analytical complexity of a variant");
  count->add_option("--variant", count_variant)
      ->check(CLI::IsMember({"full", "lite"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (extend->parsed()) return RunExtend(input, output, weights, variant);
    if (stream->parsed()) return RunStream(weights);
    if (degrade->parsed()) return RunDegrade(input, output, cutoff, schedule);
    if (eval->parsed()) return RunEval(reference, degraded, metrics_csv, json);
    if (bench->parsed()) return RunBench(weights, seconds);
    if (count->parsed()) return RunCount(count_variant);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
