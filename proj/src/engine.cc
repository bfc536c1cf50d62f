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

#include "bae/engine.h"

#include <cmath>
#include <stdexcept>

#include "bae/phase.h"

namespace bae {
namespace {

Eigen::VectorXd ToVector(const Tensor& t) {
  Eigen::VectorXd v(t.data.size());
  for (size_t i = 0; i < t.data.size(); ++i) v[i] = t.data[i];
  return v;
}

ConvLayer CompileConv(const ModelWeights& weights, const std::string& name,
                      int in, int out, int groups, int kernel) {
  const Tensor& w = weights.at(name + ".w");
  const int in_g = in / groups;
  ConvLayer layer;
  layer.in_channels = in;
  layer.out_channels = out;
  layer.groups = groups;
  layer.kernel_time = kernel;
  layer.taps.assign(kernel, Eigen::MatrixXd::Zero(out, in_g));
  for (int o = 0; o < out; ++o) {
    for (int i = 0; i < in_g; ++i) {
      for (int tau = 0; tau < kernel; ++tau) {
        layer.taps[tau](o, i) =
            w.data[(static_cast<size_t>(o) * in_g + i) * kernel + tau];
      }
    }
  }
  layer.bias = ToVector(weights.at(name + ".b"));
  return layer;
}

GruLayer CompileGru(const ModelWeights& weights, const std::string& name,
                    int in, int hidden, int groups) {
  GruLayer layer;
  layer.groups = groups;
  layer.in_channels = in;
  layer.hidden_channels = hidden;
  const int in_g = in / groups;
  const int h_g = hidden / groups;

  auto load_matrix = [&](const std::string& tensor, int cols,
                         std::vector<Eigen::MatrixXd>& dst) {
    const Tensor& t = weights.at(tensor);
    dst.assign(groups, Eigen::MatrixXd::Zero(h_g, cols));
    for (int g = 0; g < groups; ++g) {
      for (int r = 0; r < h_g; ++r) {
        for (int c = 0; c < cols; ++c) {
          dst[g](r, c) =
              t.data[(static_cast<size_t>(g) * h_g + r) * cols + c];
        }
      }
    }
  };
  auto load_bias = [&](const std::string& tensor,
                       std::vector<Eigen::VectorXd>& dst) {
    const Tensor& t = weights.at(tensor);
    dst.assign(groups, Eigen::VectorXd::Zero(h_g));
    for (int g = 0; g < groups; ++g) {
      for (int r = 0; r < h_g; ++r) {
        dst[g][r] = t.data[static_cast<size_t>(g) * h_g + r];
      }
    }
  };
  load_matrix(name + ".wz", in_g, layer.wz);
  load_matrix(name + ".wr", in_g, layer.wr);
  load_matrix(name + ".wh", in_g, layer.wh);
  load_matrix(name + ".uz", h_g, layer.uz);
  load_matrix(name + ".ur", h_g, layer.ur);
  load_matrix(name + ".uh", h_g, layer.uh);
  load_bias(name + ".bz", layer.bz);
  load_bias(name + ".br", layer.br);
  load_bias(name + ".bh", layer.bh);
  return layer;
}

FcLayer CompileFc(const ModelWeights& weights, const std::string& name,
                  int in, int out) {
  const Tensor& w = weights.at(name + ".w");
  FcLayer layer;
  layer.weight = Eigen::MatrixXd::Zero(out, in);
  for (int r = 0; r < out; ++r) {
    for (int c = 0; c < in; ++c) {
      layer.weight(r, c) = w.data[static_cast<size_t>(r) * in + c];
    }
  }
  layer.bias = ToVector(weights.at(name + ".b"));
  return layer;
}

Eigen::VectorXd SigmoidVec(Eigen::VectorXd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Sigmoid(v[i]);
  return v;
}

}  // namespace

BandGateResult BandGuidedMask(const BandGate& gate,
                              const Eigen::VectorXd& mag_lr,
                              const Eigen::VectorXd& mag_up) {
  if (mag_lr.size() != gate.lr_w.size() || mag_up.size() != gate.up_w.size()) {
    throw std::invalid_argument("band gate: frame size mismatch");
  }
  BandGateResult result;
  result.gain =
      SigmoidVec(gate.lr_w.cwiseProduct(mag_lr) + gate.lr_b)
          .cwiseProduct(SigmoidVec(gate.up_w.cwiseProduct(mag_up) + gate.up_b));
  result.masked = result.gain.cwiseProduct(mag_up);
  return result;
}

Eigen::VectorXd Interact(const InteractionGate& gate,
                         const Eigen::VectorXd& mi_feature,
                         const Eigen::VectorXd& pr_feature) {
  if (mi_feature.size() != pr_feature.size() ||
      mi_feature.size() != gate.w.size()) {
    throw std::invalid_argument("interaction: channel mismatch");
  }
  const Eigen::VectorXd mask =
      SigmoidVec(gate.w.cwiseProduct(mi_feature + pr_feature) + gate.b);
  return pr_feature + mask.cwiseProduct(mi_feature);
}

void StreamState::Reset() {
  for (auto& s : mi_conv) s.Reset();
  for (auto& s : mi_gru) s.Reset();
  for (auto& s : pr_conv) s.Reset();
  for (auto& s : pr_gru) s.Reset();
}

Engine::Engine(const ModelConfig& config, const ModelWeights& weights)
    : config_(config) {
  config_.Validate();
  erb_bank_ = BuildErbBank(config_.erb_bands, config_.num_bins,
                           kPipelineSampleRate);

  int prev = config_.erb_bands;
  for (size_t i = 0; i < config_.mi_down_channels.size(); ++i) {
    const std::string name = "mi.down." + std::to_string(i);
    const int out = config_.mi_down_channels[i];
    mi_down_.push_back(
        CompileConv(weights, name, prev, out, 1, config_.kernel_time));
    mi_down_slope_.push_back(ToVector(weights.at(name + ".alpha")));
    prev = out;
  }
  mi_gru_.push_back(CompileGru(weights, "mi.gru.0", prev,
                               config_.mi_gru_hidden, config_.mi_gru_groups));
  mi_gru_.push_back(CompileGru(weights, "mi.gru.1", config_.mi_gru_hidden,
                               config_.mi_gru_hidden, config_.mi_gru_groups));
  prev = config_.mi_gru_hidden;
  for (size_t i = 0; i < config_.mi_up_channels.size(); ++i) {
    const std::string name = "mi.up." + std::to_string(i);
    const int out = config_.mi_up_channels[i];
    const bool last = i + 1 == config_.mi_up_channels.size();
    mi_up_.push_back(
        CompileConv(weights, name, prev, out, 1, config_.kernel_time));
    mi_up_slope_.push_back(last ? Eigen::VectorXd()
                                : ToVector(weights.at(name + ".alpha")));
    prev = out;
  }
  bgm_.lr_w = ToVector(weights.at("mi.bgm.lr.w"));
  bgm_.lr_b = ToVector(weights.at("mi.bgm.lr.b"));
  bgm_.up_w = ToVector(weights.at("mi.bgm.up.w"));
  bgm_.up_b = ToVector(weights.at("mi.bgm.up.b"));

  if (!config_.has_pr()) return;

  pr_proj_ = CompileConv(weights, "pr.proj", 2 * config_.num_bins,
                         config_.pr_proj_channels, config_.pr_proj_groups,
                         config_.kernel_time);
  pr_proj_slope_ = ToVector(weights.at("pr.proj.alpha"));
  prev = config_.pr_proj_channels;
  for (size_t i = 0; i < config_.pr_down_channels.size(); ++i) {
    const std::string name = "pr.down." + std::to_string(i);
    const int out = config_.pr_down_channels[i];
    pr_down_.push_back(CompileConv(weights, name, prev, out,
                                   config_.pr_down_groups[i],
                                   config_.kernel_time));
    pr_down_slope_.push_back(ToVector(weights.at(name + ".alpha")));
    prev = out;
    if (i >= 1) {
      const std::string gate = "pr.inter." + std::to_string(i - 1);
      pr_inter_.push_back({ToVector(weights.at(gate + ".w")),
                           ToVector(weights.at(gate + ".b"))});
    }
  }
  pr_gru_.push_back(CompileGru(weights, "pr.gru.0", prev,
                               config_.pr_gru_hidden, config_.pr_gru_groups));
  pr_gru_.push_back(CompileGru(weights, "pr.gru.1", config_.pr_gru_hidden,
                               config_.pr_gru_hidden, config_.pr_gru_groups));
  prev = config_.pr_gru_hidden;
  for (size_t i = 0; i < config_.pr_up_channels.size(); ++i) {
    const std::string name = "pr.up." + std::to_string(i);
    const int out = config_.pr_up_channels[i];
    pr_up_.push_back(
        CompileConv(weights, name, prev, out, 1, config_.kernel_time));
    pr_up_slope_.push_back(ToVector(weights.at(name + ".alpha")));
    prev = out;
  }
  pr_head_re_ = CompileFc(weights, "pr.head_re", prev, config_.num_bins);
  pr_head_im_ = CompileFc(weights, "pr.head_im", prev, config_.num_bins);
}

StreamState Engine::MakeState() const {
  StreamState state;
  state.mi_conv.resize(mi_down_.size() + mi_up_.size());
  for (size_t i = 0; i < mi_down_.size(); ++i) {
    state.mi_conv[i].Init(mi_down_[i]);
  }
  for (size_t i = 0; i < mi_up_.size(); ++i) {
    state.mi_conv[mi_down_.size() + i].Init(mi_up_[i]);
  }
  state.mi_gru.resize(mi_gru_.size());
  for (size_t i = 0; i < mi_gru_.size(); ++i) state.mi_gru[i].Init(mi_gru_[i]);
  if (config_.has_pr()) {
    state.pr_conv.resize(1 + pr_down_.size() + pr_up_.size());
    state.pr_conv[0].Init(pr_proj_);
    for (size_t i = 0; i < pr_down_.size(); ++i) {
      state.pr_conv[1 + i].Init(pr_down_[i]);
    }
    for (size_t i = 0; i < pr_up_.size(); ++i) {
      state.pr_conv[1 + pr_down_.size() + i].Init(pr_up_[i]);
    }
    state.pr_gru.resize(pr_gru_.size());
    for (size_t i = 0; i < pr_gru_.size(); ++i) {
      state.pr_gru[i].Init(pr_gru_[i]);
    }
  }
  return state;
}

Eigen::VectorXd Engine::MiForward(const Eigen::VectorXd& mag_lr,
                                  StreamState& state,
                                  std::vector<Eigen::VectorXd>* taps) const {
  if (mag_lr.size() != config_.num_bins) {
    throw std::invalid_argument("mi_forward: magnitude frame size mismatch");
  }
  if (state.mi_conv.empty()) {
    throw std::invalid_argument("mi_forward: state not initialized");
  }

  Eigen::VectorXd x = erb_bank_.matrix * mag_lr;
  std::vector<Eigen::VectorXd> down_outputs;
  down_outputs.reserve(mi_down_.size());
  for (size_t i = 0; i < mi_down_.size(); ++i) {
    x = ConvStep(mi_down_[i], state.mi_conv[i], x);
    PreluInPlace(x, mi_down_slope_[i]);
    down_outputs.push_back(x);
  }
  x = GruStep(mi_gru_[0], state.mi_gru[0], x);
  x = GruStep(mi_gru_[1], state.mi_gru[1], x);

  // Summation skips pair each up layer with the deepest unused down layer of
  // equal width; the final full-band layer has no counterpart.
  std::vector<bool> used(down_outputs.size(), false);
  for (size_t i = 0; i < mi_up_.size(); ++i) {
    x = ConvStep(mi_up_[i], state.mi_conv[mi_down_.size() + i], x);
    const bool last = i + 1 == mi_up_.size();
    if (!last) {
      for (int d = static_cast<int>(down_outputs.size()) - 1; d >= 0; --d) {
        if (!used[d] && down_outputs[d].size() == x.size()) {
          x += down_outputs[d];
          used[d] = true;
          break;
        }
      }
      PreluInPlace(x, mi_up_slope_[i]);
    }
  }

  const BandGateResult gate = BandGuidedMask(bgm_, mag_lr, x);
  Eigen::VectorXd mag_mi = mag_lr + gate.masked;
  mag_mi = mag_mi.cwiseMax(0.0);
  if (taps != nullptr) *taps = std::move(down_outputs);
  return mag_mi;
}

void Engine::PrForward(const std::complex<double>* in,
                       const std::vector<Eigen::VectorXd>& taps,
                       StreamState& state, Eigen::VectorXd& residual_re,
                       Eigen::VectorXd& residual_im) const {
  if (!config_.has_pr()) {
    throw std::logic_error("pr_forward: not available in the lite variant");
  }
  if (taps.size() != mi_down_.size()) {
    throw std::invalid_argument("pr_forward: missing magnitude-stream taps");
  }
  const int bins = config_.num_bins;
  Eigen::VectorXd x(2 * bins);
  for (int k = 0; k < bins; ++k) {
    x[k] = in[k].real();
    x[bins + k] = in[k].imag();
  }

  x = ConvStep(pr_proj_, state.pr_conv[0], x);
  PreluInPlace(x, pr_proj_slope_);
  for (size_t i = 0; i < pr_down_.size(); ++i) {
    x = ConvStep(pr_down_[i], state.pr_conv[1 + i], x);
    PreluInPlace(x, pr_down_slope_[i]);
    if (i >= 1) x = Interact(pr_inter_[i - 1], taps[i - 1], x);
  }
  x = GruStep(pr_gru_[0], state.pr_gru[0], x);
  x = GruStep(pr_gru_[1], state.pr_gru[1], x);
  for (size_t i = 0; i < pr_up_.size(); ++i) {
    x = ConvStep(pr_up_[i], state.pr_conv[1 + pr_down_.size() + i], x);
    PreluInPlace(x, pr_up_slope_[i]);
  }
  residual_re = Fc(pr_head_re_, x);
  residual_im = Fc(pr_head_im_, x);
}

void Engine::ForwardFrame(const std::complex<double>* in,
                          std::complex<double>* out,
                          StreamState& state) const {
  const int bins = config_.num_bins;
  Eigen::VectorXd mag(bins);
  std::vector<double> phase(bins);
  for (int k = 0; k < bins; ++k) {
    mag[k] = std::hypot(in[k].real(), in[k].imag());
    phase[k] = std::atan2(in[k].imag(), in[k].real());
  }

  std::vector<Eigen::VectorXd> taps;
  const Eigen::VectorXd mag_mi =
      MiForward(mag, state, config_.has_pr() ? &taps : nullptr);

  // 4 kHz on the analysis grid: bin spacing is 48000 / fft_size.
  const int base = config_.fft_size / 12;
  const std::vector<double> flipped = FlipPhase(phase, base);

  Eigen::VectorXd res_re, res_im;
  if (config_.has_pr()) {
    PrForward(in, taps, state, res_re, res_im);
  }

  for (int k = 0; k < bins; ++k) {
    std::complex<double> v;
    if (k <= base && mag[k] > 0.0) {
      // Trusted low band keeps the original phase; scaling the complex bin
      // avoids a polar round trip (exact when the magnitude is unchanged).
      v = in[k] * (mag_mi[k] / mag[k]);
    } else {
      v = std::polar(mag_mi[k], flipped[k]);
    }
    if (config_.has_pr()) {
      v += std::complex<double>(res_re[k], res_im[k]);
    }
    out[k] = v;
  }
}

ComplexSpectrogram Engine::ProcessSpectrogram(
    const ComplexSpectrogram& spec) const {
  if (spec.num_bins != config_.num_bins) {
    throw std::invalid_argument("engine: spectrogram bin count mismatch");
  }
  ComplexSpectrogram out = spec;
  StreamState state = MakeState();
  for (int t = 0; t < spec.num_frames; ++t) {
    ForwardFrame(spec.Frame(t), out.Frame(t), state);
  }
  return out;
}

Waveform Engine::ProcessWaveform(const Waveform& wave) const {
  const ComplexSpectrogram spec = Stft(wave, config_.fft_size,
                                       config_.fft_size / 2);
  Waveform out = Istft(ProcessSpectrogram(spec));
  out.samples.resize(wave.samples.size());
  out.sample_rate = wave.sample_rate;
  return out;
}

}  // namespace bae
