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

#ifndef BAE_ENGINE_H_
#define BAE_ENGINE_H_

#include <complex>
#include <memory>
#include <vector>

#include "bae/erb.h"
#include "bae/model.h"
#include "bae/nn.h"
#include "bae/stft.h"
#include "bae/waveform.h"

namespace bae {

// Per-bin dual-path gate: gain = sigmoid(lr_w .* lr + lr_b) .*
// sigmoid(up_w .* up + up_b); masked = gain .* up. Gain entries are in (0,1).
struct BandGate {
  Eigen::VectorXd lr_w, lr_b, up_w, up_b;
};

struct BandGateResult {
  Eigen::VectorXd gain;
  Eigen::VectorXd masked;
};

BandGateResult BandGuidedMask(const BandGate& gate,
                              const Eigen::VectorXd& mag_lr,
                              const Eigen::VectorXd& mag_up);

// Gated injection of a magnitude-stream feature into the phase stream:
//   m = sigmoid(w .* (mi + pr) + b);  out = pr + m .* mi
struct InteractionGate {
  Eigen::VectorXd w, b;
};

Eigen::VectorXd Interact(const InteractionGate& gate,
                         const Eigen::VectorXd& mi_feature,
                         const Eigen::VectorXd& pr_feature);

// All temporal state of one stream: conv frame buffers and GRU hidden
// vectors for both sub-networks. Single-owner; one instance per stream.
struct StreamState {
  std::vector<ConvState> mi_conv;  // downs then ups
  std::vector<GruState> mi_gru;
  std::vector<ConvState> pr_conv;  // proj, downs, ups
  std::vector<GruState> pr_gru;

  void Reset();
};

// Frame-synchronous dual-stream bandwidth extension over 769-bin complex
// spectra. Weights are immutable once compiled and may be shared across
// streams; each stream owns its StreamState.
class Engine {
 public:
  Engine(const ModelConfig& config, const ModelWeights& weights);

  const ModelConfig& config() const { return config_; }
  const ErbFilterBank& erb_bank() const { return erb_bank_; }

  StreamState MakeState() const;

  // Full forward pass of one frame. `in` and `out` hold num_bins complex
  // values; `out` may alias `in`.
  void ForwardFrame(const std::complex<double>* in, std::complex<double>* out,
                    StreamState& state) const;

  // Magnitude stream only: returns the inpainted full-band magnitude and,
  // if `taps` is non-null, the four post-activation down-layer features
  // consumed by the phase stream.
  Eigen::VectorXd MiForward(const Eigen::VectorXd& mag_lr, StreamState& state,
                            std::vector<Eigen::VectorXd>* taps = nullptr) const;

  // Phase stream: complex input frame (bins), magnitude-stream taps, and
  // stream state; returns the residual real/imag frames.
  void PrForward(const std::complex<double>* in,
                 const std::vector<Eigen::VectorXd>& taps, StreamState& state,
                 Eigen::VectorXd& residual_re,
                 Eigen::VectorXd& residual_im) const;

  // Offline helpers: run a fresh stream over a whole spectrogram / waveform.
  ComplexSpectrogram ProcessSpectrogram(const ComplexSpectrogram& spec) const;
  Waveform ProcessWaveform(const Waveform& wave) const;

 private:
  ModelConfig config_;
  ErbFilterBank erb_bank_;

  std::vector<ConvLayer> mi_down_;
  std::vector<ConvLayer> mi_up_;
  std::vector<Eigen::VectorXd> mi_down_slope_;
  std::vector<Eigen::VectorXd> mi_up_slope_;  // last up layer is linear
  std::vector<GruLayer> mi_gru_;
  BandGate bgm_;

  ConvLayer pr_proj_;
  Eigen::VectorXd pr_proj_slope_;
  std::vector<ConvLayer> pr_down_;
  std::vector<Eigen::VectorXd> pr_down_slope_;
  std::vector<InteractionGate> pr_inter_;
  std::vector<GruLayer> pr_gru_;
  std::vector<ConvLayer> pr_up_;
  std::vector<Eigen::VectorXd> pr_up_slope_;
  FcLayer pr_head_re_;
  FcLayer pr_head_im_;
};

}  // namespace bae

#endif  // BAE_ENGINE_H_
