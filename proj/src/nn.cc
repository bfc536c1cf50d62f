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

#include "bae/nn.h"

#include <stdexcept>

namespace bae {

void ConvState::Init(const ConvLayer& layer) {
  history.assign(layer.kernel_time - 1,
                 Eigen::VectorXd::Zero(layer.in_channels));
}

void ConvState::Reset() {
  for (auto& h : history) h.setZero();
}

Eigen::VectorXd ConvStep(const ConvLayer& layer, ConvState& state,
                         const Eigen::VectorXd& frame) {
  if (frame.size() != layer.in_channels) {
    throw std::invalid_argument("conv_step: input channel mismatch");
  }
  if (static_cast<int>(state.history.size()) != layer.kernel_time - 1) {
    throw std::invalid_argument("conv_step: state not initialized");
  }
  const int out_g = layer.out_channels / layer.groups;
  const int in_g = layer.in_channels / layer.groups;

  Eigen::VectorXd y = layer.bias;
  for (int tau = 0; tau < layer.kernel_time; ++tau) {
    const Eigen::VectorXd& x =
        tau == 0 ? frame : state.history[tau - 1];
    for (int g = 0; g < layer.groups; ++g) {
      y.segment(g * out_g, out_g).noalias() +=
          layer.taps[tau].middleRows(g * out_g, out_g) *
          x.segment(g * in_g, in_g);
    }
  }
  for (int tau = layer.kernel_time - 2; tau > 0; --tau) {
    state.history[tau] = state.history[tau - 1];
  }
  if (!state.history.empty()) state.history[0] = frame;
  return y;
}

void GruState::Init(const GruLayer& layer) {
  hidden = Eigen::VectorXd::Zero(layer.hidden_channels);
}

void GruState::Reset() { hidden.setZero(); }

Eigen::VectorXd GruStep(const GruLayer& layer, GruState& state,
                        const Eigen::VectorXd& frame) {
  if (frame.size() != layer.in_channels) {
    throw std::invalid_argument("gru_step: input channel mismatch");
  }
  if (state.hidden.size() != layer.hidden_channels) {
    throw std::invalid_argument("gru_step: state not initialized");
  }
  const int in_g = layer.in_per_group();
  const int h_g = layer.hidden_per_group();

  Eigen::VectorXd out(layer.hidden_channels);
  for (int g = 0; g < layer.groups; ++g) {
    const auto x = frame.segment(g * in_g, in_g);
    const auto h = state.hidden.segment(g * h_g, h_g);

    Eigen::VectorXd z = layer.wz[g] * x + layer.uz[g] * h + layer.bz[g];
    Eigen::VectorXd r = layer.wr[g] * x + layer.ur[g] * h + layer.br[g];
    z = z.unaryExpr([](double v) { return Sigmoid(v); });
    r = r.unaryExpr([](double v) { return Sigmoid(v); });

    Eigen::VectorXd c =
        layer.wh[g] * x + layer.uh[g] * (r.cwiseProduct(h)) + layer.bh[g];
    c = c.array().tanh();

    out.segment(g * h_g, h_g) =
        (1.0 - z.array()) * h.array() + z.array() * c.array();
  }
  state.hidden = out;
  return out;
}

Eigen::VectorXd Fc(const FcLayer& layer, const Eigen::VectorXd& frame) {
  if (frame.size() != layer.weight.cols()) {
    throw std::invalid_argument("fc: input size mismatch");
  }
  return layer.weight * frame + layer.bias;
}

void PreluInPlace(Eigen::VectorXd& frame, const Eigen::VectorXd& slope) {
  if (frame.size() != slope.size()) {
    throw std::invalid_argument("prelu: slope size mismatch");
  }
  for (Eigen::Index i = 0; i < frame.size(); ++i) {
    if (frame[i] < 0.0) frame[i] *= slope[i];
  }
}

}  // namespace bae
