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

#ifndef BAE_NN_H_
#define BAE_NN_H_

#include <Eigen/Dense>

#include <vector>

namespace bae {

// Causal temporal convolution over per-frame channel vectors:
//   y[t] = sum_{tau=0..k-1} W[tau] * x[t - tau] + b
// with zeros before stream start. Grouped layers partition both channel
// sets into `groups` independent blocks. Weights are stored per tap as
// (out_channels x in_channels/groups) matrices; rows are grouped
// contiguously.
struct ConvLayer {
  int in_channels = 0;
  int out_channels = 0;
  int groups = 1;
  int kernel_time = 3;
  std::vector<Eigen::MatrixXd> taps;  // kernel_time matrices
  Eigen::VectorXd bias;
};

// Holds the previous kernel_time - 1 input frames of one conv layer.
struct ConvState {
  std::vector<Eigen::VectorXd> history;  // history[0] = x[t-1], ...

  void Init(const ConvLayer& layer);
  void Reset();
};

Eigen::VectorXd ConvStep(const ConvLayer& layer, ConvState& state,
                         const Eigen::VectorXd& frame);

// Grouped GRU. Each group g runs an independent GRU over its channel slice:
//   z = sigmoid(Wz x + Uz h + bz)
//   r = sigmoid(Wr x + Ur h + br)
//   c = tanh(Wh x + Uh (r .* h) + bh)
//   h' = (1 - z) .* h + z .* c
// Outputs are the new hidden states concatenated across groups.
struct GruLayer {
  int groups = 1;
  int in_channels = 0;
  int hidden_channels = 0;
  // Per group: gate input weights (hidden_g x in_g), recurrent weights
  // (hidden_g x hidden_g) and biases (hidden_g).
  std::vector<Eigen::MatrixXd> wz, wr, wh;
  std::vector<Eigen::MatrixXd> uz, ur, uh;
  std::vector<Eigen::VectorXd> bz, br, bh;

  int in_per_group() const { return in_channels / groups; }
  int hidden_per_group() const { return hidden_channels / groups; }
};

struct GruState {
  Eigen::VectorXd hidden;

  void Init(const GruLayer& layer);
  void Reset();
};

Eigen::VectorXd GruStep(const GruLayer& layer, GruState& state,
                        const Eigen::VectorXd& frame);

// Affine map per frame.
struct FcLayer {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

Eigen::VectorXd Fc(const FcLayer& layer, const Eigen::VectorXd& frame);

// PReLU with a per-channel negative slope.
void PreluInPlace(Eigen::VectorXd& frame, const Eigen::VectorXd& slope);

inline double Sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace bae

#endif  // BAE_NN_H_
