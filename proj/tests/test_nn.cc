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

#include <cmath>
#include <vector>

#include "bae/weights_io.h"
#include "doctest.h"

namespace bae {
namespace {

ConvLayer RandomConv(SplitMix64& rng, int in, int out, int groups,
                     int kernel = 3) {
  ConvLayer layer;
  layer.in_channels = in;
  layer.out_channels = out;
  layer.groups = groups;
  layer.kernel_time = kernel;
  layer.taps.assign(kernel, Eigen::MatrixXd::Zero(out, in / groups));
  for (int tau = 0; tau < kernel; ++tau) {
    for (int o = 0; o < out; ++o) {
      for (int i = 0; i < in / groups; ++i) {
        layer.taps[tau](o, i) = rng.NextUnit() * 2.0 - 1.0;
      }
    }
  }
  layer.bias = Eigen::VectorXd::Zero(out);
  for (int o = 0; o < out; ++o) layer.bias[o] = rng.NextUnit() - 0.5;
  return layer;
}

GruLayer RandomGru(SplitMix64& rng, int in, int hidden, int groups) {
  GruLayer layer;
  layer.groups = groups;
  layer.in_channels = in;
  layer.hidden_channels = hidden;
  const int in_g = in / groups;
  const int h_g = hidden / groups;
  auto mat = [&](int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m(r, c) = rng.NextUnit() * 2.0 - 1.0;
    }
    return m;
  };
  auto vec = [&](int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = rng.NextUnit() - 0.5;
    return v;
  };
  for (int g = 0; g < groups; ++g) {
    layer.wz.push_back(mat(h_g, in_g));
    layer.wr.push_back(mat(h_g, in_g));
    layer.wh.push_back(mat(h_g, in_g));
    layer.uz.push_back(mat(h_g, h_g));
    layer.ur.push_back(mat(h_g, h_g));
    layer.uh.push_back(mat(h_g, h_g));
    layer.bz.push_back(vec(h_g));
    layer.br.push_back(vec(h_g));
    layer.bh.push_back(vec(h_g));
  }
  return layer;
}

// Direct-summation oracle: triple loop over out channel, in channel, tap.
std::vector<Eigen::VectorXd> ConvOracle(
    const ConvLayer& layer, const std::vector<Eigen::VectorXd>& inputs) {
  const int out_g = layer.out_channels / layer.groups;
  const int in_g = layer.in_channels / layer.groups;
  std::vector<Eigen::VectorXd> outputs;
  for (size_t t = 0; t < inputs.size(); ++t) {
    Eigen::VectorXd y(layer.out_channels);
    for (int o = 0; o < layer.out_channels; ++o) {
      const int g = o / out_g;
      double acc = layer.bias[o];
      for (int i = 0; i < in_g; ++i) {
        for (int tau = 0; tau < layer.kernel_time; ++tau) {
          if (static_cast<int>(t) - tau < 0) continue;
          acc += layer.taps[tau](o, i) * inputs[t - tau][g * in_g + i];
        }
      }
      y[o] = acc;
    }
    outputs.push_back(y);
  }
  return outputs;
}

// Naive step-by-step re-implementation of the gate equations.
std::vector<Eigen::VectorXd> GruOracle(
    const GruLayer& layer, const std::vector<Eigen::VectorXd>& inputs) {
  const int in_g = layer.in_per_group();
  const int h_g = layer.hidden_per_group();
  std::vector<double> h(layer.hidden_channels, 0.0);
  std::vector<Eigen::VectorXd> outputs;
  for (const Eigen::VectorXd& x : inputs) {
    std::vector<double> h_next(layer.hidden_channels);
    for (int g = 0; g < layer.groups; ++g) {
      std::vector<double> z(h_g), r(h_g);
      for (int i = 0; i < h_g; ++i) {
        double z_acc = layer.bz[g][i];
        double r_acc = layer.br[g][i];
        for (int c = 0; c < in_g; ++c) {
          z_acc += layer.wz[g](i, c) * x[g * in_g + c];
          r_acc += layer.wr[g](i, c) * x[g * in_g + c];
        }
        for (int c = 0; c < h_g; ++c) {
          z_acc += layer.uz[g](i, c) * h[g * h_g + c];
          r_acc += layer.ur[g](i, c) * h[g * h_g + c];
        }
        z[i] = 1.0 / (1.0 + std::exp(-z_acc));
        r[i] = 1.0 / (1.0 + std::exp(-r_acc));
      }
      for (int i = 0; i < h_g; ++i) {
        double c_acc = layer.bh[g][i];
        for (int c = 0; c < in_g; ++c) {
          c_acc += layer.wh[g](i, c) * x[g * in_g + c];
        }
        for (int c = 0; c < h_g; ++c) {
          c_acc += layer.uh[g](i, c) * (r[c] * h[g * h_g + c]);
        }
        h_next[g * h_g + i] =
            (1.0 - z[i]) * h[g * h_g + i] + z[i] * std::tanh(c_acc);
      }
    }
    h = h_next;
    Eigen::VectorXd out(layer.hidden_channels);
    for (int i = 0; i < layer.hidden_channels; ++i) out[i] = h[i];
    outputs.push_back(out);
  }
  return outputs;
}

TEST_CASE("zero conv weights produce zero output") {
  ConvLayer layer;
  layer.in_channels = 4;
  layer.out_channels = 4;
  layer.groups = 1;
  layer.taps.assign(3, Eigen::MatrixXd::Zero(4, 4));
  layer.bias = Eigen::VectorXd::Zero(4);
  ConvState state;
  state.Init(layer);
  SplitMix64 rng(1);
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.NextUnit();
    CHECK(ConvStep(layer, state, x).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("identity tap passes the current frame through") {
  ConvLayer layer;
  layer.in_channels = 1;
  layer.out_channels = 1;
  layer.groups = 1;
  layer.taps = {Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Zero(1, 1),
                Eigen::MatrixXd::Zero(1, 1)};
  layer.bias = Eigen::VectorXd::Zero(1);
  ConvState state;
  state.Init(layer);
  for (double v : {0.5, -1.25, 3.75, 0.0}) {
    Eigen::VectorXd x(1);
    x[0] = v;
    CHECK(ConvStep(layer, state, x)[0] == v);
  }
}

TEST_CASE("conv streaming matches the direct-summation oracle") {
  SplitMix64 rng(42);
  const int configs[][3] = {{4, 4, 2}, {6, 3, 3}, {2, 8, 1}, {8, 8, 4}};
  for (const auto& cfg : configs) {
    const ConvLayer layer = RandomConv(rng, cfg[0], cfg[1], cfg[2]);
    std::vector<Eigen::VectorXd> inputs;
    for (int t = 0; t < 10; ++t) {
      Eigen::VectorXd x(cfg[0]);
      for (int i = 0; i < cfg[0]; ++i) x[i] = rng.NextUnit() * 2.0 - 1.0;
      inputs.push_back(x);
    }
    const auto expected = ConvOracle(layer, inputs);
    ConvState state;
    state.Init(layer);
    for (size_t t = 0; t < inputs.size(); ++t) {
      const Eigen::VectorXd y = ConvStep(layer, state, inputs[t]);
      CHECK((y - expected[t]).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("conv step is linear in its input") {
  SplitMix64 rng(43);
  const ConvLayer layer = RandomConv(rng, 6, 4, 2);
  ConvLayer no_bias = layer;
  no_bias.bias.setZero();
  std::vector<Eigen::VectorXd> a, b, mix;
  for (int t = 0; t < 6; ++t) {
    Eigen::VectorXd xa(6), xb(6);
    for (int i = 0; i < 6; ++i) {
      xa[i] = rng.NextUnit() - 0.5;
      xb[i] = rng.NextUnit() - 0.5;
    }
    a.push_back(xa);
    b.push_back(xb);
    mix.push_back(2.0 * xa - 3.0 * xb);
  }
  ConvState sa, sb, sm;
  sa.Init(no_bias);
  sb.Init(no_bias);
  sm.Init(no_bias);
  for (int t = 0; t < 6; ++t) {
    const Eigen::VectorXd ya = ConvStep(no_bias, sa, a[t]);
    const Eigen::VectorXd yb = ConvStep(no_bias, sb, b[t]);
    const Eigen::VectorXd ym = ConvStep(no_bias, sm, mix[t]);
    CHECK((ym - (2.0 * ya - 3.0 * yb)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("reset and replay reproduce identical outputs") {
  SplitMix64 rng(44);
  const ConvLayer layer = RandomConv(rng, 4, 4, 2);
  std::vector<Eigen::VectorXd> inputs;
  for (int t = 0; t < 8; ++t) {
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.NextUnit();
    inputs.push_back(x);
  }
  ConvState state;
  state.Init(layer);
  std::vector<Eigen::VectorXd> first;
  for (const auto& x : inputs) first.push_back(ConvStep(layer, state, x));
  state.Reset();
  for (size_t t = 0; t < inputs.size(); ++t) {
    const Eigen::VectorXd y = ConvStep(layer, state, inputs[t]);
    CHECK((y - first[t]).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("conv step rejects mismatched channels") {
  SplitMix64 rng(45);
  const ConvLayer layer = RandomConv(rng, 4, 4, 2);
  ConvState state;
  state.Init(layer);
  CHECK_THROWS_AS(ConvStep(layer, state, Eigen::VectorXd::Zero(3)),
                  std::invalid_argument);
}

TEST_CASE("zero-weight gru emits zeros from a zero state") {
  GruLayer layer;
  layer.groups = 2;
  layer.in_channels = 4;
  layer.hidden_channels = 4;
  for (int g = 0; g < 2; ++g) {
    layer.wz.push_back(Eigen::MatrixXd::Zero(2, 2));
    layer.wr.push_back(Eigen::MatrixXd::Zero(2, 2));
    layer.wh.push_back(Eigen::MatrixXd::Zero(2, 2));
    layer.uz.push_back(Eigen::MatrixXd::Zero(2, 2));
    layer.ur.push_back(Eigen::MatrixXd::Zero(2, 2));
    layer.uh.push_back(Eigen::MatrixXd::Zero(2, 2));
    layer.bz.push_back(Eigen::VectorXd::Zero(2));
    layer.br.push_back(Eigen::VectorXd::Zero(2));
    layer.bh.push_back(Eigen::VectorXd::Zero(2));
  }
  GruState state;
  state.Init(layer);
  SplitMix64 rng(2);
  for (int t = 0; t < 4; ++t) {
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.NextUnit();
    CHECK(GruStep(layer, state, x).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("gru streaming matches the naive oracle") {
  SplitMix64 rng(46);
  const GruLayer layer = RandomGru(rng, 4, 6, 2);
  std::vector<Eigen::VectorXd> inputs;
  for (int t = 0; t < 5; ++t) {
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.NextUnit() * 2.0 - 1.0;
    inputs.push_back(x);
  }
  const auto expected = GruOracle(layer, inputs);
  GruState state;
  state.Init(layer);
  for (size_t t = 0; t < inputs.size(); ++t) {
    const Eigen::VectorXd y = GruStep(layer, state, inputs[t]);
    CHECK((y - expected[t]).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("one group equals a plain full-width gru") {
  SplitMix64 rng(47);
  const GruLayer grouped = RandomGru(rng, 6, 6, 1);
  std::vector<Eigen::VectorXd> inputs;
  for (int t = 0; t < 4; ++t) {
    Eigen::VectorXd x(6);
    for (int i = 0; i < 6; ++i) x[i] = rng.NextUnit() - 0.5;
    inputs.push_back(x);
  }
  // The oracle with groups=1 is exactly the textbook full-vector update.
  const auto expected = GruOracle(grouped, inputs);
  GruState state;
  state.Init(grouped);
  for (size_t t = 0; t < inputs.size(); ++t) {
    CHECK((GruStep(grouped, state, inputs[t]) - expected[t])
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("fc identity, bias and hand-computed cases") {
  FcLayer identity;
  identity.weight = Eigen::MatrixXd::Identity(3, 3);
  identity.bias = Eigen::VectorXd::Zero(3);
  Eigen::VectorXd x(3);
  x << 1.5, -2.0, 0.25;
  CHECK((Fc(identity, x) - x).cwiseAbs().maxCoeff() == 0.0);

  FcLayer zero;
  zero.weight = Eigen::MatrixXd::Zero(3, 3);
  zero.bias = Eigen::VectorXd::Ones(3) * 0.7;
  CHECK((Fc(zero, x) - zero.bias).cwiseAbs().maxCoeff() == 0.0);

  FcLayer m;
  m.weight = Eigen::MatrixXd(3, 3);
  m.weight << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  m.bias = Eigen::VectorXd(3);
  m.bias << 0.5, -0.5, 1.0;
  // Hand multiplication: rows dot x plus bias.
  Eigen::VectorXd expected(3);
  expected << 1 * 1.5 + 2 * -2.0 + 3 * 0.25 + 0.5,
      4 * 1.5 + 5 * -2.0 + 6 * 0.25 - 0.5,
      7 * 1.5 + 8 * -2.0 + 9 * 0.25 + 1.0;
  CHECK((Fc(m, x) - expected).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(Fc(m, Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("prelu applies the per-channel slope to negatives only") {
  Eigen::VectorXd x(4);
  x << 1.0, -1.0, -2.0, 0.0;
  Eigen::VectorXd slope(4);
  slope << 0.5, 0.5, 0.25, 0.9;
  PreluInPlace(x, slope);
  CHECK(x[0] == 1.0);
  CHECK(x[1] == -0.5);
  CHECK(x[2] == -0.5);
  CHECK(x[3] == 0.0);
}

}  // namespace
}  // namespace bae
