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

#ifndef BAE_MODEL_H_
#define BAE_MODEL_H_

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace bae {

enum class Variant : uint8_t {
  kLite = 0,  // magnitude stream only, flipped phase for synthesis
  kFull = 1,  // magnitude stream + complex residual stream
};

const char* VariantName(Variant v);

// Topology of the dual-stream extension network. `mi_*` fields describe the
// magnitude-inpainting stream, `pr_*` the phase-refinement stream (unused by
// the lite variant). Channel lists are per-layer output widths.
struct ModelConfig {
  Variant variant = Variant::kFull;
  int fft_size = 1536;
  int num_bins = 769;
  int erb_bands = 128;
  int kernel_time = 3;

  std::vector<int> mi_down_channels{128, 128, 64, 64};
  std::vector<int> mi_up_channels{64, 128, 128, 769};
  int mi_gru_groups = 4;
  int mi_gru_hidden = 256;

  int pr_proj_channels = 512;
  int pr_proj_groups = 2;
  std::vector<int> pr_down_channels{512, 128, 128, 64, 64};
  std::vector<int> pr_down_groups{2, 2, 2, 1, 1};
  std::vector<int> pr_up_channels{128, 128, 512};
  int pr_gru_groups = 4;
  int pr_gru_hidden = 256;

  static ModelConfig Defaults(Variant variant);

  // Throws std::invalid_argument on inconsistent shapes (divisibility,
  // empty lists, non-positive counts).
  void Validate() const;

  bool has_pr() const { return variant == Variant::kFull; }
};

enum class LayerKind { kConv, kGru, kFc, kDiagGate };

// One compute layer of the forward graph, as enumerated from a config.
// Drives weight generation, file validation, and complexity counting.
struct LayerInfo {
  LayerKind kind;
  std::string name;   // tensor name prefix, e.g. "mi.down.0"
  int in = 0;
  int out = 0;
  int groups = 1;
  int kernel = 1;     // conv taps
  bool has_prelu = false;

  uint64_t ParamCount() const;
  uint64_t MacsPerFrame() const;
};

// Layers in forward order. Lite configs enumerate only the mi.* layers.
std::vector<LayerInfo> EnumerateLayers(const ModelConfig& config);

struct TensorSpec {
  std::string name;
  std::vector<int> dims;

  uint64_t NumElements() const {
    uint64_t n = 1;
    for (int d : dims) n *= static_cast<uint64_t>(d);
    return n;
  }
};

// Every tensor the config requires, in canonical (file) order.
std::vector<TensorSpec> EnumerateTensors(const ModelConfig& config);

struct Tensor {
  std::vector<int> dims;
  std::vector<float> data;

  uint64_t NumElements() const { return data.size(); }
};

// Named tensor map covering every layer of a ModelConfig.
struct ModelWeights {
  std::map<std::string, Tensor> tensors;

  const Tensor& at(const std::string& name) const;
  uint64_t TotalElements() const;
};

}  // namespace bae

#endif  // BAE_MODEL_H_
