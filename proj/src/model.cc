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

#include "bae/model.h"

#include <stdexcept>

namespace bae {

const char* VariantName(Variant v) {
  return v == Variant::kLite ? "lite" : "full";
}

ModelConfig ModelConfig::Defaults(Variant variant) {
  ModelConfig config;
  config.variant = variant;
  return config;
}

void ModelConfig::Validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("config: ") + what);
  };
  require(fft_size > 0 && fft_size % 2 == 0, "fft_size must be even");
  require(num_bins == fft_size / 2 + 1, "num_bins must be fft_size/2 + 1");
  require(erb_bands > 1 && erb_bands < num_bins, "erb_bands out of range");
  require(kernel_time >= 1, "kernel_time must be >= 1");
  require(!mi_down_channels.empty() && !mi_up_channels.empty(),
          "mi channel lists must be non-empty");
  for (int c : mi_down_channels) require(c > 0, "mi down channels positive");
  for (int c : mi_up_channels) require(c > 0, "mi up channels positive");
  require(mi_up_channels.back() == num_bins,
          "last mi up layer must span the full band");
  require(mi_gru_groups > 0, "mi_gru_groups positive");
  require(mi_down_channels.back() % mi_gru_groups == 0,
          "gru input not divisible by groups");
  require(mi_gru_hidden % mi_gru_groups == 0,
          "gru hidden not divisible by groups");
  if (has_pr()) {
    require(pr_down_channels.size() == pr_down_groups.size(),
            "pr down channel/group lists must match");
    require(!pr_down_channels.empty() && !pr_up_channels.empty(),
            "pr channel lists must be non-empty");
    require(pr_proj_channels > 0 && pr_proj_groups > 0, "pr projection dims");
    require(2 * num_bins % pr_proj_groups == 0,
            "stacked input not divisible by projection groups");
    int prev = pr_proj_channels;
    for (size_t i = 0; i < pr_down_channels.size(); ++i) {
      require(pr_down_channels[i] > 0 && pr_down_groups[i] > 0,
              "pr down dims positive");
      require(prev % pr_down_groups[i] == 0 &&
                  pr_down_channels[i] % pr_down_groups[i] == 0,
              "pr down channels not divisible by groups");
      prev = pr_down_channels[i];
    }
    require(pr_gru_groups > 0 && prev % pr_gru_groups == 0,
            "pr gru input not divisible by groups");
    require(pr_gru_hidden % pr_gru_groups == 0,
            "pr gru hidden not divisible by groups");
    require(mi_down_channels.size() + 1 == pr_down_channels.size(),
            "interaction alignment needs one more pr down layer than mi");
    for (size_t i = 0; i < mi_down_channels.size(); ++i) {
      require(mi_down_channels[i] == pr_down_channels[i + 1],
              "interaction channel mismatch between streams");
    }
  }
}

uint64_t LayerInfo::ParamCount() const {
  uint64_t params = 0;
  switch (kind) {
    case LayerKind::kConv:
      params = static_cast<uint64_t>(out) * (in / groups) * kernel + out;
      break;
    case LayerKind::kGru: {
      const uint64_t in_g = in / groups;
      const uint64_t h_g = out / groups;
      params = static_cast<uint64_t>(groups) * 3 *
               (h_g * in_g + h_g * h_g + h_g);
      break;
    }
    case LayerKind::kFc:
      params = static_cast<uint64_t>(out) * in + out;
      break;
    case LayerKind::kDiagGate:
      params = 2ull * out;  // per-bin scale + bias
      break;
  }
  if (has_prelu) params += out;
  return params;
}

uint64_t LayerInfo::MacsPerFrame() const {
  uint64_t macs = 0;
  switch (kind) {
    case LayerKind::kConv:
      macs = static_cast<uint64_t>(out) * (in / groups) * kernel;
      break;
    case LayerKind::kGru: {
      const uint64_t in_g = in / groups;
      const uint64_t h_g = out / groups;
      macs = static_cast<uint64_t>(groups) * 3 * (in_g * h_g + h_g * h_g);
      break;
    }
    case LayerKind::kFc:
      macs = static_cast<uint64_t>(out) * in;
      break;
    case LayerKind::kDiagGate:
      macs = static_cast<uint64_t>(out);  // one multiply per bin
      break;
  }
  if (has_prelu) macs += out;
  return macs;
}

std::vector<LayerInfo> EnumerateLayers(const ModelConfig& config) {
  std::vector<LayerInfo> layers;
  auto conv = [&](const std::string& name, int in, int out, int groups,
                  bool prelu) {
    layers.push_back({LayerKind::kConv, name, in, out, groups,
                      config.kernel_time, prelu});
  };
  auto gru = [&](const std::string& name, int in, int hidden, int groups) {
    layers.push_back({LayerKind::kGru, name, in, hidden, groups, 1, false});
  };

  int prev = config.erb_bands;
  for (size_t i = 0; i < config.mi_down_channels.size(); ++i) {
    conv("mi.down." + std::to_string(i), prev, config.mi_down_channels[i], 1,
         true);
    prev = config.mi_down_channels[i];
  }
  gru("mi.gru.0", prev, config.mi_gru_hidden, config.mi_gru_groups);
  gru("mi.gru.1", config.mi_gru_hidden, config.mi_gru_hidden,
      config.mi_gru_groups);
  prev = config.mi_gru_hidden;
  for (size_t i = 0; i < config.mi_up_channels.size(); ++i) {
    const bool last = i + 1 == config.mi_up_channels.size();
    conv("mi.up." + std::to_string(i), prev, config.mi_up_channels[i], 1,
         !last);
    prev = config.mi_up_channels[i];
  }
  // Band-guided gate: two per-bin sigmoid paths and the mask multiply.
  layers.push_back({LayerKind::kDiagGate, "mi.bgm.lr", config.num_bins,
                    config.num_bins, 1, 1, false});
  layers.push_back({LayerKind::kDiagGate, "mi.bgm.up", config.num_bins,
                    config.num_bins, 1, 1, false});

  if (!config.has_pr()) return layers;

  conv("pr.proj", 2 * config.num_bins, config.pr_proj_channels,
       config.pr_proj_groups, true);
  prev = config.pr_proj_channels;
  for (size_t i = 0; i < config.pr_down_channels.size(); ++i) {
    conv("pr.down." + std::to_string(i), prev, config.pr_down_channels[i],
         config.pr_down_groups[i], true);
    prev = config.pr_down_channels[i];
    if (i >= 1) {
      // Gated injection of the magnitude-stream feature at matching width.
      layers.push_back({LayerKind::kDiagGate,
                        "pr.inter." + std::to_string(i - 1), prev, prev, 1, 1,
                        false});
    }
  }
  gru("pr.gru.0", prev, config.pr_gru_hidden, config.pr_gru_groups);
  gru("pr.gru.1", config.pr_gru_hidden, config.pr_gru_hidden,
      config.pr_gru_groups);
  prev = config.pr_gru_hidden;
  for (size_t i = 0; i < config.pr_up_channels.size(); ++i) {
    conv("pr.up." + std::to_string(i), prev, config.pr_up_channels[i], 1,
         true);
    prev = config.pr_up_channels[i];
  }
  layers.push_back(
      {LayerKind::kFc, "pr.head_re", prev, config.num_bins, 1, 1, false});
  layers.push_back(
      {LayerKind::kFc, "pr.head_im", prev, config.num_bins, 1, 1, false});
  return layers;
}

std::vector<TensorSpec> EnumerateTensors(const ModelConfig& config) {
  std::vector<TensorSpec> specs;
  for (const LayerInfo& layer : EnumerateLayers(config)) {
    switch (layer.kind) {
      case LayerKind::kConv:
        specs.push_back({layer.name + ".w",
                         {layer.out, layer.in / layer.groups, layer.kernel}});
        specs.push_back({layer.name + ".b", {layer.out}});
        break;
      case LayerKind::kGru: {
        const int in_g = layer.in / layer.groups;
        const int h_g = layer.out / layer.groups;
        for (const char* gate : {"z", "r", "h"}) {
          specs.push_back({layer.name + ".w" + gate,
                           {layer.groups, h_g, in_g}});
          specs.push_back({layer.name + ".u" + gate,
                           {layer.groups, h_g, h_g}});
          specs.push_back({layer.name + ".b" + gate, {layer.groups, h_g}});
        }
        break;
      }
      case LayerKind::kFc:
        specs.push_back({layer.name + ".w", {layer.out, layer.in}});
        specs.push_back({layer.name + ".b", {layer.out}});
        break;
      case LayerKind::kDiagGate:
        specs.push_back({layer.name + ".w", {layer.out}});
        specs.push_back({layer.name + ".b", {layer.out}});
        break;
    }
    if (layer.has_prelu) {
      specs.push_back({layer.name + ".alpha", {layer.out}});
    }
  }
  return specs;
}

const Tensor& ModelWeights::at(const std::string& name) const {
  auto it = tensors.find(name);
  if (it == tensors.end()) {
    throw std::out_of_range("weights: missing tensor " + name);
  }
  return it->second;
}

uint64_t ModelWeights::TotalElements() const {
  uint64_t total = 0;
  for (const auto& [name, tensor] : tensors) total += tensor.NumElements();
  return total;
}

}  // namespace bae
