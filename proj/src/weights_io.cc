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

#include "bae/weights_io.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <vector>

namespace bae {
namespace {

constexpr char kMagic[4] = {'B', 'A', 'E', 'W'};
constexpr uint8_t kDtypeF32 = 0;

class Writer {
 public:
  void U8(uint8_t v) { bytes_.push_back(v); }
  void U16(uint16_t v) {
    U8(static_cast<uint8_t>(v & 0xff));
    U8(static_cast<uint8_t>(v >> 8));
  }
  void U32(uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
  }
  void Raw(const void* data, size_t len) {
    const uint8_t* p = static_cast<const uint8_t*>(data);
    bytes_.insert(bytes_.end(), p, p + len);
  }
  void IntList(const std::vector<int>& v) {
    U32(static_cast<uint32_t>(v.size()));
    for (int x : v) U32(static_cast<uint32_t>(x));
  }
  const std::vector<uint8_t>& bytes() const { return bytes_; }

 private:
  std::vector<uint8_t> bytes_;
};

class Reader {
 public:
  Reader(const uint8_t* data, size_t size) : data_(data), size_(size) {}

  uint8_t U8() { return *Take(1); }
  uint16_t U16() {
    const uint8_t* p = Take(2);
    return static_cast<uint16_t>(p[0] | (p[1] << 8));
  }
  uint32_t U32() {
    const uint8_t* p = Take(4);
    return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
           (static_cast<uint32_t>(p[2]) << 16) |
           (static_cast<uint32_t>(p[3]) << 24);
  }
  std::string String(size_t len) {
    const uint8_t* p = Take(len);
    return std::string(reinterpret_cast<const char*>(p), len);
  }
  void Floats(float* out, size_t count) {
    const uint8_t* p = Take(count * sizeof(float));
    std::memcpy(out, p, count * sizeof(float));
  }
  void Raw(void* out, size_t len) { std::memcpy(out, Take(len), len); }
  std::vector<int> IntList() {
    const uint32_t n = U32();
    if (n > 1024) throw TruncatedFileError("weights: implausible list length");
    std::vector<int> v(n);
    for (uint32_t i = 0; i < n; ++i) v[i] = static_cast<int>(U32());
    return v;
  }
  bool AtEnd() const { return pos_ == size_; }

 private:
  const uint8_t* Take(size_t len) {
    if (pos_ + len > size_) {
      throw TruncatedFileError("weights: file truncated at offset " +
                               std::to_string(pos_));
    }
    const uint8_t* p = data_ + pos_;
    pos_ += len;
    return p;
  }

  const uint8_t* data_;
  size_t size_;
  size_t pos_ = 0;
};

void WriteConfig(Writer& w, const ModelConfig& c) {
  w.U32(static_cast<uint32_t>(c.fft_size));
  w.U32(static_cast<uint32_t>(c.num_bins));
  w.U32(static_cast<uint32_t>(c.erb_bands));
  w.U32(static_cast<uint32_t>(c.kernel_time));
  w.IntList(c.mi_down_channels);
  w.IntList(c.mi_up_channels);
  w.U32(static_cast<uint32_t>(c.mi_gru_groups));
  w.U32(static_cast<uint32_t>(c.mi_gru_hidden));
  w.U32(static_cast<uint32_t>(c.pr_proj_channels));
  w.U32(static_cast<uint32_t>(c.pr_proj_groups));
  w.IntList(c.pr_down_channels);
  w.IntList(c.pr_down_groups);
  w.IntList(c.pr_up_channels);
  w.U32(static_cast<uint32_t>(c.pr_gru_groups));
  w.U32(static_cast<uint32_t>(c.pr_gru_hidden));
}

ModelConfig ReadConfig(Reader& r, Variant variant) {
  ModelConfig c;
  c.variant = variant;
  c.fft_size = static_cast<int>(r.U32());
  c.num_bins = static_cast<int>(r.U32());
  c.erb_bands = static_cast<int>(r.U32());
  c.kernel_time = static_cast<int>(r.U32());
  c.mi_down_channels = r.IntList();
  c.mi_up_channels = r.IntList();
  c.mi_gru_groups = static_cast<int>(r.U32());
  c.mi_gru_hidden = static_cast<int>(r.U32());
  c.pr_proj_channels = static_cast<int>(r.U32());
  c.pr_proj_groups = static_cast<int>(r.U32());
  c.pr_down_channels = r.IntList();
  c.pr_down_groups = r.IntList();
  c.pr_up_channels = r.IntList();
  c.pr_gru_groups = static_cast<int>(r.U32());
  c.pr_gru_hidden = static_cast<int>(r.U32());
  return c;
}

}  // namespace

void SaveWeights(const ModelWeights& weights, const ModelConfig& config,
                 const std::string& path) {
  config.Validate();
  const std::vector<TensorSpec> specs = EnumerateTensors(config);
  for (const TensorSpec& spec : specs) {
    const Tensor& t = weights.at(spec.name);  // throws if missing
    if (t.dims != spec.dims) {
      throw TensorShapeError("weights: tensor " + spec.name +
                             " has unexpected shape");
    }
  }

  Writer w;
  w.Raw(kMagic, 4);
  w.U32(kWeightFormatVersion);
  w.U8(static_cast<uint8_t>(config.variant));
  WriteConfig(w, config);
  w.U32(static_cast<uint32_t>(specs.size()));
  for (const TensorSpec& spec : specs) {
    const Tensor& t = weights.at(spec.name);
    w.U16(static_cast<uint16_t>(spec.name.size()));
    w.Raw(spec.name.data(), spec.name.size());
    w.U8(kDtypeF32);
    w.U8(static_cast<uint8_t>(t.dims.size()));
    for (int d : t.dims) w.U32(static_cast<uint32_t>(d));
    w.Raw(t.data.data(), t.data.size() * sizeof(float));
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) throw WeightsError("weights: cannot open " + path);
  file.write(reinterpret_cast<const char*>(w.bytes().data()),
             static_cast<std::streamsize>(w.bytes().size()));
  if (!file) throw WeightsError("weights: write failed for " + path);
}

LoadedModel LoadWeights(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw WeightsError("weights: cannot open " + path);
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(file)),
                            std::istreambuf_iterator<char>());

  Reader r(data.data(), data.size());
  char magic[4];
  r.Raw(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) {
    throw BadMagicError("weights: bad magic in " + path);
  }
  const uint32_t version = r.U32();
  if (version != kWeightFormatVersion) {
    throw VersionError("weights: unsupported format version " +
                       std::to_string(version));
  }
  const uint8_t variant_byte = r.U8();
  if (variant_byte > 1) {
    throw WeightsError("weights: unknown variant flag " +
                       std::to_string(variant_byte));
  }

  LoadedModel model;
  model.config = ReadConfig(r, static_cast<Variant>(variant_byte));
  try {
    model.config.Validate();
  } catch (const std::invalid_argument& e) {
    throw WeightsError(std::string("weights: invalid config block: ") +
                       e.what());
  }

  const uint32_t tensor_count = r.U32();
  for (uint32_t i = 0; i < tensor_count; ++i) {
    const uint16_t name_len = r.U16();
    const std::string name = r.String(name_len);
    const uint8_t dtype = r.U8();
    if (dtype != kDtypeF32) {
      throw WeightsError("weights: tensor " + name + " has unknown dtype");
    }
    const uint8_t rank = r.U8();
    Tensor t;
    uint64_t count = 1;
    for (int d = 0; d < rank; ++d) {
      const uint32_t dim = r.U32();
      t.dims.push_back(static_cast<int>(dim));
      count *= dim;
    }
    if (count > (1ull << 30)) {
      throw TruncatedFileError("weights: implausible tensor size for " + name);
    }
    t.data.resize(count);
    r.Floats(t.data.data(), count);
    if (!model.weights.tensors.emplace(name, std::move(t)).second) {
      throw UnexpectedTensorError("weights: duplicate tensor " + name);
    }
  }

  // The config decides exactly which tensors must exist.
  std::set<std::string> expected;
  for (const TensorSpec& spec : EnumerateTensors(model.config)) {
    expected.insert(spec.name);
    auto it = model.weights.tensors.find(spec.name);
    if (it == model.weights.tensors.end()) {
      throw MissingTensorError("weights: missing tensor " + spec.name);
    }
    if (it->second.dims != spec.dims) {
      throw TensorShapeError("weights: tensor " + spec.name +
                             " shape mismatch");
    }
  }
  for (const auto& [name, tensor] : model.weights.tensors) {
    if (expected.find(name) == expected.end()) {
      throw UnexpectedTensorError("weights: unexpected tensor " + name);
    }
    for (float v : tensor.data) {
      if (!std::isfinite(v)) {
        throw NonFiniteValueError("weights: non-finite value in tensor " +
                                  name);
      }
    }
  }
  return model;
}

ModelWeights GenerateTestWeights(const ModelConfig& config, uint64_t seed) {
  config.Validate();
  SplitMix64 rng(seed);
  ModelWeights weights;
  for (const TensorSpec& spec : EnumerateTensors(config)) {
    Tensor t;
    t.dims = spec.dims;
    t.data.resize(spec.NumElements());
    for (float& v : t.data) {
      v = static_cast<float>(rng.NextUnit() * 0.2 - 0.1);
    }
    weights.tensors.emplace(spec.name, std::move(t));
  }
  return weights;
}

ModelWeights GenerateZeroWeights(const ModelConfig& config) {
  config.Validate();
  ModelWeights weights;
  for (const TensorSpec& spec : EnumerateTensors(config)) {
    Tensor t;
    t.dims = spec.dims;
    t.data.assign(spec.NumElements(), 0.0f);
    weights.tensors.emplace(spec.name, std::move(t));
  }
  return weights;
}

}  // namespace bae
