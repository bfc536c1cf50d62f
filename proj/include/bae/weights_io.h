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

#ifndef BAE_WEIGHTS_IO_H_
#define BAE_WEIGHTS_IO_H_

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bae/model.h"

namespace bae {

// Binary weight file, format version 1. All integers little-endian.
// See README.md for the full byte layout:
//   magic "BAEW" | u32 version | u8 variant | config block |
//   u32 tensor_count | tensors (u16 name_len + name, u8 dtype=0 (f32),
//   u8 rank, rank*u32 dims, raw f32 data)
// The loader validates the magic, version, config consistency, the exact
// tensor set the config requires (no missing, no extra, matching shapes),
// and that every value is finite. Each failure mode is a distinct error.

struct WeightsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadMagicError : WeightsError {
  using WeightsError::WeightsError;
};
struct VersionError : WeightsError {
  using WeightsError::WeightsError;
};
struct TruncatedFileError : WeightsError {
  using WeightsError::WeightsError;
};
struct MissingTensorError : WeightsError {
  using WeightsError::WeightsError;
};
struct UnexpectedTensorError : WeightsError {
  using WeightsError::WeightsError;
};
struct TensorShapeError : WeightsError {
  using WeightsError::WeightsError;
};
struct NonFiniteValueError : WeightsError {
  using WeightsError::WeightsError;
};

inline constexpr uint32_t kWeightFormatVersion = 1;

void SaveWeights(const ModelWeights& weights, const ModelConfig& config,
                 const std::string& path);

struct LoadedModel {
  ModelConfig config;
  ModelWeights weights;
};

LoadedModel LoadWeights(const std::string& path);

// Deterministic pseudo-random weights for testing, uniform in (-0.1, 0.1).
// Uses a fixed 64-bit SplitMix generator so identical seeds produce
// identical bytes on every platform.
ModelWeights GenerateTestWeights(const ModelConfig& config, uint64_t seed);

// All-zero weights (the identity configuration of the lite engine).
ModelWeights GenerateZeroWeights(const ModelConfig& config);

// The fixed generator behind GenerateTestWeights, exposed for tests.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t Next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform double in [0, 1).
  double NextUnit() { return (Next() >> 11) * 0x1.0p-53; }
};

}  // namespace bae

#endif  // BAE_WEIGHTS_IO_H_
