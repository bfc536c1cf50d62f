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

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <vector>

#include "bae/complexity.h"
#include "bae/engine.h"
#include "doctest.h"

namespace bae {
namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::vector<char> ReadAll(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  return std::vector<char>((std::istreambuf_iterator<char>(f)),
                           std::istreambuf_iterator<char>());
}

void WriteAll(const std::string& path, const std::vector<char>& bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

size_t FindBytes(const std::vector<char>& haystack, const std::string& s) {
  for (size_t i = 0; i + s.size() <= haystack.size(); ++i) {
    if (std::memcmp(haystack.data() + i, s.data(), s.size()) == 0) return i;
  }
  return std::string::npos;
}

// The tensor-count u32 sits 6 bytes before the first record's name (u32
// count, then the record's u16 name length).
size_t CountFieldPos(const std::vector<char>& bytes,
                     const std::string& first_tensor_name) {
  const size_t name_pos = FindBytes(bytes, first_tensor_name);
  REQUIRE(name_pos != std::string::npos);
  REQUIRE(name_pos >= 6);
  return name_pos - 2 - 4;
}

void PatchCount(std::vector<char>& bytes, size_t pos, int delta) {
  uint32_t count;
  std::memcpy(&count, bytes.data() + pos, 4);
  count = static_cast<uint32_t>(static_cast<int>(count) + delta);
  std::memcpy(bytes.data() + pos, &count, 4);
}

TEST_CASE("save and load round-trip bit-exactly") {
  const ModelConfig config = ModelConfig::Defaults(Variant::kFull);
  const ModelWeights weights = GenerateTestWeights(config, 321);
  const std::string path = TempPath("bae_roundtrip.baew");
  SaveWeights(weights, config, path);

  const LoadedModel loaded = LoadWeights(path);
  CHECK(loaded.config.variant == Variant::kFull);
  CHECK(loaded.config.mi_down_channels == config.mi_down_channels);
  CHECK(loaded.config.pr_down_groups == config.pr_down_groups);
  REQUIRE(loaded.weights.tensors.size() == weights.tensors.size());
  for (const auto& [name, tensor] : weights.tensors) {
    const Tensor& got = loaded.weights.at(name);
    CHECK(got.dims == tensor.dims);
    REQUIRE(got.data.size() == tensor.data.size());
    CHECK(std::memcmp(got.data.data(), tensor.data.data(),
                      tensor.data.size() * sizeof(float)) == 0);
  }

  // Re-saving the loaded model reproduces the same bytes.
  const std::string path2 = TempPath("bae_roundtrip2.baew");
  SaveWeights(loaded.weights, loaded.config, path2);
  CHECK(ReadAll(path) == ReadAll(path2));
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("loader rejects each malformed-file class with a distinct error") {
  const ModelConfig config = ModelConfig::Defaults(Variant::kLite);
  const ModelWeights weights = GenerateTestWeights(config, 7);
  const std::string path = TempPath("bae_malformed.baew");
  SaveWeights(weights, config, path);
  const std::vector<char> good = ReadAll(path);

  SUBCASE("bad magic") {
    std::vector<char> bad = good;
    bad[0] = 'X';
    WriteAll(path, bad);
    CHECK_THROWS_AS(LoadWeights(path), BadMagicError);
  }
  SUBCASE("version mismatch") {
    std::vector<char> bad = good;
    bad[4] = 99;
    WriteAll(path, bad);
    CHECK_THROWS_AS(LoadWeights(path), VersionError);
  }
  SUBCASE("truncated file") {
    std::vector<char> bad(good.begin(), good.begin() + good.size() / 2);
    WriteAll(path, bad);
    CHECK_THROWS_AS(LoadWeights(path), TruncatedFileError);
  }
  SUBCASE("tensor with a NaN names the tensor") {
    ModelWeights poisoned = weights;
    poisoned.tensors["mi.down.2.w"].data[10] =
        std::numeric_limits<float>::quiet_NaN();
    SaveWeights(poisoned, config, path);
    try {
      LoadWeights(path);
      FAIL("expected NonFiniteValueError");
    } catch (const NonFiniteValueError& e) {
      CHECK(std::string(e.what()).find("mi.down.2.w") != std::string::npos);
    }
  }
  SUBCASE("missing tensor") {
    // Drop the final record ("mi.bgm.up.b" in canonical order) and patch
    // the tensor count so the table still parses.
    std::vector<char> bad = good;
    const size_t record_pos = FindBytes(bad, "mi.bgm.up.b") - 2;
    bad.resize(record_pos);
    PatchCount(bad, CountFieldPos(bad, "mi.down.0.w"), -1);
    WriteAll(path, bad);
    CHECK_THROWS_AS(LoadWeights(path), MissingTensorError);
  }
  SUBCASE("unexpected extra tensor") {
    std::vector<char> bad = good;
    const std::string name = "zz.bogus";
    bad.push_back(static_cast<char>(name.size()));
    bad.push_back(0);
    bad.insert(bad.end(), name.begin(), name.end());
    bad.push_back(0);  // dtype f32
    bad.push_back(1);  // rank 1
    const uint32_t dim = 2;
    bad.insert(bad.end(), reinterpret_cast<const char*>(&dim),
               reinterpret_cast<const char*>(&dim) + 4);
    const float values[2] = {1.0f, 2.0f};
    bad.insert(bad.end(), reinterpret_cast<const char*>(values),
               reinterpret_cast<const char*>(values) + 8);
    PatchCount(bad, CountFieldPos(bad, "mi.down.0.w"), +1);
    WriteAll(path, bad);
    CHECK_THROWS_AS(LoadWeights(path), UnexpectedTensorError);
  }
  SUBCASE("shape mismatch on load") {
    // Grow a bias record's dim from 769 to 768 and shrink the payload.
    std::vector<char> bad = good;
    const size_t name_pos = FindBytes(bad, "mi.bgm.up.b");
    const size_t dim_pos = name_pos + std::string("mi.bgm.up.b").size() + 2;
    uint32_t dim;
    std::memcpy(&dim, bad.data() + dim_pos, 4);
    REQUIRE(dim == 769);
    dim = 768;
    std::memcpy(bad.data() + dim_pos, &dim, 4);
    bad.resize(bad.size() - sizeof(float));  // keep payload consistent
    WriteAll(path, bad);
    CHECK_THROWS_AS(LoadWeights(path), TensorShapeError);
  }
  std::remove(path.c_str());
}

TEST_CASE("save refuses inconsistent in-memory weights") {
  const ModelConfig config = ModelConfig::Defaults(Variant::kLite);
  const std::string path = TempPath("bae_badsave.baew");
  SUBCASE("missing tensor") {
    ModelWeights partial = GenerateTestWeights(config, 7);
    partial.tensors.erase("mi.bgm.up.b");
    CHECK_THROWS_AS(SaveWeights(partial, config, path), std::out_of_range);
  }
  SUBCASE("wrong shape") {
    ModelWeights weights = GenerateTestWeights(config, 8);
    Tensor& t = weights.tensors["mi.up.0.b"];
    t.dims = {32};
    t.data.resize(32);
    CHECK_THROWS_AS(SaveWeights(weights, config, path), TensorShapeError);
  }
  std::remove(path.c_str());
}

TEST_CASE("generator is deterministic per seed") {
  const ModelConfig config = ModelConfig::Defaults(Variant::kLite);
  const ModelWeights a = GenerateTestWeights(config, 42);
  const ModelWeights b = GenerateTestWeights(config, 42);
  const ModelWeights c = GenerateTestWeights(config, 43);
  bool same_ab = true, same_ac = true;
  for (const auto& [name, tensor] : a.tensors) {
    same_ab = same_ab && std::memcmp(tensor.data.data(),
                                     b.at(name).data.data(),
                                     tensor.data.size() * 4) == 0;
    same_ac = same_ac && std::memcmp(tensor.data.data(),
                                     c.at(name).data.data(),
                                     tensor.data.size() * 4) == 0;
  }
  CHECK(same_ab);
  CHECK(!same_ac);
  for (const auto& [name, tensor] : a.tensors) {
    for (float v : tensor.data) {
      CHECK(v > -0.1f);
      CHECK(v < 0.1f);
    }
  }
}

TEST_CASE("generated element count matches the analytical parameter count") {
  for (const Variant variant : {Variant::kLite, Variant::kFull}) {
    const ModelConfig config = ModelConfig::Defaults(variant);
    const ModelWeights weights = GenerateTestWeights(config, 0);
    CHECK(weights.TotalElements() == CountComplexity(config).params);
  }
}

TEST_CASE("full weight file can drive a lite engine but not vice versa") {
  const ModelConfig full = ModelConfig::Defaults(Variant::kFull);
  const std::string path = TempPath("bae_variant.baew");
  SaveWeights(GenerateTestWeights(full, 3), full, path);
  LoadedModel loaded = LoadWeights(path);
  loaded.config.variant = Variant::kLite;  // subset is fine
  CHECK_NOTHROW(Engine(loaded.config, loaded.weights));
  std::remove(path.c_str());

  const ModelConfig lite = ModelConfig::Defaults(Variant::kLite);
  SaveWeights(GenerateTestWeights(lite, 3), lite, path);
  LoadedModel lite_loaded = LoadWeights(path);
  lite_loaded.config.variant = Variant::kFull;
  CHECK_THROWS_AS(Engine(lite_loaded.config, lite_loaded.weights),
                  std::out_of_range);
  std::remove(path.c_str());
}

}  // namespace
}  // namespace bae
