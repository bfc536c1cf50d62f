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

#include "bae/wav_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace bae {
namespace {

uint16_t ReadU16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}
uint32_t ReadU32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void AppendU16(std::vector<uint8_t>* out, uint16_t v) {
  out->push_back(static_cast<uint8_t>(v & 0xff));
  out->push_back(static_cast<uint8_t>(v >> 8));
}
void AppendU32(std::vector<uint8_t>* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out->push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xff));
  }
}

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xfffe;

}  // namespace

Waveform ReadWav(const std::string& path, WavSampleFormat* format_out) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw WavReadError("cannot open " + path);
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(file)),
                            std::istreambuf_iterator<char>());
  if (data.size() < 12 || std::memcmp(data.data(), "RIFF", 4) != 0 ||
      std::memcmp(data.data() + 8, "WAVE", 4) != 0) {
    throw WavReadError(path + ": not a RIFF/WAVE file");
  }

  uint16_t audio_format = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
  bool have_fmt = false;
  const uint8_t* data_chunk = nullptr;
  size_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const char* id = reinterpret_cast<const char*>(data.data() + pos);
    const uint32_t chunk_len = ReadU32(data.data() + pos + 4);
    const size_t body = pos + 8;
    if (body + chunk_len > data.size()) {
      throw WavReadError(path + ": truncated chunk");
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_len < 16) throw WavReadError(path + ": malformed fmt chunk");
      audio_format = ReadU16(data.data() + body);
      channels = ReadU16(data.data() + body + 2);
      sample_rate = ReadU32(data.data() + body + 4);
      bits = ReadU16(data.data() + body + 14);
      if (audio_format == kFormatExtensible && chunk_len >= 40) {
        audio_format = ReadU16(data.data() + body + 24);  // subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data_chunk = data.data() + body;
      data_len = chunk_len;
    }
    pos = body + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_chunk == nullptr) {
    throw WavReadError(path + ": missing fmt or data chunk");
  }
  if (channels != 1) {
    throw WavReadError(path + ": only mono audio is supported (got " +
                       std::to_string(channels) + " channels)");
  }

  Waveform wave;
  wave.sample_rate = static_cast<int>(sample_rate);
  if (audio_format == kFormatPcm && bits == 16) {
    if (format_out) *format_out = WavSampleFormat::kPcm16;
    const size_t n = data_len / 2;
    wave.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      int16_t v;
      std::memcpy(&v, data_chunk + 2 * i, 2);
      wave.samples[i] = v / 32768.0;
    }
  } else if (audio_format == kFormatFloat && bits == 32) {
    if (format_out) *format_out = WavSampleFormat::kFloat32;
    const size_t n = data_len / 4;
    wave.samples.resize(n);
    for (size_t i = 0; i < n; ++i) {
      float v;
      std::memcpy(&v, data_chunk + 4 * i, 4);
      if (!std::isfinite(v)) {
        throw WavReadError(path + ": non-finite sample at index " +
                           std::to_string(i));
      }
      wave.samples[i] = v;
    }
  } else {
    throw WavReadError(path + ": unsupported format (need 16-bit PCM or " +
                       "32-bit float, got format " +
                       std::to_string(audio_format) + ", " +
                       std::to_string(bits) + " bits)");
  }
  return wave;
}

void WriteWav(const std::string& path, const Waveform& wave,
              WavSampleFormat format) {
  const uint16_t bits = format == WavSampleFormat::kPcm16 ? 16 : 32;
  const uint16_t fmt_code =
      format == WavSampleFormat::kPcm16 ? kFormatPcm : kFormatFloat;
  const uint32_t bytes_per_sample = bits / 8;
  const uint32_t data_len =
      static_cast<uint32_t>(wave.samples.size() * bytes_per_sample);

  std::vector<uint8_t> out;
  out.reserve(44 + data_len);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  AppendU32(&out, 36 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  AppendU32(&out, 16);
  AppendU16(&out, fmt_code);
  AppendU16(&out, 1);  // mono
  AppendU32(&out, static_cast<uint32_t>(wave.sample_rate));
  AppendU32(&out, static_cast<uint32_t>(wave.sample_rate) * bytes_per_sample);
  AppendU16(&out, static_cast<uint16_t>(bytes_per_sample));
  AppendU16(&out, bits);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  AppendU32(&out, data_len);

  if (format == WavSampleFormat::kPcm16) {
    for (double s : wave.samples) {
      const double clamped = std::clamp(s, -1.0, 1.0);
      const int16_t v = static_cast<int16_t>(
          std::lrint(clamped * 32767.0));
      out.push_back(static_cast<uint8_t>(v & 0xff));
      out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
    }
  } else {
    for (double s : wave.samples) {
      const float v = static_cast<float>(s);
      uint8_t b[4];
      std::memcpy(b, &v, 4);
      out.insert(out.end(), b, b + 4);
    }
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) throw WavWriteError("cannot open " + path + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()),
             static_cast<std::streamsize>(out.size()));
  if (!file) throw WavWriteError("write failed for " + path);
}

}  // namespace bae
