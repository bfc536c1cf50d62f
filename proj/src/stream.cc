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

#include "bae/stream.h"

namespace bae {

StreamSession::StreamSession(const Engine& engine)
    : engine_(engine),
      stft_(engine.config().fft_size, engine.config().fft_size / 2),
      istft_(engine.config().fft_size, engine.config().fft_size / 2),
      state_(engine.MakeState()),
      frame_out_(engine.config().num_bins) {}

std::optional<std::vector<double>> StreamSession::PushBlock(
    const double* block, int block_len) {
  auto frame = stft_.Push(block, block_len);
  if (!frame.has_value()) return std::nullopt;
  engine_.ForwardFrame(frame->data(), frame_out_.data(), state_);
  return istft_.Push(frame_out_.data(),
                     static_cast<int>(frame_out_.size()));
}

void StreamSession::Reset() {
  stft_.Reset();
  istft_.Reset();
  state_.Reset();
}

size_t StreamSession::StateBytes() const {
  size_t bytes = 2 * engine_.config().fft_size * sizeof(double);  // stft buf
  bytes += 2 * engine_.config().fft_size * sizeof(double);        // ola bufs
  auto conv_bytes = [](const std::vector<ConvState>& states) {
    size_t n = 0;
    for (const ConvState& s : states) {
      for (const auto& h : s.history) n += h.size() * sizeof(double);
    }
    return n;
  };
  bytes += conv_bytes(state_.mi_conv) + conv_bytes(state_.pr_conv);
  for (const GruState& s : state_.mi_gru) {
    bytes += s.hidden.size() * sizeof(double);
  }
  for (const GruState& s : state_.pr_gru) {
    bytes += s.hidden.size() * sizeof(double);
  }
  return bytes;
}

}  // namespace bae
