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

#include "bae/complexity.h"

#include "bae/waveform.h"

namespace bae {

ComplexityReport CountComplexity(const ModelConfig& config) {
  config.Validate();
  ComplexityReport report;
  report.frames_per_second =
      static_cast<double>(kPipelineSampleRate) / (config.fft_size / 2);
  for (const LayerInfo& layer : EnumerateLayers(config)) {
    report.params += layer.ParamCount();
    report.macs_per_frame += layer.MacsPerFrame();
  }
  return report;
}

}  // namespace bae
