// Copyright 2026 The Onebit Authors
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

#include <algorithm>

#include "kernels/variants.h"

namespace onebit::kernels::scalar {

void CountBelow(std::span<const double> uniforms,
                std::span<const double> thresholds,
                std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < uniforms.size(); ++i) {
    std::uint32_t count = 0;
    for (double t : thresholds) count += (t <= uniforms[i]) ? 1u : 0u;
    out[i] = count;
  }
}

void Bernoulli(std::span<const double> uniforms, std::span<const double> probs,
               std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < uniforms.size(); ++i) {
    out[i] = uniforms[i] >= probs[i] ? 1 : 0;
  }
}

void WeightedRowSum(std::span<const double> weights,
                    std::span<const double> table, std::size_t width,
                    std::span<double> out) {
  std::fill(out.begin(), out.begin() + width, 0.0);
  for (std::size_t s = 0; s < weights.size(); ++s) {
    const double w = weights[s];
    const double* row = table.data() + s * width;
    for (std::size_t k = 0; k < width; ++k) {
      const double term = w * row[k];
      out[k] = out[k] + term;
    }
  }
}

}  // namespace onebit::kernels::scalar
