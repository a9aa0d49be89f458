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

// Internal declarations of the per-ISA kernel variants.

#ifndef ONEBIT_SRC_KERNELS_VARIANTS_H_
#define ONEBIT_SRC_KERNELS_VARIANTS_H_

#include <cstddef>
#include <cstdint>
#include <span>

namespace onebit::kernels {

namespace scalar {
void CountBelow(std::span<const double> uniforms,
                std::span<const double> thresholds,
                std::span<std::uint32_t> out);
void Bernoulli(std::span<const double> uniforms, std::span<const double> probs,
               std::span<std::uint8_t> out);
void WeightedRowSum(std::span<const double> weights,
                    std::span<const double> table, std::size_t width,
                    std::span<double> out);
}  // namespace scalar

#if defined(ONEBIT_HAVE_AVX2)
namespace avx2 {
void CountBelow(std::span<const double> uniforms,
                std::span<const double> thresholds,
                std::span<std::uint32_t> out);
void Bernoulli(std::span<const double> uniforms, std::span<const double> probs,
               std::span<std::uint8_t> out);
void WeightedRowSum(std::span<const double> weights,
                    std::span<const double> table, std::size_t width,
                    std::span<double> out);
}  // namespace avx2
#endif

}  // namespace onebit::kernels

#endif  // ONEBIT_SRC_KERNELS_VARIANTS_H_
