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

// Data-parallel inner loops of the simulator and the floating-point MSE
// evaluator. Each kernel has a portable scalar reference and, on x86-64, an
// AVX2 variant selected at runtime. Variants are required to be
// bit-identical to the reference: the sampling kernels return integers, and
// the accumulation kernel vectorizes across output columns so that every
// output element sees the same sequence of additions as the scalar loop.

#ifndef ONEBIT_KERNELS_H_
#define ONEBIT_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace onebit::kernels {

// out[i] = number of thresholds t with t <= uniforms[i]. With `thresholds`
// holding the first K-1 partial sums of a K-point pmf this is inverse-CDF
// sampling.
using CountBelowFn = void (*)(std::span<const double> uniforms,
                              std::span<const double> thresholds,
                              std::span<std::uint32_t> out);

// out[i] = uniforms[i] >= probs[i] ? 1 : 0.
using BernoulliFn = void (*)(std::span<const double> uniforms,
                             std::span<const double> probs,
                             std::span<std::uint8_t> out);

// out[k] = sum_s weights[s] * table[s * width + k], s ascending, for
// k < width. `table` is row-major with `weights.size()` rows.
using WeightedRowSumFn = void (*)(std::span<const double> weights,
                                  std::span<const double> table,
                                  std::size_t width, std::span<double> out);

struct KernelSet {
  std::string_view name;
  CountBelowFn count_below;
  BernoulliFn bernoulli;
  WeightedRowSumFn weighted_row_sum;
};

const KernelSet& ScalarKernels();

// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelSet* Avx2Kernels();

// The best set for this CPU. Setting ONEBIT_KERNELS=scalar in the
// environment forces the reference path.
const KernelSet& ActiveKernels();

}  // namespace onebit::kernels

#endif  // ONEBIT_KERNELS_H_
