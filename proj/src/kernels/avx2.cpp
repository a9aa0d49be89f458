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

// Compiled with -mavx2 only; callers reach these through ActiveKernels(),
// which checks the CPU first.

#include <immintrin.h>

#include <algorithm>

#include "kernels/variants.h"

namespace onebit::kernels::avx2 {

void CountBelow(std::span<const double> uniforms,
                std::span<const double> thresholds,
                std::span<std::uint32_t> out) {
  const std::size_t n = uniforms.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d u = _mm256_loadu_pd(uniforms.data() + i);
    __m256i count = _mm256_setzero_si256();
    for (double t : thresholds) {
      const __m256d hit = _mm256_cmp_pd(_mm256_set1_pd(t), u, _CMP_LE_OQ);
      // A true lane is all ones, i.e. -1 as a 64-bit integer.
      count = _mm256_sub_epi64(count, _mm256_castpd_si256(hit));
    }
    alignas(32) std::int64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), count);
    for (int k = 0; k < 4; ++k) out[i + k] = static_cast<std::uint32_t>(lanes[k]);
  }
  if (i < n) {
    scalar::CountBelow(uniforms.subspan(i), thresholds, out.subspan(i));
  }
}

void Bernoulli(std::span<const double> uniforms, std::span<const double> probs,
               std::span<std::uint8_t> out) {
  const std::size_t n = uniforms.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d u = _mm256_loadu_pd(uniforms.data() + i);
    const __m256d p = _mm256_loadu_pd(probs.data() + i);
    const int bits = _mm256_movemask_pd(_mm256_cmp_pd(u, p, _CMP_GE_OQ));
    out[i] = bits & 1;
    out[i + 1] = (bits >> 1) & 1;
    out[i + 2] = (bits >> 2) & 1;
    out[i + 3] = (bits >> 3) & 1;
  }
  if (i < n) {
    scalar::Bernoulli(uniforms.subspan(i), probs.subspan(i), out.subspan(i));
  }
}

void WeightedRowSum(std::span<const double> weights,
                    std::span<const double> table, std::size_t width,
                    std::span<double> out) {
  const std::size_t rows = weights.size();
  std::size_t k = 0;
  for (; k + 4 <= width; k += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t s = 0; s < rows; ++s) {
      const __m256d row = _mm256_loadu_pd(table.data() + s * width + k);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(weights[s]), row));
    }
    _mm256_storeu_pd(out.data() + k, acc);
  }
  for (; k < width; ++k) {
    double acc = 0.0;
    for (std::size_t s = 0; s < rows; ++s) {
      const double term = weights[s] * table[s * width + k];
      acc = acc + term;
    }
    out[k] = acc;
  }
}

}  // namespace onebit::kernels::avx2
