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

#include <cstdlib>
#include <string_view>

#include "kernels/variants.h"
#include "onebit/kernels.h"

namespace onebit::kernels {
namespace {

bool CpuHasAvx2() {
#if defined(ONEBIT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelSet& Select() {
  const char* forced = std::getenv("ONEBIT_KERNELS");
  if (forced != nullptr && std::string_view(forced) == "scalar") {
    return ScalarKernels();
  }
  if (const KernelSet* avx = Avx2Kernels(); avx != nullptr) return *avx;
  return ScalarKernels();
}

}  // namespace

const KernelSet& ScalarKernels() {
  static const KernelSet kSet{"scalar", &scalar::CountBelow,
                              &scalar::Bernoulli, &scalar::WeightedRowSum};
  return kSet;
}

const KernelSet* Avx2Kernels() {
#if defined(ONEBIT_HAVE_AVX2)
  static const KernelSet kSet{"avx2", &avx2::CountBelow, &avx2::Bernoulli,
                              &avx2::WeightedRowSum};
  static const bool kSupported = CpuHasAvx2();
  return kSupported ? &kSet : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& ActiveKernels() {
  static const KernelSet& kActive = Select();
  return kActive;
}

}  // namespace onebit::kernels
