// Copyright 2026 The inembed Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <arm_neon.h>

#include "inembed/kernels.hpp"

namespace inembed::kernels::detail {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  float64x2_t acc2 = vdupq_n_f64(0.0);
  float64x2_t acc3 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + k), vld1q_f64(b + k));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
    acc2 = vfmaq_f64(acc2, vld1q_f64(a + k + 4), vld1q_f64(b + k + 4));
    acc3 = vfmaq_f64(acc3, vld1q_f64(a + k + 6), vld1q_f64(b + k + 6));
  }
  for (; k + 2 <= n; k += 2) acc0 = vfmaq_f64(acc0, vld1q_f64(a + k), vld1q_f64(b + k));
  double sum = vaddvq_f64(vaddq_f64(vaddq_f64(acc0, acc1), vaddq_f64(acc2, acc3)));
  for (; k < n; ++k) sum += a[k] * b[k];
  return sum;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    vst1q_f64(y + k, vfmaq_f64(vld1q_f64(y + k), va, vld1q_f64(x + k)));
    vst1q_f64(y + k + 2, vfmaq_f64(vld1q_f64(y + k + 2), va, vld1q_f64(x + k + 2)));
  }
  for (; k + 2 <= n; k += 2) vst1q_f64(y + k, vfmaq_f64(vld1q_f64(y + k), va, vld1q_f64(x + k)));
  for (; k < n; ++k) y[k] += alpha * x[k];
}

}  // namespace inembed::kernels::detail
