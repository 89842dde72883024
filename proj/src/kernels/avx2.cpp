//
// Copyright 2026 The topics-qif Authors
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
//

// AVX2 kernels, 4 doubles per lane. This translation unit is the only one
// built with -mavx2; callers reach it through the dispatch layer after a
// runtime CPU check. No FMA: mul + add keeps results equal to the scalar
// reference.

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "qif/kernels.hpp"

namespace qif::kernels::detail {

void scaled_row_max_avx2(double scale, const double* row, std::size_t n,
                         double* colmax) {
  const __m256d vscale = _mm256_set1_pd(scale);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d v = _mm256_mul_pd(vscale, _mm256_loadu_pd(row + j));
    const __m256d m = _mm256_loadu_pd(colmax + j);
    _mm256_storeu_pd(colmax + j, _mm256_max_pd(m, v));
  }
  for (; j < n; ++j) {
    const double v = scale * row[j];
    if (v > colmax[j]) colmax[j] = v;
  }
}

void axpy_avx2(double w, const double* src, std::size_t n, double* dst) {
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d s = _mm256_mul_pd(vw, _mm256_loadu_pd(src + i));
    const __m256d d = _mm256_loadu_pd(dst + i);
    _mm256_storeu_pd(dst + i, _mm256_add_pd(d, s));
  }
  for (; i < n; ++i) {
    dst[i] = dst[i] + w * src[i];
  }
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  // Clearing the sign bit implements |x|; max is order-insensitive, so the
  // lane-wise accumulation matches the scalar scan exactly.
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d vmax = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, d));
  }
  double lanes[4];
  _mm256_storeu_pd(lanes, vmax);
  double m = lanes[0];
  if (lanes[1] > m) m = lanes[1];
  if (lanes[2] > m) m = lanes[2];
  if (lanes[3] > m) m = lanes[3];
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

}  // namespace qif::kernels::detail

#endif  // x86
