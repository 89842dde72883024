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

// Scalar reference kernels. Compiled with -ffp-contract=off so the AVX2
// variants (plain mul + add, no FMA) match bit for bit.

#include <cmath>
#include <cstddef>

#include "qif/kernels.hpp"

namespace qif::kernels::detail {

void scaled_row_max_scalar(double scale, const double* row, std::size_t n,
                           double* colmax) {
  for (std::size_t j = 0; j < n; ++j) {
    const double v = scale * row[j];
    if (v > colmax[j]) colmax[j] = v;
  }
}

void axpy_scalar(double w, const double* src, std::size_t n, double* dst) {
  for (std::size_t i = 0; i < n; ++i) {
    dst[i] = dst[i] + w * src[i];
  }
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

}  // namespace qif::kernels::detail
