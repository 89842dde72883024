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

#ifndef QIF_KERNELS_HPP_
#define QIF_KERNELS_HPP_

// Floating-lane inner loops behind the matrix operations: a scalar reference
// implementation plus an AVX2 variant selected at runtime. Both variants are
// built with FP contraction off and use only order-insensitive reductions
// (max) or fixed-order elementwise arithmetic, so results are bit-identical
// across backends. The QIF_KERNELS environment variable ("scalar" or "avx2")
// overrides the detected backend.

#include <cstddef>

namespace qif::kernels {

enum class Backend { kScalar, kAvx2 };

const char* backend_name(Backend backend);
bool backend_supported(Backend backend);
Backend active_backend();
void set_backend(Backend backend);  // throws InvalidArgument if unsupported

// colmax[j] = max(colmax[j], scale * row[j])
void scaled_row_max(double scale, const double* row, std::size_t n, double* colmax);

// dst[i] += w * src[i]
void axpy(double w, const double* src, std::size_t n, double* dst);

// max_i |a[i] - b[i]|; 0 for empty input
double max_abs_diff(const double* a, const double* b, std::size_t n);

namespace detail {

void scaled_row_max_scalar(double scale, const double* row, std::size_t n, double* colmax);
void axpy_scalar(double w, const double* src, std::size_t n, double* dst);
double max_abs_diff_scalar(const double* a, const double* b, std::size_t n);

#if defined(__x86_64__) || defined(__i386__)
void scaled_row_max_avx2(double scale, const double* row, std::size_t n, double* colmax);
void axpy_avx2(double w, const double* src, std::size_t n, double* dst);
double max_abs_diff_avx2(const double* a, const double* b, std::size_t n);
#endif

}  // namespace detail

}  // namespace qif::kernels

#endif  // QIF_KERNELS_HPP_
