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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "qif/error.hpp"
#include "qif/kernels.hpp"

namespace qif::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend detect_backend() {
  if (const char* env = std::getenv("QIF_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::kScalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Backend::kAvx2;
    // Unknown or unsupported request falls back to detection.
  }
  return cpu_has_avx2() ? Backend::kAvx2 : Backend::kScalar;
}

std::atomic<Backend>& backend_slot() {
  static std::atomic<Backend> slot{detect_backend()};
  return slot;
}

}  // namespace

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return "scalar";
    case Backend::kAvx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_supported(Backend backend) {
  return backend == Backend::kScalar || (backend == Backend::kAvx2 && cpu_has_avx2());
}

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_supported(backend)) {
    throw InvalidArgument(std::string("kernel backend not supported on this cpu: ") +
                          backend_name(backend));
  }
  backend_slot().store(backend, std::memory_order_relaxed);
}

void scaled_row_max(double scale, const double* row, std::size_t n, double* colmax) {
#if defined(__x86_64__) || defined(__i386__)
  if (active_backend() == Backend::kAvx2) {
    detail::scaled_row_max_avx2(scale, row, n, colmax);
    return;
  }
#endif
  detail::scaled_row_max_scalar(scale, row, n, colmax);
}

void axpy(double w, const double* src, std::size_t n, double* dst) {
#if defined(__x86_64__) || defined(__i386__)
  if (active_backend() == Backend::kAvx2) {
    detail::axpy_avx2(w, src, n, dst);
    return;
  }
#endif
  detail::axpy_scalar(w, src, n, dst);
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
#if defined(__x86_64__) || defined(__i386__)
  if (active_backend() == Backend::kAvx2) {
    return detail::max_abs_diff_avx2(a, b, n);
  }
#endif
  return detail::max_abs_diff_scalar(a, b, n);
}

}  // namespace qif::kernels
