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

#ifndef QIF_TYPES_HPP_
#define QIF_TYPES_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "qif/numeric.hpp"

namespace qif {

// Row-major dense matrix. The scalar is either double or Rational.
template <typename T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, NumTraits<T>::zero()) {}

  T& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  T* row(std::size_t r) { return data.data() + r * cols; }
  const T* row(std::size_t r) const { return data.data() + r * cols; }

  bool operator==(const Matrix&) const = default;
};

// A labeled probability vector. Labels identify secrets (users) or
// observables (topics, histories) and stay attached through every operation.
template <typename T>
struct Distribution {
  std::vector<std::string> labels;
  std::vector<T> probs;

  std::size_t size() const { return probs.size(); }
  bool operator==(const Distribution&) const = default;
};

// Row-stochastic matrix from secrets to observables; entry (x, y) is p(y|x).
template <typename T>
struct Channel {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Matrix<T> entries;

  std::size_t rows() const { return entries.rows; }
  std::size_t cols() const { return entries.cols; }
  bool operator==(const Channel&) const = default;
};

// Prior pushed through a channel: entry (x, y) is prior[x] * p(y|x).
template <typename T>
struct JointMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Matrix<T> entries;

  bool operator==(const JointMatrix&) const = default;
};

// Outer distribution over realized outputs, one posterior inner per output.
// Outputs with zero outer probability are dropped at construction.
template <typename T>
struct Hyper {
  Distribution<T> outer;                 // labels are the realized output labels
  std::vector<Distribution<T>> inners;   // one per outer entry, over the secrets

  bool operator==(const Hyper&) const = default;
};

template <typename T>
struct VulnerabilityReport {
  T prior_v;
  T posterior_v;
  T mult_leakage;
  T add_leakage;
  double log10_mult_leakage = 0.0;
};

// Stochasticity tolerance for the floating lane. The exact lane ignores it.
inline constexpr double kRowSumTolerance = 1e-9;
// Hyper mixture check tolerance in the floating lane.
inline constexpr double kMixtureTolerance = 1e-12;

}  // namespace qif

#endif  // QIF_TYPES_HPP_
