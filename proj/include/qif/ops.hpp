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

#ifndef QIF_OPS_HPP_
#define QIF_OPS_HPP_

// Priors, channels, joints, hypers, Bayes vulnerability, and leakage.
// Everything is a pure function over immutable values; the rational
// instantiation is exact, the double instantiation routes its inner loops
// through qif::kernels.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qif/error.hpp"
#include "qif/kernels.hpp"
#include "qif/numeric.hpp"
#include "qif/types.hpp"

namespace qif {

inline std::string user_label(std::size_t i) { return "x" + std::to_string(i); }
inline std::string topic_label(std::size_t i) { return "t" + std::to_string(i); }
inline std::string context_label(std::size_t i) { return "D" + std::to_string(i); }

namespace detail {

inline void check_labels_unique(const std::vector<std::string>& labels,
                                const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw InvalidArgument(std::string(what) + " labels contain duplicate '" + l + "'");
    }
  }
}

template <typename T>
bool near_one(const T& sum, double tol) {
  if constexpr (NumTraits<T>::kExact) {
    (void)tol;
    return sum == 1;
  } else {
    return std::fabs(sum - 1.0) <= tol;
  }
}

}  // namespace detail

template <typename T>
Distribution<T> make_distribution(std::vector<std::string> labels, std::vector<T> probs,
                                  double tol = kRowSumTolerance) {
  if (labels.size() != probs.size()) {
    throw InvalidArgument("distribution labels and probabilities differ in length");
  }
  if (probs.empty()) throw InvalidArgument("distribution must be non-empty");
  detail::check_labels_unique(labels, "distribution");
  T sum = NumTraits<T>::zero();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < NumTraits<T>::zero()) {
      throw InvalidArgument("negative probability for label '" + labels[i] + "'");
    }
    sum += probs[i];
  }
  if (!detail::near_one(sum, tol)) {
    throw InvalidArgument("probabilities sum to " + NumTraits<T>::render(sum) +
                          ", expected 1");
  }
  return Distribution<T>{std::move(labels), std::move(probs)};
}

template <typename T>
Distribution<T> uniform_prior(std::size_t n,
                              std::optional<std::vector<std::string>> labels = {}) {
  if (n == 0) throw InvalidArgument("uniform prior needs at least one element");
  std::vector<std::string> names;
  if (labels) {
    if (labels->size() != n) {
      throw InvalidArgument("uniform prior label count does not match n");
    }
    names = std::move(*labels);
  } else {
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(user_label(i));
  }
  std::vector<T> probs(n, NumTraits<T>::fraction(1, n));
  return make_distribution<T>(std::move(names), std::move(probs));
}

template <typename T>
Channel<T> validate_channel(std::vector<std::string> row_labels,
                            std::vector<std::string> col_labels, Matrix<T> entries,
                            double tol = kRowSumTolerance) {
  if (entries.rows == 0 || entries.cols == 0) {
    throw InvalidChannel("channel matrix must be non-empty");
  }
  if (entries.data.size() != entries.rows * entries.cols) {
    throw InvalidChannel("channel matrix is not rectangular");
  }
  if (row_labels.size() != entries.rows || col_labels.size() != entries.cols) {
    throw InvalidChannel("channel label counts do not match matrix shape");
  }
  detail::check_labels_unique(row_labels, "channel row");
  detail::check_labels_unique(col_labels, "channel column");
  for (std::size_t i = 0; i < entries.rows; ++i) {
    T sum = NumTraits<T>::zero();
    for (std::size_t j = 0; j < entries.cols; ++j) {
      const T& v = entries.at(i, j);
      if (v < NumTraits<T>::zero()) {
        throw InvalidChannel("negative entry at row " + std::to_string(i) + " ('" +
                             row_labels[i] + "'), column " + std::to_string(j) + " ('" +
                             col_labels[j] + "')");
      }
      sum += v;
    }
    if (!detail::near_one(sum, tol)) {
      throw InvalidChannel("row " + std::to_string(i) + " ('" + row_labels[i] +
                           "') sums to " + NumTraits<T>::render(sum) + ", expected 1");
    }
  }
  return Channel<T>{std::move(row_labels), std::move(col_labels), std::move(entries)};
}

namespace detail {

template <typename T>
void check_prior_matches(const Distribution<T>& prior, const Channel<T>& channel) {
  if (prior.labels != channel.row_labels) {
    throw InvalidArgument("prior labels do not match channel row labels");
  }
}

}  // namespace detail

template <typename T>
JointMatrix<T> joint(const Distribution<T>& prior, const Channel<T>& channel) {
  detail::check_prior_matches(prior, channel);
  Matrix<T> entries(channel.rows(), channel.cols());
  T total = NumTraits<T>::zero();
  for (std::size_t i = 0; i < channel.rows(); ++i) {
    for (std::size_t j = 0; j < channel.cols(); ++j) {
      entries.at(i, j) = prior.probs[i] * channel.entries.at(i, j);
      total += entries.at(i, j);
    }
  }
  if (!detail::near_one(total, 1e-8)) {
    throw InvalidArgument("joint matrix mass is " + NumTraits<T>::render(total) +
                          ", expected 1");
  }
  return JointMatrix<T>{channel.row_labels, channel.col_labels, std::move(entries)};
}

template <typename T>
Hyper<T> hyper(const Distribution<T>& prior, const Channel<T>& channel) {
  const JointMatrix<T> j = joint(prior, channel);
  const std::size_t n = j.entries.rows;
  const std::size_t m = j.entries.cols;

  Hyper<T> result;
  for (std::size_t y = 0; y < m; ++y) {
    T outer_y = NumTraits<T>::zero();
    for (std::size_t x = 0; x < n; ++x) outer_y += j.entries.at(x, y);
    if (outer_y == NumTraits<T>::zero()) continue;  // non-realized output
    std::vector<T> inner(n, NumTraits<T>::zero());
    for (std::size_t x = 0; x < n; ++x) inner[x] = j.entries.at(x, y) / outer_y;
    result.outer.labels.push_back(j.col_labels[y]);
    result.outer.probs.push_back(outer_y);
    result.inners.push_back(make_distribution<T>(j.row_labels, std::move(inner)));
  }

  // Mixture property: the inners average back to the prior. In the floating
  // lane the achievable precision is limited by how far the channel rows are
  // from summing to exactly 1, hence the slack term.
  for (std::size_t x = 0; x < n; ++x) {
    T mixed = NumTraits<T>::zero();
    for (std::size_t y = 0; y < result.inners.size(); ++y) {
      mixed += result.outer.probs[y] * result.inners[y].probs[x];
    }
    if constexpr (NumTraits<T>::kExact) {
      if (mixed != prior.probs[x]) {
        throw InvalidArgument("hyper mixture property violated for secret '" +
                              prior.labels[x] + "'");
      }
    } else {
      T row_sum = NumTraits<T>::zero();
      for (std::size_t y = 0; y < m; ++y) row_sum += channel.entries.at(x, y);
      const double slack =
          kMixtureTolerance + std::fabs(row_sum - 1.0) * prior.probs[x];
      if (std::fabs(mixed - prior.probs[x]) > slack) {
        throw InvalidArgument("hyper mixture property violated for secret '" +
                              prior.labels[x] + "'");
      }
    }
  }
  return result;
}

template <typename T>
T bayes_vulnerability(const Distribution<T>& dist) {
  T best = dist.probs[0];
  for (const T& p : dist.probs) {
    if (p > best) best = p;
  }
  return best;
}

// Sum of the column maximums of the joint matrix.
template <typename T>
T posterior_bayes_vulnerability(const Distribution<T>& prior, const Channel<T>& channel) {
  detail::check_prior_matches(prior, channel);
  const std::size_t n = channel.rows();
  const std::size_t m = channel.cols();
  if constexpr (NumTraits<T>::kExact) {
    std::vector<T> colmax(m, NumTraits<T>::zero());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        T v = prior.probs[i] * channel.entries.at(i, j);
        if (v > colmax[j]) colmax[j] = std::move(v);
      }
    }
    T sum = NumTraits<T>::zero();
    for (const T& v : colmax) sum += v;
    return sum;
  } else {
    std::vector<double> colmax(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      kernels::scaled_row_max(prior.probs[i], channel.entries.row(i), m, colmax.data());
    }
    double sum = 0.0;
    for (double v : colmax) sum += v;
    return sum;
  }
}

// Shortcut for deterministic channels under the uniform prior: M/N with M the
// number of realized output columns.
template <typename T>
T posterior_bayes_vulnerability_deterministic_uniform(const Channel<T>& channel) {
  const std::size_t n = channel.rows();
  const std::size_t m = channel.cols();
  std::size_t realized = 0;
  for (std::size_t j = 0; j < m; ++j) {
    bool hit = false;
    for (std::size_t i = 0; i < n; ++i) {
      const T& v = channel.entries.at(i, j);
      if (v == NumTraits<T>::one()) {
        hit = true;
      } else if (v != NumTraits<T>::zero()) {
        throw InvalidArgument("channel is not deterministic: entry at row " +
                              std::to_string(i) + ", column " + std::to_string(j) +
                              " is neither 0 nor 1");
      }
    }
    if (hit) ++realized;
  }
  return NumTraits<T>::fraction(static_cast<long>(realized), n);
}

template <typename T>
T multiplicative_leakage(const Distribution<T>& prior, const Channel<T>& channel) {
  return posterior_bayes_vulnerability(prior, channel) / bayes_vulnerability(prior);
}

template <typename T>
T additive_leakage(const Distribution<T>& prior, const Channel<T>& channel) {
  return posterior_bayes_vulnerability(prior, channel) - bayes_vulnerability(prior);
}

template <typename T>
VulnerabilityReport<T> vulnerability_report(const Distribution<T>& prior,
                                            const Channel<T>& channel) {
  VulnerabilityReport<T> report{NumTraits<T>::zero(), NumTraits<T>::zero(),
                                NumTraits<T>::zero(), NumTraits<T>::zero(), 0.0};
  report.prior_v = bayes_vulnerability(prior);
  report.posterior_v = posterior_bayes_vulnerability(prior, channel);
  report.mult_leakage = report.posterior_v / report.prior_v;
  report.add_leakage = report.posterior_v - report.prior_v;
  report.log10_mult_leakage = log10_value(report.mult_leakage);
  return report;
}

template <typename T>
Channel<T> convex_combination(const std::vector<Channel<T>>& channels,
                              const std::vector<T>& weights) {
  if (channels.empty()) throw InvalidArgument("convex combination of no channels");
  if (channels.size() != weights.size()) {
    throw InvalidArgument("channel and weight counts differ");
  }
  const Channel<T>& first = channels.front();
  for (const Channel<T>& c : channels) {
    if (c.row_labels != first.row_labels || c.col_labels != first.col_labels) {
      throw InvalidArgument("channels in a convex combination must share labels");
    }
  }
  T wsum = NumTraits<T>::zero();
  for (const T& w : weights) {
    if (w < NumTraits<T>::zero()) throw InvalidArgument("negative mixing weight");
    wsum += w;
  }
  if (!detail::near_one(wsum, kRowSumTolerance)) {
    throw InvalidArgument("mixing weights sum to " + NumTraits<T>::render(wsum) +
                          ", expected 1");
  }

  Matrix<T> mixed(first.entries.rows, first.entries.cols);
  if constexpr (NumTraits<T>::kExact) {
    for (std::size_t c = 0; c < channels.size(); ++c) {
      for (std::size_t i = 0; i < mixed.data.size(); ++i) {
        mixed.data[i] += weights[c] * channels[c].entries.data[i];
      }
    }
  } else {
    for (std::size_t c = 0; c < channels.size(); ++c) {
      kernels::axpy(weights[c], channels[c].entries.data.data(), mixed.data.size(),
                    mixed.data.data());
    }
  }
  return validate_channel<T>(first.row_labels, first.col_labels, std::move(mixed));
}

// Largest entrywise difference between two channels over the same secrets.
// Columns are aligned by label; a column missing on one side counts as zeros.
template <typename T>
T linf_distance(const Channel<T>& a, const Channel<T>& b) {
  if (a.row_labels != b.row_labels) {
    throw InvalidArgument("linf_distance requires matching row labels");
  }
  if (a.col_labels == b.col_labels) {
    if constexpr (!NumTraits<T>::kExact) {
      return kernels::max_abs_diff(a.entries.data.data(), b.entries.data.data(),
                                   a.entries.data.size());
    }
  }
  std::vector<std::string> all_cols = a.col_labels;
  for (const auto& l : b.col_labels) {
    if (std::find(all_cols.begin(), all_cols.end(), l) == all_cols.end()) {
      all_cols.push_back(l);
    }
  }
  auto col_index = [](const Channel<T>& c, const std::string& label) -> std::ptrdiff_t {
    auto it = std::find(c.col_labels.begin(), c.col_labels.end(), label);
    return it == c.col_labels.end() ? -1 : it - c.col_labels.begin();
  };
  T best = NumTraits<T>::zero();
  for (const auto& label : all_cols) {
    const std::ptrdiff_t ja = col_index(a, label);
    const std::ptrdiff_t jb = col_index(b, label);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      const T va = ja < 0 ? NumTraits<T>::zero() : a.entries.at(i, ja);
      const T vb = jb < 0 ? NumTraits<T>::zero() : b.entries.at(i, jb);
      T d = va > vb ? va - vb : vb - va;
      if (d > best) best = std::move(d);
    }
  }
  return best;
}

}  // namespace qif

#endif  // QIF_OPS_HPP_
