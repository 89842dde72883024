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

#include "qif/models.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "qif/ops.hpp"

namespace qif::models {

void ModelParams::validate() const {
  if (n_users == 0) throw InvalidArgument("n_users must be at least 1");
  if (n_contexts == 0) throw InvalidArgument("n_contexts must be at least 1");
  if (history_min < 2) throw InvalidArgument("history_min must be at least 2");
  if (taxonomy_size == 0) throw InvalidArgument("taxonomy_size must be at least 1");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (k > taxonomy_size) throw InvalidArgument("k cannot exceed the taxonomy size");
  if (noise_p < 0 || noise_p > 1) throw InvalidArgument("noise_p must be in [0, 1]");
  if (epochs == 0) throw InvalidArgument("epochs must be at least 1");
}

std::string history_label(const BrowsingHistory& history) {
  std::string label = "{";
  bool first = true;
  for (int context : history) {
    if (!first) label += ",";
    label += context_label(static_cast<std::size_t>(context));
    first = false;
  }
  label += "}";
  return label;
}

namespace {

// Size first, then lexicographic on the sorted context ids; this is the
// layout order used for history columns.
bool history_less(const BrowsingHistory& a, const BrowsingHistory& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

BrowsingHistorySet saturated_browsing_histories(unsigned m_prime) {
  if (m_prime < 2) throw InvalidArgument("need at least 2 contexts");
  if (m_prime > 20) throw InvalidArgument("saturated enumeration capped at 20 contexts");
  BrowsingHistorySet histories;
  const unsigned long total = 1ul << m_prime;
  for (unsigned long mask = 0; mask < total; ++mask) {
    if (__builtin_popcountl(mask) < 2) continue;
    BrowsingHistory h;
    for (unsigned bit = 0; bit < m_prime; ++bit) {
      if (mask & (1ul << bit)) h.insert(static_cast<int>(bit) + 1);
    }
    histories.push_back(std::move(h));
  }
  std::sort(histories.begin(), histories.end(), history_less);
  return histories;
}

template <typename T>
Channel<T> build_cookies_channel(const BrowsingHistorySet& histories) {
  if (histories.empty()) throw InvalidArgument("no browsing histories given");
  for (std::size_t i = 0; i < histories.size(); ++i) {
    if (histories[i].size() < 2) {
      throw InvalidArgument("browsing history of user " + user_label(i + 1) +
                            " has fewer than 2 contexts");
    }
    if (*histories[i].begin() < 1) {
      throw InvalidArgument("context ids must be positive");
    }
  }

  BrowsingHistorySet distinct = histories;
  std::sort(distinct.begin(), distinct.end(), history_less);
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  const std::size_t n = histories.size();
  const std::size_t m = distinct.size();
  std::vector<std::string> rows, cols;
  rows.reserve(n);
  cols.reserve(m);
  for (std::size_t i = 1; i <= n; ++i) rows.push_back(user_label(i));
  for (const auto& h : distinct) cols.push_back(history_label(h));

  Matrix<T> entries(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), histories[i],
                                     history_less);
    entries.at(i, static_cast<std::size_t>(it - distinct.begin())) = NumTraits<T>::one();
  }
  return validate_channel<T>(std::move(rows), std::move(cols), std::move(entries));
}

template <typename T>
Channel<T> build_topics_channel(const TopKProfileSet& profiles,
                                std::size_t taxonomy_size) {
  if (profiles.empty()) throw InvalidArgument("no topic profiles given");
  const std::size_t k = profiles.front().size();
  if (k == 0) throw InvalidArgument("topic profiles must be non-empty");
  std::set<int> realized;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    if (profiles[i].size() != k) {
      throw InvalidArgument("profile of user " + user_label(i + 1) + " has " +
                            std::to_string(profiles[i].size()) + " topics, expected " +
                            std::to_string(k));
    }
    for (int t : profiles[i]) {
      if (t < 1 || static_cast<std::size_t>(t) > taxonomy_size) {
        throw InvalidArgument("topic " + std::to_string(t) + " outside taxonomy of size " +
                              std::to_string(taxonomy_size));
      }
      realized.insert(t);
    }
  }

  const std::size_t n = profiles.size();
  std::vector<int> topics(realized.begin(), realized.end());  // ascending
  std::vector<std::string> rows, cols;
  for (std::size_t i = 1; i <= n; ++i) rows.push_back(user_label(i));
  for (int t : topics) cols.push_back(topic_label(static_cast<std::size_t>(t)));

  Matrix<T> entries(n, topics.size());
  const T share = NumTraits<T>::fraction(1, static_cast<unsigned long>(k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < topics.size(); ++j) {
      if (profiles[i].count(topics[j]) != 0) entries.at(i, j) = share;
    }
  }
  return validate_channel<T>(std::move(rows), std::move(cols), std::move(entries));
}

Rational cookies_closed_form_vulnerability(unsigned m_prime, unsigned long n_users) {
  if (m_prime < 2) throw InvalidArgument("need at least 2 contexts");
  if (n_users == 0) throw InvalidArgument("need at least 1 user");

  BigInt binomial_sum = 0;
  for (unsigned long kp = 2; kp <= m_prime; ++kp) {
    BigInt term;
    mpz_bin_uiui(term.get_mpz_t(), m_prime, kp);
    binomial_sum += term;
  }

  BigInt closed;
  mpz_ui_pow_ui(closed.get_mpz_t(), 2, m_prime);
  closed -= m_prime;
  closed -= 1;

  if (binomial_sum != closed) {
    throw std::logic_error("binomial sum disagrees with 2^M' - M' - 1");
  }
  return make_rational(binomial_sum, BigInt(n_users));
}

CookiesLeakage cookies_closed_form_leakage(unsigned m_prime) {
  if (m_prime < 2) throw InvalidArgument("need at least 2 contexts");
  BigInt value;
  mpz_ui_pow_ui(value.get_mpz_t(), 2, m_prime);
  value -= m_prime;
  value -= 1;
  return CookiesLeakage{value, log10_value(value)};
}

Rational topics_closed_form_vulnerability(unsigned long n_users, unsigned long m_topics,
                                          unsigned long k) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (n_users == 0) throw InvalidArgument("need at least 1 user");
  if (m_topics < k) {
    throw InvalidArgument("fewer observed topics than the top-topics size k");
  }
  if (m_topics > k * n_users) {
    throw InvalidArgument("impossible instance: " + std::to_string(m_topics) +
                          " topics cannot be realized by " + std::to_string(n_users) +
                          " users with k=" + std::to_string(k));
  }
  return make_rational(BigInt(m_topics), BigInt(k) * BigInt(n_users));
}

Rational topics_closed_form_leakage(unsigned long m_topics, unsigned long k) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (m_topics < k) {
    throw InvalidArgument("fewer observed topics than the top-topics size k");
  }
  return make_rational(BigInt(m_topics), BigInt(k));
}

template <typename T>
Channel<T> apply_taxonomy_noise(const Channel<T>& channel, std::size_t taxonomy_size,
                                const T& p) {
  if (p < NumTraits<T>::zero() || p > NumTraits<T>::one()) {
    throw InvalidArgument("noise probability must be in [0, 1]");
  }
  std::vector<std::string> cols;
  cols.reserve(taxonomy_size);
  std::map<std::string, std::size_t> position;
  for (std::size_t t = 1; t <= taxonomy_size; ++t) {
    cols.push_back(topic_label(t));
    position[cols.back()] = t - 1;
  }
  for (const auto& label : channel.col_labels) {
    if (position.find(label) == position.end()) {
      throw InvalidArgument("channel column '" + label +
                            "' is not a topic of a taxonomy of size " +
                            std::to_string(taxonomy_size));
    }
  }

  const std::size_t n = channel.rows();
  Matrix<T> padded(n, taxonomy_size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < channel.cols(); ++j) {
      padded.at(i, position[channel.col_labels[j]]) = channel.entries.at(i, j);
    }
  }
  Channel<T> base = validate_channel<T>(channel.row_labels, cols, std::move(padded));

  Matrix<T> flat(n, taxonomy_size);
  const T share = NumTraits<T>::fraction(1, static_cast<unsigned long>(taxonomy_size));
  for (auto& v : flat.data) v = share;
  Channel<T> uniform = validate_channel<T>(channel.row_labels, cols, std::move(flat));

  return convex_combination<T>({std::move(base), std::move(uniform)},
                               {NumTraits<T>::one() - p, p});
}

SweepTable leakage_sweep(const std::vector<unsigned long>& m_values,
                         const std::vector<unsigned long>& k_values) {
  for (unsigned long k : k_values) {
    if (k == 0) throw InvalidArgument("k must be at least 1");
  }
  SweepTable table;
  for (unsigned long m : m_values) {
    for (unsigned long k : k_values) {
      if (m < k) {
        table.skipped.push_back(SweepSkip{m, k});
        continue;
      }
      Rational leakage = topics_closed_form_leakage(m, k);
      const double log10 = log10_value(leakage);
      table.rows.push_back(SweepRow{m, k, std::move(leakage), log10});
    }
  }
  return table;
}

template Channel<double> build_cookies_channel<double>(const BrowsingHistorySet&);
template Channel<Rational> build_cookies_channel<Rational>(const BrowsingHistorySet&);
template Channel<double> build_topics_channel<double>(const TopKProfileSet&, std::size_t);
template Channel<Rational> build_topics_channel<Rational>(const TopKProfileSet&,
                                                          std::size_t);
template Channel<double> apply_taxonomy_noise<double>(const Channel<double>&, std::size_t,
                                                      const double&);
template Channel<Rational> apply_taxonomy_noise<Rational>(const Channel<Rational>&,
                                                          std::size_t, const Rational&);

}  // namespace qif::models
