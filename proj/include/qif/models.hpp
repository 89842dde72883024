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

#ifndef QIF_MODELS_HPP_
#define QIF_MODELS_HPP_

// Channel builders and closed forms for the two tracking models: third-party
// cookies (deterministic user -> browsing-history channel) and the Topics API
// (user -> topic channel with 1/k entries), plus the uniform-noise composition
// and the taxonomy-size leakage sweep.

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "qif/numeric.hpp"
#include "qif/types.hpp"

namespace qif::models {

struct ModelParams {
  std::size_t n_users = 0;        // N
  std::size_t n_contexts = 0;     // M', contexts that carry third-party cookies
  int history_min = 2;            // lower bound on browsing-history size
  std::size_t taxonomy_size = 350;
  std::size_t k = 5;              // top-topics set size
  Rational noise_p = make_rational(1, 20);
  std::size_t epochs = 3;

  void validate() const;
};

// Browsing histories are sets of context ids (1-based); topic profiles are
// sets of topic ids (1-based). Set semantics: visit order never matters.
using BrowsingHistory = std::set<int>;
using BrowsingHistorySet = std::vector<BrowsingHistory>;
using TopKProfile = std::set<int>;
using TopKProfileSet = std::vector<TopKProfile>;

// "{D1,D3}": canonical label for a history, sorted by context id.
std::string history_label(const BrowsingHistory& history);

// All subsets of {D1..DM'} with at least two contexts, ordered by size then
// lexicographically. One user per subset is the population that saturates the
// cookies closed form.
BrowsingHistorySet saturated_browsing_histories(unsigned m_prime);

// Deterministic channel: one column per distinct realized history, entry 1
// where the user's history equals the column's set.
template <typename T>
Channel<T> build_cookies_channel(const BrowsingHistorySet& histories);

// One column per topic occurring in some profile, entry 1/k where the user
// holds the topic.
template <typename T>
Channel<T> build_topics_channel(const TopKProfileSet& profiles, std::size_t taxonomy_size);

// (1/N) * sum_{k'=2..M'} C(M', k'), evaluated exactly. The binomial sum and
// its closed form 2^M' - M' - 1 are computed independently and must agree.
Rational cookies_closed_form_vulnerability(unsigned m_prime, unsigned long n_users);

struct CookiesLeakage {
  BigInt exact;   // 2^M' - M' - 1
  double log10;
};
CookiesLeakage cookies_closed_form_leakage(unsigned m_prime);

// M / (k N); requires k <= M <= k*N, otherwise the instance is impossible.
Rational topics_closed_form_vulnerability(unsigned long n_users, unsigned long m_topics,
                                          unsigned long k);

// M / k.
Rational topics_closed_form_leakage(unsigned long m_topics, unsigned long k);

// (1-p) * C + p * U with U uniform over the full taxonomy. The base channel
// is first padded with zero columns so the output space is all of t1..tT.
template <typename T>
Channel<T> apply_taxonomy_noise(const Channel<T>& channel, std::size_t taxonomy_size,
                                const T& p);

struct SweepRow {
  unsigned long m = 0;
  unsigned long k = 0;
  Rational leakage;
  double log10_leakage = 0.0;
};
struct SweepSkip {
  unsigned long m = 0;
  unsigned long k = 0;
};
struct SweepTable {
  std::vector<SweepRow> rows;      // M-major, k-minor order
  std::vector<SweepSkip> skipped;  // pairs with M < k
};

SweepTable leakage_sweep(const std::vector<unsigned long>& m_values,
                         const std::vector<unsigned long>& k_values);

}  // namespace qif::models

#endif  // QIF_MODELS_HPP_
